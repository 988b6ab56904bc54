//! The three searches run on the image orbit instead of the monoid. They
//! only need the groups carried by image sets, so they stay within reach
//! when the monoid itself is far too large to list.

use rustc_hash::FxHashMap;

use super::criteria::nontrivial_cycles;
use super::witness::{WitnessI, WitnessII, WitnessIII};
use crate::automata::{Symbol, Word};
use crate::error::{Error, Result};
use crate::monoid::{element_order, is_solvable, kaplan_levy_triples, Perm, PermGroup, SchutzenbergerGroup};

fn is_identity(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &j)| i == j)
}

fn compose(x: &[usize], y: &[usize]) -> Perm {
    x.iter().map(|&i| y[i]).collect()
}

/// Breadth-first closure over the generators, remembering for each element
/// the generator sequence that first reached it.
struct Closure<K> {
    elements: Vec<K>,
    parent: Vec<Option<(usize, usize)>>,
}

impl<K: Clone + Eq + std::hash::Hash> Closure<K> {
    fn build(identity: K, gens: usize, mul: impl Fn(&K, usize) -> K, cap: usize) -> Result<Self> {
        let mut index: FxHashMap<K, usize> = FxHashMap::default();
        index.insert(identity.clone(), 0);
        let mut c = Closure { elements: vec![identity], parent: vec![None] };
        let mut i = 0;
        while i < c.elements.len() {
            for g in 0..gens {
                let next = mul(&c.elements[i], g);
                if !index.contains_key(&next) {
                    if c.elements.len() >= cap {
                        return Err(Error::SizeLimit { what: "orbit group", limit: cap });
                    }
                    index.insert(next.clone(), c.elements.len());
                    c.elements.push(next);
                    c.parent.push(Some((i, g)));
                }
            }
            i += 1;
        }
        Ok(c)
    }

    fn word(&self, mut i: usize, group: &SchutzenbergerGroup) -> Word {
        let mut gens = Vec::new();
        while let Some((p, g)) = self.parent[i] {
            gens.push(g);
            i = p;
        }
        let symbols: Vec<Symbol> =
            gens.iter().rev().flat_map(|&g| group.generators[g].word.0.iter().copied()).collect();
        Word(symbols)
    }
}

fn first_cycle(perm: &[usize], points: &[usize]) -> Option<(usize, usize)> {
    nontrivial_cycles(|i| perm[i], perm.len())
        .into_iter()
        .map(|c| (c.iter().map(|&i| points[i]).min().expect("nonempty"), c.len()))
        .min()
}

/// A generator moving some point around a cycle; the shortest over all
/// groups.
pub(crate) fn orbit_fo_lt(groups: &[SchutzenbergerGroup]) -> Option<WitnessI> {
    groups
        .iter()
        .flat_map(|g| g.generators.iter().map(move |x| (x, &g.points)))
        .filter_map(|(x, points)| first_cycle(&x.perm, points).map(|(q, k)| (x.word.len(), q, k, &x.word)))
        .min_by(|a, b| (a.0, a.1, a.2, &a.3 .0).cmp(&(b.0, b.1, b.2, &b.3 .0)))
        .map(|(_, q, k, u)| WitnessI { u: u.clone(), q, k })
}

/// Closes the generators inside `G × Z_m`, where `m` is the length of some
/// word acting as the identity; a nontrivial permutation paired with
/// residue 0 yields two equal-length words.
pub(crate) fn orbit_fo_lt_eq(groups: &[SchutzenbergerGroup], cap: usize) -> Result<Option<WitnessII>> {
    for group in groups.iter().filter(|g| !g.is_trivial()) {
        let (g0, m) = group
            .generators
            .iter()
            .enumerate()
            .map(|(i, x)| (i, element_order(&x.perm) * x.word.len()))
            .min_by_key(|&(_, m)| m)
            .expect("nontrivial group has generators");
        let d = group.points.len();
        let gens: Vec<(Perm, usize)> = group.generators.iter().map(|x| (x.perm.clone(), x.word.len() % m)).collect();
        let closure = Closure::build(
            ((0..d).collect::<Perm>(), 0usize),
            gens.len(),
            |(p, r), g| (compose(p, &gens[g].0), (r + gens[g].1) % m),
            cap,
        )?;
        let found = (0..closure.elements.len())
            .filter(|&i| closure.elements[i].1 == 0 && !is_identity(&closure.elements[i].0))
            .filter_map(|i| first_cycle(&closure.elements[i].0, &group.points).map(|(q, k)| (q, k, i)))
            .min();
        if let Some((q, k, i)) = found {
            let u = closure.word(i, group);
            let base = &group.generators[g0].word;
            let v = base.repeat(element_order(&group.generators[g0].perm) * (u.len() / m));
            return Ok(Some(WitnessII { u, v, q, k }));
        }
    }
    Ok(None)
}

/// A Kaplan–Levy triple in an unsolvable group, preferring `l ≤ |Q|`.
pub(crate) fn orbit_fo_lt_mod(
    groups: &[SchutzenbergerGroup],
    state_count: usize,
    cap: usize,
) -> Result<Option<WitnessIII>> {
    for group in groups.iter().filter(|g| !g.is_trivial()) {
        let d = group.points.len();
        let gens: Vec<&Perm> = group.generators.iter().map(|x| &x.perm).collect();
        let closure = Closure::build((0..d).collect::<Perm>(), gens.len(), |p, g| compose(p, gens[g]), cap)?;
        if closure.elements.len() < 6 {
            continue;
        }
        let pg = PermGroup::from_elements(d, closure.elements.clone())?;
        if is_solvable(&pg) {
            continue;
        }
        let mut best: Option<(bool, usize, usize, usize, usize, usize)> = None;
        for t in kaplan_levy_triples(&pg) {
            let (a, b) = (pg.element(t.a), pg.element(t.b));
            let ab = compose(a, b);
            let Some(q) = (0..d).filter(|&i| a[i] != i && b[i] != i && ab[i] != i).map(|i| group.points[i]).min()
            else {
                continue;
            };
            let key = (t.orders.2 > state_count, q, t.orders.1, t.orders.2, t.a, t.b);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        let Some((_, q, k, l, a, b)) = best else {
            return Err(Error::Internal("unsolvable orbit group without a usable Kaplan–Levy triple".into()));
        };
        // from_elements keeps the breadth-first order, identity first
        return Ok(Some(WitnessIII { u: closure.word(a, group), v: closure.word(b, group), q, k, l }));
    }
    Ok(None)
}
