use std::cell::OnceCell;

use fixedbitset::FixedBitSet;

use super::witness::{WitnessI, WitnessII, WitnessIII};
use crate::automata::{Dfa, State, Word};
use crate::error::{Error, Result};
use crate::monoid::{
    generate_transition_monoid, kaplan_levy_triples, level_sets, maximal_subgroups, ElemId, LevelSets, TransitionMonoid,
};

/// The minimal DFA of a language with its transition monoid; level sets are
/// computed on first use.
pub struct Syntactic {
    minimal: Dfa,
    monoid: TransitionMonoid,
    levels: OnceCell<LevelSets>,
    cap: usize,
}

impl Syntactic {
    pub fn new(a: &Dfa, cap: usize) -> Result<Syntactic> {
        let minimal = a.minimize();
        let monoid = generate_transition_monoid(&minimal, cap)?;
        Ok(Syntactic { minimal, monoid, levels: OnceCell::new(), cap })
    }

    pub fn minimal(&self) -> &Dfa {
        &self.minimal
    }

    pub fn monoid(&self) -> &TransitionMonoid {
        &self.monoid
    }

    pub fn levels(&self) -> Result<&LevelSets> {
        if let Some(l) = self.levels.get() {
            return Ok(l);
        }
        let l = level_sets(&self.monoid, self.cap)?;
        Ok(self.levels.get_or_init(|| l))
    }
}

/// Cycles of length at least 2 in the functional graph of `image`, each
/// listed from its smallest state.
pub(crate) fn nontrivial_cycles(image: impl Fn(State) -> State, n: usize) -> Vec<Vec<State>> {
    // 0 = unvisited, 1 = on the current walk, 2 = done
    let mut color = vec![0u8; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut q = start;
        while color[q] == 0 {
            color[q] = 1;
            walk.push(q);
            q = image(q);
        }
        if color[q] == 1 {
            let from = walk.iter().position(|&x| x == q).expect("q is on the walk");
            let cycle = &walk[from..];
            if cycle.len() >= 2 {
                let min_at = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("nonempty");
                cycles.push(cycle[min_at..].iter().chain(&cycle[..min_at]).copied().collect());
            }
        }
        for x in walk {
            color[x] = 2;
        }
    }
    cycles
}

/// Criterion for FO(<): some element moves a state around a nontrivial
/// cycle. Minimizes `(|u|, q, k)`, then the shortlex order of `u`.
pub fn search_fo_lt(ctx: &Syntactic) -> Option<WitnessI> {
    let m = ctx.monoid();
    let n = m.degree();
    let mut best: Option<(usize, State, usize, ElemId)> = None;
    for s in m.elements() {
        let d = m.witness_len(s);
        if matches!(best, Some((bd, ..)) if d > bd) {
            break;
        }
        for cycle in nontrivial_cycles(|q| m.apply(s, q), n) {
            let cand = (d, cycle[0], cycle.len(), s);
            if best.is_none_or(|b| cand < b) {
                best = Some(cand);
            }
        }
    }
    best.map(|(_, q, k, s)| WitnessI { u: m.witness(s), q, k })
}

/// The shortlex-least word of length `t` inducing `target`, which must lie in
/// level `t`.
fn word_of_length(m: &TransitionMonoid, levels: &LevelSets, t: usize, target: ElemId) -> Word {
    let k = m.alphabet().len();
    // can[i]: elements of T_i from which `target` is reachable in t - i letters
    let mut can: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(m.len()); t + 1];
    can[t].insert(target);
    for i in (0..t).rev() {
        let (lo, hi) = can.split_at_mut(i + 1);
        for x in levels.level(i).ones() {
            if (0..k).any(|c| hi[0].contains(m.right_mul(x, c))) {
                lo[i].insert(x);
            }
        }
    }
    let mut word = Vec::with_capacity(t);
    let mut cur = m.identity();
    for next in can.iter().skip(1) {
        let c = (0..k).find(|&c| next.contains(m.right_mul(cur, c))).expect("backward sets are consistent");
        word.push(c);
        cur = m.right_mul(cur, c);
    }
    Word(word)
}

/// Criterion for FO(<,≡): equal-length `u`, `v` where `u` cycles `q` and `v`
/// fixes the whole cycle. Pairs `(δ_u, δ_v)` with `|u| = |v| = t` are exactly
/// the pairs drawn from level `T_t`, so the search runs level by level.
pub fn search_fo_lt_eq(ctx: &Syntactic) -> Result<Option<WitnessII>> {
    let m = ctx.monoid();
    let n = m.degree();
    let levels = ctx.levels()?;
    for (t, level) in levels.distinct().iter().enumerate() {
        let members: Vec<ElemId> = level.ones().collect();
        // fixers[q]: positions in `members` of elements fixing q
        let mut fixers = vec![FixedBitSet::with_capacity(members.len()); n];
        for (i, &g) in members.iter().enumerate() {
            for (q, f) in fixers.iter_mut().enumerate() {
                if m.apply(g, q) == q {
                    f.insert(i);
                }
            }
        }
        let mut best: Option<(State, usize, ElemId, ElemId)> = None;
        for &f in &members {
            for cycle in nontrivial_cycles(|q| m.apply(f, q), n) {
                let (q, k) = (cycle[0], cycle.len());
                if best.is_some_and(|(bq, bk, ..)| (q, k) >= (bq, bk)) {
                    continue;
                }
                let mut common = fixers[cycle[0]].clone();
                for &p in &cycle[1..] {
                    common.intersect_with(&fixers[p]);
                }
                if let Some(i) = common.ones().next() {
                    best = Some((q, k, f, members[i]));
                }
            }
        }
        if let Some((q, k, f, g)) = best {
            let u = word_of_length(m, levels, t, f);
            let v = word_of_length(m, levels, t, g);
            return Ok(Some(WitnessII { u, v, q, k }));
        }
    }
    Ok(None)
}

/// Criterion for FO(<,MOD): a Kaplan–Levy triple inside some maximal
/// subgroup yields `u`, `v`, `k = o(δ_v)` and `l = o(δ_{uv})` on the support.
/// Among all triples of all maximal subgroups the search minimizes
/// `(|u|, |v|, q, k, l)`, preferring `l ≤ |Q|` when such a triple exists.
pub fn search_fo_lt_mod(ctx: &Syntactic) -> Result<Option<WitnessIII>> {
    let m = ctx.monoid();
    let n = m.degree();
    type Key = (bool, usize, usize, State, usize, usize, ElemId, ElemId);
    let mut best: Option<Key> = None;
    for h in maximal_subgroups(m) {
        if h.group.order() < 6 {
            // the smallest group holding an involution and an element of odd prime order
            continue;
        }
        for t in kaplan_levy_triples(&h.group) {
            let (a, b) = (h.member_of(t.a), h.member_of(t.b));
            let ab = m.mul(a, b);
            let Some(&q) = h.support.iter().find(|&&q| m.apply(a, q) != q && m.apply(b, q) != q && m.apply(ab, q) != q)
            else {
                continue;
            };
            let (k, l) = (t.orders.1, t.orders.2);
            let key = (l > n, m.witness_len(a), m.witness_len(b), q, k, l, a, b);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    let Some((_, _, _, q, k, l, a, b)) = best else {
        return Ok(None);
    };
    let w = WitnessIII { u: m.witness(a), v: m.witness(b), q, k, l };
    w.validate(ctx.minimal())
        .map_err(|e| Error::Internal(format!("criterion (iii) produced an invalid witness: {e}")))?;
    Ok(Some(w))
}
