use std::collections::BTreeSet;

use super::gadgets::{build_cycle_gadget, GadgetVariant};
use crate::error::{Error, Result};
use crate::monoid::{
    element_order, generate_transition_monoid, group_closure, is_solvable, kaplan_levy_witness, KaplanLevy, Perm,
    PermGroup, DEFAULT_CAP,
};

/// Outcome of the desk-scale checks on the three gadgets for one prime.
#[derive(Debug, Clone)]
pub struct GadgetReport {
    pub p: usize,
    /// Orders of `♮`, `a` and `♮a`.
    pub generator_orders: (usize, usize, usize),
    pub closure_order: usize,
    pub derived_series_solvable: bool,
    /// Indices refer to the closure's element list.
    pub kaplan_levy: Option<KaplanLevy>,
    /// Pairs `⟨x, y⟩` closed, after the reductions described on
    /// [`verify_gadget_lemmas`].
    pub pairs_checked: usize,
    pub proper_pair_subgroups: usize,
    pub lt_monoid_order: usize,
    pub eq_monoid_order: usize,
    pub failures: Vec<String>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the MOD gadget group for prime `p`: generator orders `(2, p, 3)`,
/// unsolvability by both the derived series and a Kaplan–Levy triple, and
/// solvability of every proper subgroup generated by two elements. The
/// `<` and `≡` gadgets must have cyclic monoids of order `p`.
///
/// Pairs are reduced up to conjugation and up to the choice of generator of
/// each cyclic subgroup: `x` runs over representatives of the conjugacy
/// classes of cyclic subgroups and `y` over all cyclic subgroups.
pub fn verify_gadget_lemmas(p: usize) -> Result<GadgetReport> {
    let mod_gadget = build_cycle_gadget(p, GadgetVariant::Mod)?;
    let a: Perm = mod_gadget.letter_map(0);
    let nat: Perm = mod_gadget.letter_map(1);
    let nat_a: Perm = nat.iter().map(|&i| a[i]).collect();
    let generator_orders = (element_order(&nat), element_order(&a), element_order(&nat_a));
    let mut failures = Vec::new();
    if generator_orders != (2, p, 3) {
        failures.push(format!("generator orders {generator_orders:?}, expected (2, {p}, 3)"));
    }

    let g = group_closure(p + 1, &[a, nat], DEFAULT_CAP)?;
    let derived_series_solvable = is_solvable(&g);
    let kaplan_levy = kaplan_levy_witness(&g);
    if derived_series_solvable {
        failures.push("derived series reaches the trivial group".into());
    }
    if kaplan_levy.is_none() {
        failures.push("no Kaplan–Levy triple".into());
    }
    let (pairs_checked, proper_pair_subgroups) = check_pairs(&g, &mut failures)?;

    let mut cyclic_order = |variant| -> Result<usize> {
        let m = generate_transition_monoid(&build_cycle_gadget(p, variant)?, DEFAULT_CAP)?;
        let gen_order = element_order(&m.image(m.generator(0)));
        if m.len() != p || gen_order != p {
            failures.push(format!("M(B_{variant}) has {} elements, a has order {gen_order}", m.len()));
        }
        Ok(m.len())
    };
    let lt_monoid_order = cyclic_order(GadgetVariant::Lt)?;
    let eq_monoid_order = cyclic_order(GadgetVariant::Eq)?;

    Ok(GadgetReport {
        p,
        generator_orders,
        closure_order: g.order(),
        derived_series_solvable,
        kaplan_levy,
        pairs_checked,
        proper_pair_subgroups,
        lt_monoid_order,
        eq_monoid_order,
        failures,
    })
}

fn check_pairs(g: &PermGroup, failures: &mut Vec<String>) -> Result<(usize, usize)> {
    let n = g.order();
    let orders: Vec<usize> = g.elements().iter().map(|x| element_order(x)).collect();
    // canon[x]: least index generating the same cyclic subgroup as x
    let mut canon = vec![usize::MAX; n];
    for x in 0..n {
        if canon[x] != usize::MAX {
            continue;
        }
        let mut power = x;
        for k in 1..=orders[x] {
            if gcd(k, orders[x]) == 1 {
                canon[power] = canon[power].min(x);
            }
            power = g.mul(power, x);
        }
    }
    let cyclic: BTreeSet<usize> = canon.iter().copied().filter(|&c| c != 0).collect();
    let mut classes: Vec<usize> = Vec::new();
    let mut covered = BTreeSet::new();
    for &x in &cyclic {
        if covered.contains(&x) {
            continue;
        }
        classes.push(x);
        for h in 0..n {
            covered.insert(canon[g.mul(g.mul(g.inverse(h), x), h)]);
        }
    }

    let (mut checked, mut proper) = (0, 0);
    for &x in &classes {
        for &y in &cyclic {
            checked += 1;
            let gens = [g.element(x).clone(), g.element(y).clone()];
            // a subgroup with more than half the elements is the whole group
            match group_closure(g.degree(), &gens, n / 2 + 1) {
                Err(Error::SizeLimit { .. }) => {}
                Err(e) => return Err(e),
                Ok(sub) => {
                    proper += 1;
                    if !is_solvable(&sub) {
                        failures.push(format!(
                            "proper subgroup of order {} generated by {:?} and {:?} is unsolvable",
                            sub.order(),
                            gens[0],
                            gens[1]
                        ));
                    }
                }
            }
        }
    }
    Ok((checked, proper))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
