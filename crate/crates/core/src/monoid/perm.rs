use rustc_hash::{FxHashMap, FxHashSet};

use crate::error::{Error, Result};

/// A permutation of `0..n` as its image array.
pub type Perm = Vec<usize>;

fn compose(x: &[usize], y: &[usize]) -> Perm {
    x.iter().map(|&i| y[i]).collect()
}

fn invert(x: &[usize]) -> Perm {
    let mut inv = vec![0; x.len()];
    for (i, &j) in x.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn is_bijection(x: &[usize], n: usize) -> bool {
    if x.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    x.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
}

/// A finite permutation group with its elements listed explicitly. Element
/// 0 is the identity.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<Perm>,
    index: FxHashMap<Perm, usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|g| other.index.contains_key(g))
    }
}

impl Eq for PermGroup {}

/// Closure of `generators` under composition, in breadth-first order from
/// the identity.
pub fn group_closure(degree: usize, generators: &[Perm], cap: usize) -> Result<PermGroup> {
    if let Some(bad) = generators.iter().find(|g| !is_bijection(g, degree)) {
        return Err(Error::Invalid(format!("{bad:?} is not a permutation of 0..{degree}")));
    }
    let identity: Perm = (0..degree).collect();
    let mut elements = vec![identity.clone()];
    let mut index = FxHashMap::default();
    index.insert(identity, 0);
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let next = compose(&elements[i], g);
            if !index.contains_key(&next) {
                if elements.len() >= cap {
                    return Err(Error::SizeLimit { what: "permutation group", limit: cap });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        i += 1;
    }
    Ok(PermGroup { degree, elements, generators: generators.to_vec(), index })
}

impl PermGroup {
    /// Wraps a list already known to form a group, keeping its order. The
    /// identity is moved to the front; membership of inverses is checked.
    pub fn from_elements(degree: usize, mut elements: Vec<Perm>) -> Result<PermGroup> {
        if let Some(bad) = elements.iter().find(|g| !is_bijection(g, degree)) {
            return Err(Error::Invalid(format!("{bad:?} is not a permutation of 0..{degree}")));
        }
        let identity: Perm = (0..degree).collect();
        let pos = elements
            .iter()
            .position(|g| *g == identity)
            .ok_or_else(|| Error::Internal("group without identity".into()))?;
        let id = elements.remove(pos);
        elements.insert(0, id);
        let index: FxHashMap<Perm, usize> = elements.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        if index.len() != elements.len() {
            return Err(Error::Internal("duplicate group elements".into()));
        }
        if elements.iter().any(|g| !index.contains_key(&invert(g))) {
            return Err(Error::Internal("element set is not inverse-closed".into()));
        }
        let generators = elements.clone();
        Ok(PermGroup { degree, elements, generators, index })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &[usize]) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &[usize]) -> bool {
        self.index.contains_key(g)
    }

    /// Index of `elements[x]` followed by `elements[y]`.
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.index[&compose(&self.elements[x], &self.elements[y])]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.index[&invert(&self.elements[x])]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|x| gens.iter().all(|y| compose(x, y) == compose(y, x)))
    }

    /// The subgroup generated by all commutators `x⁻¹y⁻¹xy`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut commutators: Vec<Perm> = Vec::new();
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        let inverses: Vec<Perm> = self.elements.iter().map(|g| invert(g)).collect();
        for (x, xi) in self.elements.iter().zip(&inverses) {
            for (y, yi) in self.elements.iter().zip(&inverses) {
                let c = compose(&compose(&compose(xi, yi), x), y);
                if seen.insert(c.clone()) {
                    commutators.push(c);
                }
            }
        }
        // Grow a generating set greedily; each accepted commutator at least
        // doubles the subgroup, so few closures are computed.
        let mut gens: Vec<Perm> = Vec::new();
        let mut sub = group_closure(self.degree, &gens, usize::MAX).expect("trivial closure");
        for c in commutators {
            if !sub.contains(&c) {
                gens.push(c);
                sub = group_closure(self.degree, &gens, usize::MAX).expect("subgroup of a finite group");
            }
        }
        sub
    }
}

/// Least `n ≥ 1` with `g^n` the identity: the lcm of the cycle lengths.
pub fn element_order(g: &[usize]) -> usize {
    let mut seen = vec![false; g.len()];
    let mut order = 1;
    for start in 0..g.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut q = start;
        while !seen[q] {
            seen[q] = true;
            q = g[q];
            len += 1;
        }
        order = lcm(order, len);
    }
    order
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Derived series down to a fixpoint; solvable iff it reaches the trivial
/// group.
pub fn is_solvable(g: &PermGroup) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.order() == 1 || cur.is_abelian() {
            return true;
        }
        let next = cur.derived_subgroup();
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// Elements `a, b, c` with `abc = 1`, `o(a) = 2`, `o(b)` an odd prime and
/// `o(c) > 1` coprime to both. Indices refer to the group's element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KaplanLevy {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub orders: (usize, usize, usize),
}

/// Every Kaplan–Levy triple, ordered by `(a, b)` element index.
pub fn kaplan_levy_triples(g: &PermGroup) -> impl Iterator<Item = KaplanLevy> + '_ {
    let orders: Vec<usize> = g.elements().iter().map(|x| element_order(x)).collect();
    let involutions: Vec<usize> = (0..g.order()).filter(|&i| orders[i] == 2).collect();
    let odd_primes: Vec<usize> = (0..g.order()).filter(|&i| orders[i] % 2 == 1 && is_prime(orders[i])).collect();
    involutions.into_iter().flat_map(move |a| {
        let orders = orders.clone();
        odd_primes.clone().into_iter().filter_map(move |b| {
            let c = g.inverse(g.mul(a, b));
            let oc = orders[c];
            (oc > 1 && gcd(oc, 2) == 1 && gcd(oc, orders[b]) == 1).then_some(KaplanLevy {
                a,
                b,
                c,
                orders: (2, orders[b], oc),
            })
        })
    })
}

/// The first Kaplan–Levy triple, present iff the group is unsolvable.
pub fn kaplan_levy_witness(g: &PermGroup) -> Option<KaplanLevy> {
    kaplan_levy_triples(g).next()
}
