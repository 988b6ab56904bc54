use std::fmt;

/// A binary relation on `0..n` for `n ≤ 64`, one bit row per element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: Vec<u64>,
}

pub const MAX_STATES: usize = 64;

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_STATES, "relations are limited to {MAX_STATES} states");
        Relation { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = 1 << i;
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, &r)| ones(r).map(move |j| (i, j)))
    }

    /// `self` then `other`: `(i, k)` iff `(i, j) ∈ self` and `(j, k) ∈ other`.
    pub fn then(&self, other: &Relation) -> Relation {
        let rows = self.rows.iter().map(|&r| ones(r).fold(0, |acc, j| acc | other.rows[j])).collect();
        Relation { rows }
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation { rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a | b).collect() }
    }

    /// Reflexive-transitive closure (Warshall).
    pub fn star(&self) -> Relation {
        let mut r = self.union(&Relation::identity(self.size()));
        for k in 0..r.size() {
            let rk = r.rows[k];
            for i in 0..r.size() {
                if r.rows[i] >> k & 1 == 1 {
                    r.rows[i] |= rk;
                }
            }
        }
        r
    }

    /// Transitive closure without the identity.
    pub fn plus(&self) -> Relation {
        self.then(&self.star())
    }
}

fn ones(mut r: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (r != 0).then(|| {
            let j = r.trailing_zeros() as usize;
            r &= r - 1;
            j
        })
    })
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}
