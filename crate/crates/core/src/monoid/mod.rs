//! Transition monoids of DFAs and the group-theoretic tests run on them.
//!
//! Composition is left to right throughout: `δ_u · δ_v = δ_{uv}` first
//! applies `δ_u`, then `δ_v`.

mod groups;
mod levels;
mod orbit;
mod perm;

use std::hash::BuildHasher;

use hashbrown::HashTable;
use rustc_hash::{FxBuildHasher, FxHashMap};

use crate::automata::{Alphabet, Dfa, State, Symbol, Word};
use crate::error::{Error, Result};

pub use groups::{all_monoid_groups_solvable, maximal_subgroups, restriction_support, GroupSurvey, MaximalSubgroup};
pub use levels::{is_quasi_aperiodic, level_sets, set_contains_nontrivial_group, LevelSets};
pub use orbit::{image_orbit, schutzenberger_groups, ImageOrbit, OrbitGenerator, SchutzenbergerGroup};
pub(crate) use perm::is_prime;
pub use perm::{
    element_order, group_closure, is_solvable, kaplan_levy_triples, kaplan_levy_witness, KaplanLevy, Perm, PermGroup,
};

/// Default bound on the number of elements any closure may produce.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Index of an element inside a [`TransitionMonoid`]. Elements are numbered
/// in shortlex order of their witnesses, so 0 is the identity.
pub type ElemId = usize;

/// A total map on states together with a word inducing it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transformation {
    pub image: Vec<State>,
    pub witness: Word,
}

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation { image: (0..n).collect(), witness: Word::empty() }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation {
            image: self.image.iter().map(|&q| other.image[q]).collect(),
            witness: self.witness.concat(&other.witness),
        }
    }

    pub fn apply(&self, q: State) -> State {
        self.image[q]
    }
}

/// `δ_w` as a transformation with witness `w`.
pub fn transformation_of_word(a: &Dfa, w: &Word) -> Result<Transformation> {
    if let Some(&c) = w.symbols().iter().find(|&&c| c >= a.alphabet().len()) {
        return Err(Error::SymbolOutOfRange(c));
    }
    let image = (0..a.state_count()).map(|q| a.delta_word(q, w)).collect();
    Ok(Transformation { image, witness: w.clone() })
}

/// The closure of the letter transformations of a DFA, stored as a flat
/// arena with a right Cayley table.
#[derive(Clone)]
pub struct TransitionMonoid {
    alphabet: Alphabet,
    degree: usize,
    images: Vec<u32>,
    /// (prefix element, last letter); the identity has no parent.
    parent: Vec<Option<(u32, u32)>>,
    depth: Vec<u32>,
    right: Vec<u32>,
    index: HashTable<u32>,
}

impl std::fmt::Debug for TransitionMonoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TransitionMonoid").field("degree", &self.degree).field("size", &self.len()).finish()
    }
}

fn hash_image(image: &[u32]) -> u64 {
    FxBuildHasher.hash_one(image)
}

/// Breadth-first closure from the identity under right multiplication by
/// the letters, in alphabet order.
pub fn generate_transition_monoid(a: &Dfa, cap: usize) -> Result<TransitionMonoid> {
    let n = a.state_count();
    let k = a.alphabet().len();
    let letters: Vec<Vec<u32>> = (0..k).map(|c| a.letter_map(c).into_iter().map(|q| q as u32).collect()).collect();

    let mut m = TransitionMonoid {
        alphabet: a.alphabet().clone(),
        degree: n,
        images: (0..n as u32).collect(),
        parent: vec![None],
        depth: vec![0],
        right: Vec::new(),
        index: HashTable::new(),
    };
    m.index.insert_unique(hash_image(&m.images[..n]), 0, |_| unreachable!("table was empty"));

    let mut buf = vec![0u32; n];
    let mut id = 0;
    while id < m.len() {
        for (c, letter) in letters.iter().enumerate() {
            let src = &m.images[id * n..(id + 1) * n];
            for (b, &q) in buf.iter_mut().zip(src) {
                *b = letter[q as usize];
            }
            let target = match m.find(&buf) {
                Some(t) => t,
                None => {
                    if m.len() >= cap {
                        return Err(Error::SizeLimit { what: "transition monoid", limit: cap });
                    }
                    let t = m.len();
                    m.images.extend_from_slice(&buf);
                    m.parent.push(Some((id as u32, c as u32)));
                    m.depth.push(m.depth[id] + 1);
                    let (images, degree) = (&m.images, m.degree);
                    m.index.insert_unique(hash_image(&buf), t as u32, |&e| {
                        hash_image(&images[e as usize * degree..(e as usize + 1) * degree])
                    });
                    t
                }
            };
            m.right.push(target as u32);
        }
        id += 1;
    }
    Ok(m)
}

/// The transition monoid of the minimal DFA.
pub fn syntactic_monoid(a: &Dfa, cap: usize) -> Result<TransitionMonoid> {
    generate_transition_monoid(&a.minimize(), cap)
}

impl TransitionMonoid {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of states the transformations act on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    fn image_raw(&self, id: ElemId) -> &[u32] {
        &self.images[id * self.degree..(id + 1) * self.degree]
    }

    fn find(&self, image: &[u32]) -> Option<ElemId> {
        self.index.find(hash_image(image), |&e| self.image_raw(e as usize) == image).map(|&e| e as usize)
    }

    /// The element with the given image, if it belongs to the monoid.
    pub fn lookup(&self, image: &[State]) -> Option<ElemId> {
        if image.len() != self.degree || image.iter().any(|&q| q >= self.degree) {
            return None;
        }
        let raw: Vec<u32> = image.iter().map(|&q| q as u32).collect();
        self.find(&raw)
    }

    #[inline]
    pub fn apply(&self, id: ElemId, q: State) -> State {
        self.images[id * self.degree + q] as State
    }

    pub fn image(&self, id: ElemId) -> Vec<State> {
        self.image_raw(id).iter().map(|&q| q as State).collect()
    }

    pub fn generator(&self, c: Symbol) -> ElemId {
        self.right[c] as ElemId
    }

    /// `s · c` for a single letter, from the Cayley table.
    #[inline]
    pub fn right_mul(&self, s: ElemId, c: Symbol) -> ElemId {
        self.right[s * self.alphabet.len() + c] as ElemId
    }

    /// `x` followed by `y`.
    pub fn mul(&self, x: ElemId, y: ElemId) -> ElemId {
        let (ix, iy) = (self.image_raw(x), self.image_raw(y));
        let composed: Vec<u32> = ix.iter().map(|&q| iy[q as usize]).collect();
        self.find(&composed).expect("monoid is closed under composition")
    }

    pub fn pow(&self, s: ElemId, e: usize) -> ElemId {
        (0..e).fold(self.identity(), |acc, _| self.mul(acc, s))
    }

    pub fn is_idempotent(&self, s: ElemId) -> bool {
        let img = self.image_raw(s);
        img.iter().all(|&q| img[q as usize] == q)
    }

    /// Length of the shortlex-least word inducing the element.
    pub fn witness_len(&self, id: ElemId) -> usize {
        self.depth[id] as usize
    }

    pub fn witness(&self, id: ElemId) -> Word {
        let mut out = Vec::with_capacity(self.depth[id] as usize);
        let mut cur = id;
        while let Some((p, c)) = self.parent[cur] {
            out.push(c as Symbol);
            cur = p as usize;
        }
        out.reverse();
        Word(out)
    }

    pub fn element(&self, id: ElemId) -> Transformation {
        Transformation { image: self.image(id), witness: self.witness(id) }
    }

    /// Element induced by a word, walked through the Cayley table.
    pub fn element_of_word(&self, w: &Word) -> ElemId {
        w.symbols().iter().fold(self.identity(), |s, &c| self.right_mul(s, c))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.len()
    }
}

/// The cyclic semigroup generated by an element: `s^{i} = s^{i+j}` with `i`
/// and `j` minimal, and its group part `{s^i, …, s^{i+j−1}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicGroupData {
    pub base: ElemId,
    pub index: usize,
    pub period: usize,
    /// `s^index, …, s^{index+period−1}`.
    pub group: Vec<ElemId>,
    /// The multiple of `period` that is at least `index`; `s` to this
    /// power is the idempotent of the group.
    pub identity_exponent: usize,
}

impl CyclicGroupData {
    pub fn is_nontrivial(&self) -> bool {
        self.period > 1
    }

    pub fn idempotent(&self) -> ElemId {
        self.group[(self.identity_exponent - self.index) % self.period]
    }
}

/// All powers `s, s², …` up to the first repetition, as `(powers, i, j)`
/// with `powers[e-1] = s^e`.
pub(crate) fn power_sequence(m: &TransitionMonoid, s: ElemId) -> (Vec<ElemId>, usize, usize) {
    let mut seen: FxHashMap<ElemId, usize> = FxHashMap::default();
    let mut powers = Vec::new();
    let mut cur = s;
    let mut e = 1;
    loop {
        if let Some(&first) = seen.get(&cur) {
            return (powers, first, e - first);
        }
        seen.insert(cur, e);
        powers.push(cur);
        cur = m.mul(cur, s);
        e += 1;
    }
}

pub fn cyclic_group_of(m: &TransitionMonoid, s: ElemId) -> CyclicGroupData {
    let (powers, i, j) = power_sequence(m, s);
    let group = powers[i - 1..].to_vec();
    let identity_exponent = i.div_ceil(j) * j;
    CyclicGroupData { base: s, index: i, period: j, group, identity_exponent }
}

/// Least `n ≥ 1` with `s^n` idempotent.
pub fn idempotent_power(m: &TransitionMonoid, s: ElemId) -> usize {
    cyclic_group_of(m, s).identity_exponent
}

/// No element generates a nontrivial cyclic group.
pub fn is_aperiodic(m: &TransitionMonoid) -> bool {
    m.elements().all(|s| !cyclic_group_of(m, s).is_nontrivial())
}
