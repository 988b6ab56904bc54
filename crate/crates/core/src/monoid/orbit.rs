//! The right action of a DFA's letters on the images of its
//! transformations, and the permutation groups read off its strongly
//! connected components.
//!
//! Every maximal subgroup of the transition monoid is isomorphic to the
//! group carried by some image set, and every such group is a quotient of a
//! subgroup of the monoid, so both sides agree on triviality and
//! solvability without listing the monoid.

use std::hash::BuildHasher;

use hashbrown::HashTable;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rustc_hash::{FxBuildHasher, FxHashMap};

use super::Perm;
use crate::automata::{Dfa, State, Symbol, Word};
use crate::error::{Error, Result};

/// Sets `Q·w` for all words `w`, numbered in breadth-first order from `Q`.
pub struct ImageOrbit {
    k: usize,
    data: Vec<u32>,
    start: Vec<usize>,
    succ: Vec<u32>,
    parent: Vec<Option<(u32, u32)>>,
}

impl ImageOrbit {
    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted states of set `i`.
    pub fn set(&self, i: usize) -> &[u32] {
        &self.data[self.start[i]..self.start[i + 1]]
    }

    pub fn succ(&self, i: usize, c: Symbol) -> usize {
        self.succ[i * self.k + c] as usize
    }

    /// The shortlex-least word `w` with `Q·w` equal to set `i`.
    pub fn word(&self, mut i: usize) -> Word {
        let mut w = Vec::new();
        while let Some((p, c)) = self.parent[i] {
            w.push(c as usize);
            i = p as usize;
        }
        w.reverse();
        Word(w)
    }
}

pub fn image_orbit(a: &Dfa, cap: usize) -> Result<ImageOrbit> {
    let k = a.alphabet().len();
    let letters: Vec<Vec<u32>> = (0..k).map(|c| a.letter_map(c).into_iter().map(|q| q as u32).collect()).collect();
    let mut o = ImageOrbit {
        k,
        data: (0..a.state_count() as u32).collect(),
        start: vec![0, a.state_count()],
        succ: Vec::new(),
        parent: vec![None],
    };
    let hash = |s: &[u32]| FxBuildHasher.hash_one(s);
    let mut index: HashTable<u32> = HashTable::new();
    index.insert_unique(hash(o.set(0)), 0, |_| unreachable!("table was empty"));
    let mut buf = Vec::new();
    let mut i = 0;
    while i < o.len() {
        for (c, letter) in letters.iter().enumerate() {
            buf.clear();
            buf.extend(o.set(i).iter().map(|&q| letter[q as usize]));
            buf.sort_unstable();
            buf.dedup();
            let h = hash(&buf);
            let found = index.find(h, |&j| o.set(j as usize) == buf.as_slice()).copied();
            let j = match found {
                Some(j) => j,
                None => {
                    if o.len() >= cap {
                        return Err(Error::SizeLimit { what: "image orbit", limit: cap });
                    }
                    let j = o.len() as u32;
                    o.data.extend_from_slice(&buf);
                    o.start.push(o.data.len());
                    o.parent.push(Some((i as u32, c as u32)));
                    let (data, start) = (&o.data, &o.start);
                    index.insert_unique(h, j, |&e| hash(&data[start[e as usize]..start[e as usize + 1]]));
                    j
                }
            };
            o.succ.push(j);
        }
        i += 1;
    }
    Ok(o)
}

/// A permutation of a group's points induced by a word that maps the base
/// set onto itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGenerator {
    pub perm: Perm,
    pub word: Word,
}

/// The permutations a strongly connected component of the orbit induces on
/// its least set. Generators are distinct as `(perm, |word|)` pairs.
#[derive(Debug, Clone)]
pub struct SchutzenbergerGroup {
    pub base: usize,
    pub points: Vec<State>,
    pub generators: Vec<OrbitGenerator>,
}

impl SchutzenbergerGroup {
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| g.perm.iter().enumerate().all(|(i, &j)| i == j))
    }
}

/// Groups of every component with at least two points and an internal edge,
/// in order of their base sets.
pub fn schutzenberger_groups(a: &Dfa, orbit: &ImageOrbit) -> Vec<SchutzenbergerGroup> {
    let k = orbit.k;
    let mut g = DiGraph::<(), ()>::with_capacity(orbit.len(), orbit.len() * k);
    let nodes: Vec<_> = (0..orbit.len()).map(|_| g.add_node(())).collect();
    for i in 0..orbit.len() {
        for c in 0..k {
            g.add_edge(nodes[i], nodes[orbit.succ(i, c)], ());
        }
    }
    let mut groups = Vec::new();
    for comp in tarjan_scc(&g) {
        let mut comp: Vec<usize> = comp.into_iter().map(|n| n.index()).collect();
        comp.sort_unstable();
        let base = comp[0];
        if orbit.set(base).len() < 2 {
            continue;
        }
        let local: FxHashMap<usize, usize> = comp.iter().enumerate().map(|(l, &i)| (i, l)).collect();
        let inside = |i: usize| local.get(&i).copied();
        if !comp.iter().any(|&i| (0..k).any(|c| inside(orbit.succ(i, c)).is_some())) {
            continue;
        }
        groups.push(component_group(a, orbit, &comp, &local));
    }
    groups.sort_by_key(|g| g.base);
    groups
}

fn component_group(
    a: &Dfa,
    orbit: &ImageOrbit,
    comp: &[usize],
    local: &FxHashMap<usize, usize>,
) -> SchutzenbergerGroup {
    let k = orbit.k;
    let base = comp[0];
    let points: Vec<State> = orbit.set(base).iter().map(|&q| q as State).collect();
    let pos = |set: &[u32], q: State| set.binary_search(&(q as u32)).expect("image is closed under the letter");
    let n = comp.len();

    // fwd[l][i]: where the tree word to set l sends points[i]
    let mut fwd: Vec<Option<Vec<State>>> = vec![None; n];
    let mut fwd_parent: Vec<Option<(usize, Symbol)>> = vec![None; n];
    fwd[0] = Some(points.clone());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(l) = queue.pop_front() {
        for c in 0..k {
            let Some(&m) = local.get(&orbit.succ(comp[l], c)) else { continue };
            if fwd[m].is_none() {
                let next = fwd[l].as_ref().expect("visited").iter().map(|&q| a.step(q, c)).collect();
                fwd[m] = Some(next);
                fwd_parent[m] = Some((l, c));
                queue.push_back(m);
            }
        }
    }

    // back[l][j]: index in `points` reached from the j-th state of set l
    let mut preds: Vec<Vec<(usize, Symbol)>> = vec![Vec::new(); n];
    for (l, &i) in comp.iter().enumerate() {
        for c in 0..k {
            if let Some(&m) = local.get(&orbit.succ(i, c)) {
                preds[m].push((l, c));
            }
        }
    }
    let mut back: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut back_next: Vec<Option<(Symbol, usize)>> = vec![None; n];
    back[0] = Some((0..points.len()).collect());
    queue.push_back(0);
    while let Some(m) = queue.pop_front() {
        for &(l, c) in &preds[m] {
            if back[l].is_none() {
                let target = orbit.set(comp[m]);
                let via = back[m].as_ref().expect("visited");
                let row = orbit.set(comp[l]).iter().map(|&q| via[pos(target, a.step(q as State, c))]).collect();
                back[l] = Some(row);
                back_next[l] = Some((c, m));
                queue.push_back(l);
            }
        }
    }

    let fwd_word = |mut l: usize| {
        let mut w = Vec::new();
        while let Some((p, c)) = fwd_parent[l] {
            w.push(c);
            l = p;
        }
        w.reverse();
        w
    };
    let back_word = |mut l: usize| {
        let mut w = Vec::new();
        while let Some((c, m)) = back_next[l] {
            w.push(c);
            l = m;
        }
        w
    };
    let mut seen: FxHashMap<(Perm, usize), ()> = FxHashMap::default();
    let mut generators = Vec::new();
    let mut add = |perm: Perm, word: Vec<Symbol>| {
        if !word.is_empty() && seen.insert((perm.clone(), word.len()), ()).is_none() {
            generators.push(OrbitGenerator { perm, word: Word(word) });
        }
    };
    for l in 0..n {
        let set_l = orbit.set(comp[l]);
        let image = fwd[l].as_ref().expect("component is strongly connected");
        let via = back[l].as_ref().expect("component is strongly connected");
        // the tree word to l followed by the way back
        let perm = image.iter().map(|&q| via[pos(set_l, q)]).collect();
        let mut w = fwd_word(l);
        w.extend(back_word(l));
        add(perm, w);
        for c in 0..k {
            let Some(&m) = local.get(&orbit.succ(comp[l], c)) else { continue };
            let set_m = orbit.set(comp[m]);
            let via = back[m].as_ref().expect("component is strongly connected");
            let perm = image.iter().map(|&q| via[pos(set_m, a.step(q, c))]).collect();
            let mut w = fwd_word(l);
            w.push(c);
            w.extend(back_word(m));
            add(perm, w);
        }
    }
    generators.sort_by(|x, y| (x.word.len(), &x.word.0).cmp(&(y.word.len(), &y.word.0)));
    SchutzenbergerGroup { base, points, generators }
}
