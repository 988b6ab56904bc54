//! Shared generators and brute-force reference implementations for the
//! integration suites. Nothing here calls into the library's monoid, group
//! or definability code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use fodef::{Alphabet, Dfa, Dir, TwoNfa, Word};
use rand::Rng;

pub const LETTERS: [&str; 3] = ["a", "b", "c"];

pub fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(LETTERS[..k].iter().copied()).unwrap()
}

/// Uniform transitions, each state final with probability 1/2.
pub fn random_dfa(rng: &mut impl Rng, max_states: usize, max_letters: usize) -> Dfa {
    let n = rng.random_range(1..=max_states);
    let k = rng.random_range(1..=max_letters);
    let delta = (0..n).map(|_| (0..k).map(|_| rng.random_range(0..n)).collect()).collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    Dfa::new(alphabet(k), delta, 0, finals).unwrap()
}

/// Up to `max_options` moves per (state, letter) cell, random directions.
pub fn random_two_nfa(rng: &mut impl Rng, max_states: usize, letters: usize, max_options: usize) -> TwoNfa {
    let n = rng.random_range(1..=max_states);
    let mut edges = Vec::new();
    for q in 0..n {
        for c in 0..letters {
            for _ in 0..rng.random_range(0..=max_options) {
                let d = [Dir::Left, Dir::Stay, Dir::Right][rng.random_range(0..3)];
                edges.push((q, c, rng.random_range(0..n), d));
            }
        }
    }
    let initials: Vec<usize> = (0..n).filter(|&q| q == 0 || rng.random_bool(0.25)).collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    TwoNfa::new(alphabet(letters), n, edges, initials, finals).unwrap()
}

pub fn all_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word(vec![])];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for c in 0..k {
                let mut x: Vec<usize> = w.clone();
                x.push(c);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned().map(Word));
        frontier = next;
    }
    out
}

/// Direct simulation of a 2NFA by search over configurations, written
/// independently of `TwoNfa::run`.
pub fn simulate_two_nfa(a: &TwoNfa, w: &Word) -> bool {
    let len = w.len();
    let mut seen = HashSet::new();
    let mut stack: Vec<(usize, usize)> = a.initials().iter().map(|&q| (q, 0)).collect();
    while let Some((q, i)) = stack.pop() {
        if !seen.insert((q, i)) {
            continue;
        }
        if i == len {
            if a.is_final(q) {
                return true;
            }
            continue;
        }
        for &(t, d) in a.moves(q, w.0[i]) {
            let j = match d {
                Dir::Left if i == 0 => continue,
                Dir::Left => i - 1,
                Dir::Stay => i,
                Dir::Right => i + 1,
            };
            stack.push((t, j));
        }
    }
    false
}

pub type Map = Vec<usize>;

/// `f` then `g`.
pub fn then(f: &Map, g: &Map) -> Map {
    f.iter().map(|&x| g[x]).collect()
}

/// All transformations `δ_w`, by breadth-first closure.
pub fn brute_monoid(d: &Dfa) -> Vec<Map> {
    let letters: Vec<Map> = (0..d.alphabet().len()).map(|c| d.letter_map(c)).collect();
    let id: Map = (0..d.state_count()).collect();
    let mut seen: HashSet<Map> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(f) = queue.pop_front() {
        for l in &letters {
            let g = then(&f, l);
            if seen.insert(g.clone()) {
                out.push(g.clone());
                queue.push_back(g);
            }
        }
    }
    out
}

/// `(x^ω, x^{ω+1})`.
fn omega(x: &Map) -> (Map, Map) {
    let mut powers = vec![x.clone()];
    loop {
        let next = then(powers.last().unwrap(), x);
        if let Some(i) = powers.iter().position(|p| *p == next) {
            // powers[i..] is the cycle; its idempotent is the one equal to its square
            let e = powers[i..].iter().find(|p| then(p, p) == **p).unwrap().clone();
            let e1 = then(&e, x);
            return (e, e1);
        }
        powers.push(next);
    }
}

pub fn brute_aperiodic(m: &[Map]) -> bool {
    m.iter().all(|x| {
        let (e, e1) = omega(x);
        e == e1
    })
}

/// Whether the set contains all powers of some non-idempotent group element.
fn set_has_group(set: &BTreeSet<Map>) -> bool {
    set.iter().any(|h| {
        let (e, e1) = omega(h);
        if e == e1 || e1 != then(&e, h) || then(&e, h) != *h {
            return false;
        }
        let mut p = h.clone();
        loop {
            if !set.contains(&p) {
                return false;
            }
            if p == e {
                return true;
            }
            p = then(&p, h);
        }
    })
}

/// Levels `η(Σ^t)` until they repeat, each checked for a nontrivial group.
pub fn brute_quasi_aperiodic(d: &Dfa) -> bool {
    let letters: Vec<Map> = (0..d.alphabet().len()).map(|c| d.letter_map(c)).collect();
    let mut level: BTreeSet<Map> = BTreeSet::from([(0..d.state_count()).collect()]);
    let mut seen: HashSet<BTreeSet<Map>> = HashSet::new();
    while seen.insert(level.clone()) {
        if set_has_group(&level) {
            return false;
        }
        level = level.iter().flat_map(|f| letters.iter().map(move |l| then(f, l))).collect();
    }
    true
}

pub fn closure(gens: &[Map], id: &Map) -> HashSet<Map> {
    let mut seen: HashSet<Map> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id.clone()]);
    while let Some(f) = queue.pop_front() {
        for g in gens {
            let h = then(&f, g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

/// Every maximal subgroup `H_e = {x : x^ω = e, x^{ω+1} = x}` is solvable.
/// One idempotent per image set suffices, as those groups are isomorphic.
pub fn brute_groups_solvable(m: &[Map]) -> bool {
    let mut groups: HashMap<BTreeSet<usize>, (Map, Vec<Map>)> = HashMap::new();
    let info: Vec<(Map, Map)> = m.iter().map(omega).collect();
    for (x, (e, e1)) in m.iter().zip(&info) {
        if then(e, x) == *x && e1 == x {
            let image: BTreeSet<usize> = e.iter().copied().collect();
            let entry = groups.entry(image).or_insert_with(|| (e.clone(), Vec::new()));
            if entry.0 == *e {
                entry.1.push(x.clone());
            }
        }
    }
    groups.values().all(|(e, h)| {
        let inverse = |x: &Map| -> Map {
            let mut p = x.clone();
            loop {
                let next = then(&p, x);
                if next == *e {
                    return p;
                }
                p = next;
            }
        };
        let mut current: Vec<Map> = h.clone();
        loop {
            if current.len() == 1 {
                return true;
            }
            let inv: Vec<Map> = current.iter().map(inverse).collect();
            let mut comms: HashSet<Map> = HashSet::new();
            for i in 0..current.len() {
                for j in 0..current.len() {
                    let c = then(&then(&then(&inv[i], &inv[j]), &current[i]), &current[j]);
                    comms.insert(c);
                }
            }
            let gens: Vec<Map> = comms.into_iter().collect();
            let next: Vec<Map> = closure(&gens, e).into_iter().collect();
            if next.len() == current.len() {
                return false;
            }
            current = next;
        }
    })
}

/// Verdicts for FO(<), FO(<,≡), FO(<,MOD) from the reference code above,
/// computed on the minimal DFA.
pub fn brute_verdicts(d: &Dfa) -> [bool; 3] {
    let minimal = d.minimize();
    let m = brute_monoid(&minimal);
    [brute_aperiodic(&m), brute_quasi_aperiodic(&minimal), brute_groups_solvable(&m)]
}

/// Words of length at most `max_len` accepted by all automata.
pub fn brute_intersection(automata: &[Dfa], max_len: usize) -> Vec<Word> {
    let k = automata[0].alphabet().len();
    all_words(k, max_len).into_iter().filter(|w| automata.iter().all(|a| a.run(w).unwrap())).collect()
}
