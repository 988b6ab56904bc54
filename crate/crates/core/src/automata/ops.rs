use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::{Dfa, State, Word};
use crate::error::{Error, Result};

fn check_family(automata: &[Dfa]) -> Result<&Dfa> {
    let Some(first) = automata.first() else {
        return Err(Error::Invalid("intersection of an empty family".into()));
    };
    if automata.iter().any(|a| a.alphabet() != first.alphabet()) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(first)
}

/// A shortest word accepted by every automaton, if one exists.
///
/// Breadth-first search over the product, explored lazily from the tuple of
/// initial states. Tuples with a component that can no longer reach a final
/// state are pruned.
pub fn intersect_nonempty(automata: &[Dfa]) -> Result<Option<Word>> {
    let k = check_family(automata)?.alphabet().len();
    let live: Vec<Vec<bool>> = automata.iter().map(Dfa::coreachable_states).collect();
    let alive = |t: &[State]| t.iter().zip(&live).all(|(&q, l)| l[q]);
    let accepting = |t: &[State]| t.iter().zip(automata).all(|(&q, a)| a.is_final(q));

    let start: Vec<State> = automata.iter().map(Dfa::initial).collect();
    if !alive(&start) {
        return Ok(None);
    }
    // parent pointers: tuple id -> (parent id, symbol)
    let mut tuples: Vec<Vec<State>> = vec![start.clone()];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None];
    let mut index: FxHashMap<Vec<State>, usize> = FxHashMap::default();
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        if accepting(&tuples[id]) {
            let mut word = Vec::new();
            let mut cur = id;
            while let Some((p, c)) = parent[cur] {
                word.push(c);
                cur = p;
            }
            word.reverse();
            return Ok(Some(Word(word)));
        }
        for c in 0..k {
            let next: Vec<State> = tuples[id].iter().zip(automata).map(|(&q, a)| a.step(q, c)).collect();
            if !alive(&next) || index.contains_key(&next) {
                continue;
            }
            let nid = tuples.len();
            index.insert(next.clone(), nid);
            tuples.push(next);
            parent.push(Some((id, c)));
            queue.push_back(nid);
        }
    }
    Ok(None)
}

/// Number of words in a regular language, saturating at `u128::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LanguageSize {
    Finite(u128),
    Infinite,
}

/// Counts the words accepted by every automaton. The product is explored
/// from the initial tuple and trimmed to tuples that can still accept; the
/// language is infinite iff the trimmed product has a cycle, otherwise words
/// correspond to paths.
pub fn intersection_size(automata: &[Dfa]) -> Result<LanguageSize> {
    let k = check_family(automata)?.alphabet().len();
    let accepting = |t: &[State]| t.iter().zip(automata).all(|(&q, a)| a.is_final(q));

    let start: Vec<State> = automata.iter().map(Dfa::initial).collect();
    let mut tuples = vec![start.clone()];
    let mut index: FxHashMap<Vec<State>, usize> = FxHashMap::default();
    index.insert(start, 0);
    let mut succ: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < tuples.len() {
        let mut out = Vec::with_capacity(k);
        for c in 0..k {
            let next: Vec<State> = tuples[i].iter().zip(automata).map(|(&q, a)| a.step(q, c)).collect();
            let id = *index.entry(next.clone()).or_insert_with(|| {
                tuples.push(next);
                tuples.len() - 1
            });
            out.push(id);
        }
        succ.push(out);
        i += 1;
    }

    let n = tuples.len();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, out) in succ.iter().enumerate() {
        for &y in out {
            pred[y].push(x);
        }
    }
    let mut useful: Vec<bool> = tuples.iter().map(|t| accepting(t)).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&x| useful[x]).collect();
    while let Some(y) = stack.pop() {
        for &x in &pred[y] {
            if !useful[x] {
                useful[x] = true;
                stack.push(x);
            }
        }
    }
    if !useful[0] {
        return Ok(LanguageSize::Finite(0));
    }

    // Kahn's algorithm on the trimmed product; every tuple is reachable
    let mut indegree = vec![0usize; n];
    for x in (0..n).filter(|&x| useful[x]) {
        for &y in succ[x].iter().filter(|&&y| useful[y]) {
            indegree[y] += 1;
        }
    }
    let mut order = Vec::new();
    let mut ready: Vec<usize> = (0..n).filter(|&x| useful[x] && indegree[x] == 0).collect();
    while let Some(x) = ready.pop() {
        order.push(x);
        for &y in succ[x].iter().filter(|&&y| useful[y]) {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(y);
            }
        }
    }
    if order.len() < useful.iter().filter(|&&u| u).count() {
        return Ok(LanguageSize::Infinite);
    }
    let mut paths = vec![0u128; n];
    paths[0] = 1;
    let mut total = 0u128;
    for &x in &order {
        if accepting(&tuples[x]) {
            total = total.saturating_add(paths[x]);
        }
        for &y in succ[x].iter().filter(|&&y| useful[y]) {
            paths[y] = paths[y].saturating_add(paths[x]);
        }
    }
    Ok(LanguageSize::Finite(total))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{words_up_to, Alphabet, Dfa, Word};
    use super::*;

    #[test]
    fn even_and_triple_meet_at_epsilon() {
        assert_eq!(intersect_nonempty(&[even_a(), triple_a()]).unwrap(), Some(Word::empty()));
    }

    #[test]
    fn odd_and_triple_meet_at_three() {
        let w = intersect_nonempty(&[odd_a(), triple_a()]).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        for word in words_up_to(1, 2) {
            assert!(!(odd_a().run(&word).unwrap() && triple_a().run(&word).unwrap()));
        }
    }

    #[test]
    fn even_and_odd_are_disjoint() {
        assert_eq!(intersect_nonempty(&[even_a(), odd_a()]).unwrap(), None);
    }

    #[test]
    fn single_automaton_accepting_epsilon() {
        assert_eq!(intersect_nonempty(&[even_a()]).unwrap(), Some(Word::empty()));
    }

    #[test]
    fn intersection_sizes() {
        assert_eq!(intersection_size(&[even_a(), odd_a()]).unwrap(), LanguageSize::Finite(0));
        assert_eq!(intersection_size(&[even_a(), triple_a()]).unwrap(), LanguageSize::Infinite);
        // words over {a} of length at most 2: ε, a, aa
        let short =
            Dfa::new(Alphabet::new(["a"]).unwrap(), vec![vec![1], vec![2], vec![3], vec![3]], 0, [0, 1, 2]).unwrap();
        assert_eq!(intersection_size(std::slice::from_ref(&short)).unwrap(), LanguageSize::Finite(3));
        assert_eq!(intersection_size(&[short, odd_a()]).unwrap(), LanguageSize::Finite(1));
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let other = Dfa::new(Alphabet::new(["b"]).unwrap(), vec![vec![0]], 0, [0]).unwrap();
        assert_eq!(intersect_nonempty(&[even_a(), other]), Err(Error::AlphabetMismatch));
    }
}
