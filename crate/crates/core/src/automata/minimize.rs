use rustc_hash::FxHashMap;

use super::{Dfa, State};

/// Partition of the reachable states into classes of the Nerode
/// equivalence. Unreachable states carry no block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatePartition {
    block: Vec<Option<usize>>,
    block_count: usize,
}

impl StatePartition {
    pub fn block_of(&self, q: State) -> Option<usize> {
        self.block[q]
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    /// Members of each block, in increasing state order.
    pub fn blocks(&self) -> Vec<Vec<State>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (q, b) in self.block.iter().enumerate() {
            if let Some(b) = b {
                out[*b].push(q);
            }
        }
        out
    }
}

impl Dfa {
    /// Moore refinement from the final/non-final split until the partition is
    /// stable. Blocks are numbered by their smallest member.
    pub fn state_equivalence(&self) -> StatePartition {
        let n = self.state_count();
        let k = self.alphabet().len();
        let mut reachable = self.reachable_states();
        reachable.sort_unstable();

        let mut class: Vec<usize> = vec![usize::MAX; n];
        for &q in &reachable {
            class[q] = usize::from(self.is_final(q));
        }
        let mut count = renumber(&reachable, &mut class);

        loop {
            let mut signatures: FxHashMap<Vec<usize>, usize> = FxHashMap::default();
            let mut next = vec![usize::MAX; n];
            for &q in &reachable {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|c| class[self.step(q, c)]));
                let fresh = signatures.len();
                next[q] = *signatures.entry(sig).or_insert(fresh);
            }
            let new_count = renumber(&reachable, &mut next);
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        let block = (0..n).map(|q| (class[q] != usize::MAX).then_some(class[q])).collect();
        StatePartition { block, block_count: count }
    }

    /// The quotient of the reachable part by state equivalence.
    pub fn minimize(&self) -> Dfa {
        let part = self.state_equivalence();
        let k = self.alphabet().len();
        let blocks = part.blocks();
        let delta = blocks
            .iter()
            .map(|members| {
                let rep = members[0];
                (0..k).map(|c| part.block_of(self.step(rep, c)).expect("successor of reachable")).collect()
            })
            .collect();
        let finals: Vec<State> =
            blocks.iter().enumerate().filter(|(_, m)| self.is_final(m[0])).map(|(b, _)| b).collect();
        let initial = part.block_of(self.initial()).expect("initial state is reachable");
        Dfa::new(self.alphabet().clone(), delta, initial, finals).expect("quotient is a valid DFA")
    }

    pub fn is_minimal(&self) -> bool {
        let part = self.state_equivalence();
        part.block_count() == self.state_count()
    }
}

/// Renumbers class ids densely so that blocks are ordered by smallest member;
/// `states` must be sorted. Returns the number of classes.
fn renumber(states: &[State], class: &mut [usize]) -> usize {
    let mut map: FxHashMap<usize, usize> = FxHashMap::default();
    for &q in states {
        let fresh = map.len();
        class[q] = *map.entry(class[q]).or_insert(fresh);
    }
    map.len()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{words_up_to, Alphabet, Dfa};

    #[test]
    fn even_a_is_two_singletons() {
        let p = even_a().state_equivalence();
        assert_eq!(p.blocks(), vec![vec![0], vec![1]]);
    }

    #[test]
    fn duplicate_final_sinks_merge() {
        // 0 -a-> 1, 0 -b-> 2, 1 and 2 are accepting sinks.
        let d = Dfa::new(ab(), vec![vec![1, 2], vec![1, 1], vec![2, 2]], 0, [1, 2]).unwrap();
        let p = d.state_equivalence();
        assert_eq!(p.block_of(1), p.block_of(2));
        assert_eq!(p.block_count(), 2);
    }

    #[test]
    fn minimize_is_idempotent_on_minimal() {
        let d = even_a();
        assert!(d.is_minimal());
        assert!(d.minimize().is_isomorphic(&d));
    }

    #[test]
    fn padded_even_a_minimizes_to_two_states() {
        // 0 -> 1 -> 2 -> 1 where 2 duplicates 0's role: states 0 and 2 are
        // both "even", 1 is "odd". Block refinement by hand: {0,2} | {1}.
        let d = Dfa::new(unary(), vec![vec![1], vec![2], vec![1]], 0, [0, 2]).unwrap();
        let p = d.state_equivalence();
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1]]);
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        assert!(m.is_isomorphic(&even_a()));
    }

    #[test]
    fn all_equivalent_accepting_collapses_to_one_state() {
        let d = Dfa::new(ab(), vec![vec![1, 2], vec![2, 0], vec![0, 1]], 0, [0, 1, 2]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 1);
        assert!(m.is_final(0));
    }

    #[test]
    fn minimize_preserves_language() {
        let alphabet = Alphabet::new(["a", "b"]).unwrap();
        let d = Dfa::new(alphabet, vec![vec![1, 2], vec![3, 0], vec![3, 0], vec![3, 3], vec![0, 0]], 0, [3]).unwrap();
        let m = d.minimize();
        assert!(m.state_count() < d.state_count());
        for word in words_up_to(2, 8) {
            assert_eq!(d.run(&word).unwrap(), m.run(&word).unwrap());
        }
    }
}
