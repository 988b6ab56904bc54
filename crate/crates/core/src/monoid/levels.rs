use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use super::{power_sequence, syntactic_monoid, ElemId, TransitionMonoid};
use crate::automata::Dfa;
use crate::error::{Error, Result};

/// The images `T_t` of all words of length `t`, for `t` up to the first
/// repetition `T_c = T_{c+λ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    levels: Vec<FixedBitSet>,
    preperiod: usize,
    period: usize,
}

impl LevelSets {
    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// The pairwise distinct sets `T_0, …, T_{c+λ−1}`.
    pub fn distinct(&self) -> &[FixedBitSet] {
        &self.levels
    }

    /// `T_t` for any `t`, folded back into the stored range.
    pub fn level(&self, t: usize) -> &FixedBitSet {
        let t = if t < self.levels.len() { t } else { self.preperiod + (t - self.preperiod) % self.period };
        &self.levels[t]
    }
}

/// Iterates `T_{t+1} = T_t · Σ` until a set repeats. At most `cap` distinct
/// levels are stored.
pub fn level_sets(m: &TransitionMonoid, cap: usize) -> Result<LevelSets> {
    let k = m.alphabet().len();
    let mut first = FixedBitSet::with_capacity(m.len());
    first.insert(m.identity());
    let mut seen: FxHashMap<FixedBitSet, usize> = FxHashMap::default();
    let mut levels = Vec::new();
    let mut cur = first;
    loop {
        if let Some(&c) = seen.get(&cur) {
            let period = levels.len() - c;
            return Ok(LevelSets { levels, preperiod: c, period });
        }
        if levels.len() >= cap {
            return Err(Error::SizeLimit { what: "level sets", limit: cap });
        }
        let mut next = FixedBitSet::with_capacity(m.len());
        for s in cur.ones() {
            for c in 0..k {
                next.insert(m.right_mul(s, c));
            }
        }
        seen.insert(cur.clone(), levels.len());
        levels.push(cur);
        cur = next;
    }
}

/// Some element of `set` all of whose powers stay in `set` and whose cyclic
/// group is nontrivial. Such an element exists iff `set` contains a
/// nontrivial group.
pub fn set_contains_nontrivial_group(m: &TransitionMonoid, set: &FixedBitSet) -> Option<ElemId> {
    set.ones().find(|&s| {
        let (powers, _, period) = power_sequence(m, s);
        period > 1 && powers.iter().all(|&x| set.contains(x))
    })
}

/// No level set of the syntactic morphism contains a nontrivial group.
pub fn is_quasi_aperiodic(a: &Dfa, cap: usize) -> Result<bool> {
    let m = syntactic_monoid(a, cap)?;
    let levels = level_sets(&m, cap)?;
    Ok(levels.distinct().iter().all(|t| set_contains_nontrivial_group(&m, t).is_none()))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::rotation;
    use super::super::{generate_transition_monoid, DEFAULT_CAP};
    use super::*;
    use crate::automata::Alphabet;

    fn bits(m: &TransitionMonoid, ids: &[ElemId]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(m.len());
        for &i in ids {
            b.insert(i);
        }
        b
    }

    /// {a, ♮}: a rotates, ♮ is the identity.
    fn rotation_with_neutral(p: usize) -> Dfa {
        Dfa::new(Alphabet::new(["a", "n"]).unwrap(), (0..p).map(|i| vec![(i + 1) % p, i]).collect(), 0, [0]).unwrap()
    }

    fn even_count_a() -> Dfa {
        Dfa::new(Alphabet::new(["a", "b"]).unwrap(), vec![vec![1, 0], vec![0, 1]], 0, [0]).unwrap()
    }

    #[test]
    fn rotation_levels_are_singletons_with_period_seven() {
        let m = generate_transition_monoid(&rotation(7), DEFAULT_CAP).unwrap();
        let l = level_sets(&m, DEFAULT_CAP).unwrap();
        assert_eq!((l.preperiod(), l.period()), (0, 7));
        for t in 0..20 {
            assert_eq!(l.level(t).count_ones(..), 1);
            assert!(l.level(t).contains(m.pow(m.generator(0), t)));
        }
    }

    #[test]
    fn neutral_letter_levels_grow_to_everything() {
        let m = generate_transition_monoid(&rotation_with_neutral(7), DEFAULT_CAP).unwrap();
        let l = level_sets(&m, DEFAULT_CAP).unwrap();
        assert_eq!(l.level(1).count_ones(..), 2);
        for t in 0..l.distinct().len() {
            assert_eq!(l.level(t).count_ones(..), (t + 1).min(7));
        }
        assert_eq!(l.period(), 1);
        assert_eq!(l.level(100).count_ones(..), 7);
    }

    #[test]
    fn trivial_monoid_levels() {
        let m = generate_transition_monoid(&rotation(1), DEFAULT_CAP).unwrap();
        let l = level_sets(&m, DEFAULT_CAP).unwrap();
        assert_eq!(l.distinct().len(), 1);
        assert_eq!((l.preperiod(), l.period()), (0, 1));
    }

    #[test]
    fn group_in_set() {
        let m = generate_transition_monoid(&rotation(2), DEFAULT_CAP).unwrap();
        let swap = m.generator(0);
        assert_eq!(set_contains_nontrivial_group(&m, &bits(&m, &[swap])), None);
        assert_eq!(set_contains_nontrivial_group(&m, &bits(&m, &[swap, m.identity()])), Some(swap));
        assert_eq!(set_contains_nontrivial_group(&m, &bits(&m, &[m.identity()])), None);
    }

    #[test]
    fn quasi_aperiodicity() {
        assert!(is_quasi_aperiodic(&rotation(2), DEFAULT_CAP).unwrap());
        assert!(!is_quasi_aperiodic(&even_count_a(), DEFAULT_CAP).unwrap());
        assert!(!is_quasi_aperiodic(&rotation_with_neutral(7), DEFAULT_CAP).unwrap());
        let contains_ab =
            Dfa::new(Alphabet::new(["a", "b"]).unwrap(), vec![vec![1, 0], vec![1, 2], vec![2, 2]], 0, [2]).unwrap();
        assert!(is_quasi_aperiodic(&contains_ab, DEFAULT_CAP).unwrap());
    }
}
