//! Behaviour quadruples of two-way automata and the DFA they induce.
//!
//! For a word `w`, `b(w) = (b_lr, b_rl, b_rr, b_ll)` records how the head
//! can enter `w` at one border and leave it at the other:
//!
//! * `b_lr`: from the first letter to one past the last letter;
//! * `b_rr`: from the last letter to one past the last letter;
//! * `b_rl`: from the last letter to the cell left of `w`;
//! * `b_ll`: from the first letter to the cell left of `w`.
//!
//! Runs that leave `w` on the left are cut at the first such step. The
//! behaviour of the empty word is the neutral element of composition.

mod relation;

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::automata::{Dfa, State, Symbol, TwoNfa, Word};
use crate::definability::{classify, ClassificationReport};
use crate::error::{Error, Result};

pub use relation::{Relation, MAX_STATES};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BehaviorQuad {
    pub lr: Relation,
    pub rl: Relation,
    pub rr: Relation,
    pub ll: Relation,
    /// Set only for the behaviour of the empty word.
    neutral: bool,
}

impl BehaviorQuad {
    /// The behaviour of ε: all four relations are the identity, and the
    /// quad acts as the unit of [`compose`].
    pub fn empty_word(n: usize) -> Self {
        let id = Relation::identity(n);
        BehaviorQuad { lr: id.clone(), rl: id.clone(), rr: id.clone(), ll: id, neutral: true }
    }

    pub fn is_empty_word(&self) -> bool {
        self.neutral
    }

    pub fn from_relations(lr: Relation, rl: Relation, rr: Relation, ll: Relation) -> Self {
        BehaviorQuad { lr, rl, rr, ll, neutral: false }
    }
}

fn check_size(a: &TwoNfa) -> Result<()> {
    if a.state_count() > MAX_STATES {
        return Err(Error::Invalid(format!(
            "behaviour relations support at most {MAX_STATES} states, automaton has {}",
            a.state_count()
        )));
    }
    Ok(())
}

/// States reachable at `target` from `(q, start)` on `word`; configurations
/// at position 0 are final when `stop_at_zero` is set.
fn exits(a: &TwoNfa, word: &[Symbol], q: State, start: usize, target: usize, stop_at_zero: bool) -> u64 {
    let n = a.state_count();
    let len = word.len();
    let mut seen = vec![false; n * (len + 1)];
    let mut queue = VecDeque::from([(q, start)]);
    seen[start * n + q] = true;
    let mut out = 0u64;
    while let Some((p, pos)) = queue.pop_front() {
        if pos == target {
            out |= 1 << p;
        }
        if pos == len || (stop_at_zero && pos == 0) {
            continue;
        }
        for &(t, d) in a.moves(p, word[pos]) {
            let np = pos as isize + d.offset();
            if np < 0 {
                continue;
            }
            let np = np as usize;
            if !std::mem::replace(&mut seen[np * n + t], true) {
                queue.push_back((t, np));
            }
        }
    }
    out
}

fn relation_of(n: usize, row: impl Fn(State) -> u64) -> Relation {
    let mut r = Relation::empty(n);
    for q in 0..n {
        let bits = row(q);
        for j in (0..n).filter(|&j| bits >> j & 1 == 1) {
            r.insert(q, j);
        }
    }
    r
}

/// The quad of a single letter, by search over configurations. `b_rl` and
/// `b_ll` are computed on `x c` for every padding letter `x` and must agree.
pub fn behavior_of_symbol(a: &TwoNfa, c: Symbol) -> Result<BehaviorQuad> {
    check_size(a)?;
    let n = a.state_count();
    let lr = relation_of(n, |q| exits(a, &[c], q, 0, 1, false));
    // on a single letter the first and the last letter coincide
    let rr = lr.clone();
    let mut left: Option<Relation> = None;
    for x in 0..a.alphabet().len() {
        let rl = relation_of(n, |q| exits(a, &[x, c], q, 1, 0, true));
        match &left {
            None => left = Some(rl),
            Some(prev) if *prev != rl => {
                return Err(Error::Internal(format!(
                    "right-to-left behaviour on `{}` depends on the padding letter",
                    a.alphabet().name(c)
                )))
            }
            Some(_) => {}
        }
    }
    let rl = left.expect("alphabet is nonempty");
    let ll = rl.clone();
    Ok(BehaviorQuad::from_relations(lr, rl, rr, ll))
}

/// `b(w) · b(w′) = b(ww′)`.
///
/// With `X = (b′_ll ∘ b_rr)*` and `Y = (b_rr ∘ b′_ll)*` (reflexive-transitive):
/// `b″_lr = b_lr X b′_lr`, `b″_rl = b′_rl Y b_rl`,
/// `b″_rr = b′_rr ∪ b′_rl Y b_rr b′_lr`, `b″_ll = b_ll ∪ b_lr X b′_ll b_rl`.
pub fn compose(b: &BehaviorQuad, b2: &BehaviorQuad) -> BehaviorQuad {
    if b.neutral {
        return b2.clone();
    }
    if b2.neutral {
        return b.clone();
    }
    let x = b2.ll.then(&b.rr).star();
    let y = b.rr.then(&b2.ll).star();
    let lr = b.lr.then(&x).then(&b2.lr);
    let rl = b2.rl.then(&y).then(&b.rl);
    let rr = b2.rr.union(&b2.rl.then(&y).then(&b.rr).then(&b2.lr));
    let ll = b.ll.union(&b.lr.then(&x).then(&b2.ll).then(&b.rl));
    BehaviorQuad::from_relations(lr, rl, rr, ll)
}

pub fn behavior_of_word(a: &TwoNfa, w: &Word) -> Result<BehaviorQuad> {
    check_size(a)?;
    let letters = (0..a.alphabet().len()).map(|c| behavior_of_symbol(a, c)).collect::<Result<Vec<_>>>()?;
    Ok(fold_word(a.state_count(), &letters, w))
}

fn fold_word(n: usize, letters: &[BehaviorQuad], w: &Word) -> BehaviorQuad {
    w.symbols().iter().fold(BehaviorQuad::empty_word(n), |acc, &c| compose(&acc, &letters[c]))
}

/// A state of the induced DFA: `B_lr ⊆ Q_0 × Q` relates initial states to
/// the states in which the head can leave the prefix read so far, and
/// `B_rr` is the right-to-right behaviour of that prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DfaPrimeState {
    pub lr: Relation,
    pub rr: Relation,
}

impl DfaPrimeState {
    pub fn initial(a: &TwoNfa) -> Self {
        let n = a.state_count();
        DfaPrimeState { lr: Relation::from_pairs(n, a.initials().iter().map(|&q| (q, q))), rr: Relation::empty(n) }
    }

    pub fn is_final(&self, a: &TwoNfa) -> bool {
        a.initials().iter().any(|&q0| (0..a.state_count()).any(|q| a.is_final(q) && self.lr.contains(q0, q)))
    }
}

/// The state reached from `state` by a word whose behaviour is `b`:
/// `B′_lr = B_lr X b_lr` and `B′_rr = b_rr ∪ b_rl Y B_rr b_lr`, where
/// `X = (b_ll ∘ B_rr)*` and `Y = (B_rr ∘ b_ll)*`.
pub fn quad_reach(state: &DfaPrimeState, b: &BehaviorQuad) -> DfaPrimeState {
    if b.neutral {
        return state.clone();
    }
    let x = b.ll.then(&state.rr).star();
    let y = state.rr.then(&b.ll).star();
    DfaPrimeState { lr: state.lr.then(&x).then(&b.lr), rr: b.rr.union(&b.rl.then(&y).then(&state.rr).then(&b.lr)) }
}

/// Materializes the reachable part of the induced DFA, breadth first.
pub fn determinize(a: &TwoNfa, cap: usize) -> Result<Dfa> {
    check_size(a)?;
    let k = a.alphabet().len();
    let letters = (0..k).map(|c| behavior_of_symbol(a, c)).collect::<Result<Vec<_>>>()?;
    let start = DfaPrimeState::initial(a);
    let mut index: FxHashMap<DfaPrimeState, usize> = FxHashMap::default();
    index.insert(start.clone(), 0);
    let mut states = vec![start];
    let mut delta: Vec<Vec<State>> = Vec::new();
    let mut i = 0;
    while i < states.len() {
        let mut row = Vec::with_capacity(k);
        for b in &letters {
            let next = quad_reach(&states[i], b);
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= cap {
                        return Err(Error::SizeLimit { what: "2NFA determinization", limit: cap });
                    }
                    index.insert(next.clone(), states.len());
                    states.push(next);
                    states.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals: Vec<State> = (0..states.len()).filter(|&s| states[s].is_final(a)).collect();
    Dfa::new(a.alphabet().clone(), delta, 0, finals)
}

#[derive(Debug, Clone)]
pub struct TwoNfaReport {
    /// Reachable states of the induced DFA before minimization.
    pub prime_states: usize,
    pub report: ClassificationReport,
}

/// Classifies `L(a)` through its induced DFA.
pub fn classify_two_nfa(a: &TwoNfa, cap: usize) -> Result<TwoNfaReport> {
    let dfa = determinize(a, cap)?;
    let report = classify(&dfa.minimize(), cap)?;
    Ok(TwoNfaReport { prime_states: dfa.state_count(), report })
}
