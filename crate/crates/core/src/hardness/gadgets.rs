use std::fmt;

use super::machine::{A1, A2, NATURAL};
use crate::automata::{Alphabet, Dfa, State};
use crate::error::{Error, Result};
use crate::monoid::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetVariant {
    Lt,
    Eq,
    Mod,
}

impl GadgetVariant {
    pub const ALL: [GadgetVariant; 3] = [GadgetVariant::Lt, GadgetVariant::Eq, GadgetVariant::Mod];
}

impl fmt::Display for GadgetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GadgetVariant::Lt => "lt",
            GadgetVariant::Eq => "eq",
            GadgetVariant::Mod => "mod",
        })
    }
}

/// Prime, greater than 5, and not congruent to ±1 mod 10.
pub fn is_gadget_prime(p: usize) -> bool {
    p > 5 && is_prime(p) && p % 10 != 1 && p % 10 != 9
}

/// The smallest gadget prime `p ≥ n + 2`.
pub fn find_prime(n: usize) -> usize {
    (n + 2..).find(|&p| is_gadget_prime(p)).expect("gadget primes are unbounded")
}

/// `s_0 … s_{p-1}` rotated by `a`, with `s_0` initial and final. The `Eq`
/// variant adds `♮` as the identity; `Mod` adds `s_p`, fixed by `a`, and
/// lets `♮` act as `i ↦ -1/i` on the projective line.
pub fn build_cycle_gadget(p: usize, variant: GadgetVariant) -> Result<Dfa> {
    if !is_gadget_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    let rotate = |i: usize| (i + 1) % p;
    let table: Vec<Vec<State>> = match variant {
        GadgetVariant::Lt => (0..p).map(|i| vec![rotate(i)]).collect(),
        GadgetVariant::Eq => (0..p).map(|i| vec![rotate(i), i]).collect(),
        GadgetVariant::Mod => (0..=p)
            .map(|i| match i {
                0 => vec![1, p],
                i if i == p => vec![p, 0],
                i => {
                    let j = (1..p).find(|j| i * j % p == p - 1).expect("F_p is a field");
                    vec![rotate(i), j]
                }
            })
            .collect(),
    };
    let names: &[&str] = if variant == GadgetVariant::Lt { &["a"] } else { &["a", NATURAL] };
    Dfa::new(Alphabet::new(names.iter().copied())?, table, 0, [0])
}

/// Replaces every `a`-edge `s_i → s_j` between live gadget states by
/// `s_i →a1 A_i →a2 s_j`, where `A_i = checkers[i]` and `a2` leaves from its
/// final states. `♮`-edges are kept; everything else goes to one trash state.
/// The result is over the checker alphabet followed by `a1`, `a2`, `♮`.
pub fn substitute(gadget: &Dfa, checkers: &[Dfa]) -> Result<Dfa> {
    let ga = gadget.alphabet();
    let a = ga.index_of("a").ok_or_else(|| Error::Invalid("gadget has no `a` symbol".into()))?;
    let natural = ga.index_of(NATURAL);
    if let Some(c) = (0..ga.len()).find(|&c| c != a && Some(c) != natural) {
        return Err(Error::Invalid(format!("unexpected gadget symbol `{}`", ga.name(c))));
    }
    let live = live_states(gadget);
    let sources: Vec<State> = (0..gadget.state_count()).filter(|&s| live[s] && live[gadget.step(s, a)]).collect();
    if sources != (0..sources.len()).collect::<Vec<_>>() || sources.len() != checkers.len() {
        return Err(Error::IndexMismatch { edges: sources.len(), checkers: checkers.len() });
    }
    let sigma = checkers[0].alphabet();
    if checkers.iter().any(|c| c.alphabet() != sigma) {
        return Err(Error::AlphabetMismatch);
    }
    let mut names = sigma.symbols().to_vec();
    names.extend([A1, A2, NATURAL].map(String::from));
    let plus = Alphabet::new(names)?;
    let (k, a1, a2, nat) = (sigma.len(), sigma.len(), sigma.len() + 1, sigma.len() + 2);

    let g = gadget.state_count();
    let mut table: Vec<Vec<Option<State>>> = vec![vec![None; plus.len()]; g];
    let mut offset = g;
    for (i, checker) in checkers.iter().enumerate() {
        let useful = live_states(checker);
        // renumber the useful states of this copy
        let mut local = vec![None; checker.state_count()];
        for q in (0..checker.state_count()).filter(|&q| useful[q]) {
            local[q] = Some(offset);
            offset += 1;
        }
        table[i][a1] = local[checker.initial()];
        let target = gadget.step(i, a);
        for q in (0..checker.state_count()).filter(|&q| useful[q]) {
            let mut row = vec![None; plus.len()];
            for (c, slot) in row.iter_mut().enumerate().take(k) {
                *slot = local[checker.step(q, c)];
            }
            if checker.is_final(q) {
                row[a2] = Some(target);
            }
            table.push(row);
        }
    }
    for s in (0..g).filter(|&s| live[s]) {
        if let Some(n) = natural {
            let t = gadget.step(s, n);
            table[s][nat] = live[t].then_some(t);
        }
    }
    let finals: Vec<State> = gadget.finals().collect();
    Dfa::complete(plus, table, gadget.initial(), finals)
}

/// States that are reachable and can reach a final state.
fn live_states(a: &Dfa) -> Vec<bool> {
    let co = a.coreachable_states();
    let mut live = vec![false; a.state_count()];
    for q in a.reachable_states() {
        live[q] = co[q];
    }
    live
}
