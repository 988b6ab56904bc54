use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::machine::{Cell, Slot, TuringMachine};
use crate::automata::{Alphabet, Dfa, State, Symbol};
use crate::error::Result;

/// Breadth-first construction of a partial DFA from a step function, then
/// trash completion and minimization.
fn explore<S, F>(alphabet: &Alphabet, start: S, step: F, is_final: impl Fn(&S) -> bool) -> Result<Dfa>
where
    S: Clone + Eq + std::hash::Hash,
    F: Fn(&S, Symbol) -> Option<S>,
{
    let mut ids: FxHashMap<S, State> = FxHashMap::default();
    let mut states = vec![start.clone()];
    ids.insert(start, 0);
    let mut table: Vec<Vec<Option<State>>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(alphabet.len());
        for c in 0..alphabet.len() {
            row.push(step(&states[i], c).map(|next| {
                *ids.entry(next.clone()).or_insert_with(|| {
                    states.push(next);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                })
            }));
        }
        if table.len() <= i {
            table.resize(i + 1, Vec::new());
        }
        table[i] = row;
    }
    let finals: Vec<State> = (0..states.len()).filter(|&i| is_final(&states[i])).collect();
    Ok(Dfa::complete(alphabet.clone(), table, 0, finals)?.minimize())
}

/// Checks the first and last configurations.
pub(crate) fn boundary_checker(tm: &TuringMachine, input: &[usize], n: usize) -> Result<Dfa> {
    let first = tm.initial_config(input, n)?;
    let (sharp, flat) = (tm.sharp(), tm.flat());
    let halt_head = tm.cell_symbol(Cell::Head(tm.accept(), tm.blank()));
    let blank = tm.cell_symbol(Cell::Tape(tm.blank()));

    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        Start,
        // read `i` cells of the first configuration
        First(usize),
        // at the start of a later configuration
        Open,
        // read `i` cells of a candidate last configuration
        Last(usize),
        // inside a configuration that is not last
        Middle,
        Done,
    }
    let step = |s: &S, c: Symbol| -> Option<S> {
        let cell = c < sharp;
        match s {
            S::Start => (c == sharp).then_some(S::First(0)),
            S::First(i) if *i < n => (c == tm.cell_symbol(first[*i])).then_some(S::First(i + 1)),
            S::First(_) => (c == sharp).then_some(S::Open),
            S::Open if c == halt_head => Some(S::Last(1)),
            S::Open | S::Middle if cell => Some(S::Middle),
            S::Middle if c == sharp => Some(S::Open),
            S::Last(i) if *i < n => (c == blank).then_some(S::Last(i + 1)),
            S::Last(_) => (c == flat).then_some(S::Done),
            _ => None,
        }
    };
    explore(&tm.sigma()?, S::Start, step, |s| *s == S::Done)
}

/// Checks that cell `i` (1-based) of each configuration follows from the
/// window around cell `i` of the previous one. The missing neighbour at
/// either end of the tape is the separator.
pub(crate) fn cell_checker(tm: &TuringMachine, i: usize, n: usize) -> Result<Dfa> {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Next {
        Pending,
        Cell(Cell),
        Halt,
    }
    #[derive(Clone, PartialEq, Eq, Hash)]
    enum S {
        Start,
        // `pos` is the 1-based index of the next cell; `n + 1` is the separator
        Reading { pos: usize, expect: Option<Cell>, window: Vec<Slot>, next: Next },
        Done,
    }
    let (sharp, flat) = (tm.sharp(), tm.flat());
    let fresh = |expect| S::Reading {
        pos: 1,
        expect,
        window: if i == 1 { vec![Slot::Sep] } else { Vec::new() },
        next: Next::Pending,
    };
    let resolve = |window: &[Slot]| {
        let w: [Slot; 3] = window.try_into().expect("window has three slots");
        tm.next_cell(w).map_or(Next::Halt, Next::Cell)
    };
    let step = |s: &S, c: Symbol| -> Option<S> {
        match s {
            S::Start => (c == sharp).then(|| fresh(None)),
            S::Reading { pos, expect, window, next } if *pos <= n => {
                let cell = tm.cell_of_symbol(c)?;
                let mut expect = *expect;
                if *pos == i {
                    if expect.is_some_and(|e| e != cell) {
                        return None;
                    }
                    expect = None;
                }
                let mut window = window.clone();
                let mut next = *next;
                if *pos + 1 >= i && *pos <= i + 1 {
                    window.push(Slot::Cell(cell));
                }
                if *pos == i + 1 {
                    next = resolve(&window);
                    window.clear();
                }
                Some(S::Reading { pos: pos + 1, expect, window, next })
            }
            S::Reading { window, next, .. } => {
                if c == flat {
                    return Some(S::Done);
                }
                if c != sharp {
                    return None;
                }
                let next = if i == n {
                    let mut w = window.clone();
                    w.push(Slot::Sep);
                    resolve(&w)
                } else {
                    *next
                };
                match next {
                    Next::Cell(z) => Some(fresh(Some(z))),
                    _ => None,
                }
            }
            S::Done => None,
        }
    };
    explore(&tm.sigma()?, S::Start, step, |s| *s == S::Done)
}

/// Words with exactly one `♭`, as the last letter.
pub(crate) fn single_flat_checker(sigma: &Alphabet, flat: Symbol) -> Result<Dfa> {
    let k = sigma.len();
    let start: Vec<Option<State>> = (0..k).map(|c| Some(if c == flat { 1 } else { 0 })).collect();
    Dfa::complete(sigma.clone(), vec![start, vec![None; k]], 0, [1])
}
