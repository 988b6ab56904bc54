//! Finite automata over a named alphabet: DFAs, NFAs and two-way NFAs.
//!
//! States are dense `usize` indices starting at 0 and letters are indices
//! into an [`Alphabet`]. All automata are immutable once built; the
//! constructors validate every structural invariant.

mod minimize;
mod ops;
mod text;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

pub use minimize::StatePartition;
pub use ops::{intersect_nonempty, intersection_size, LanguageSize};
pub use text::{emit_automaton, parse_automaton, ParseOptions};

pub type State = usize;
pub type Symbol = usize;

/// An ordered list of distinct, nonempty symbol names without whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::Invalid("alphabet is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::Invalid(format!("bad symbol name `{s}`")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::Invalid(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.symbols[sym]
    }

    pub fn index_of(&self, name: &str) -> Option<Symbol> {
        self.symbols.iter().position(|s| s == name)
    }

    /// Parses a word given as whitespace-separated symbol names, or as a plain
    /// string of characters when every symbol name is a single character.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.single_chars() {
            text.split_whitespace().map(str::to_owned).collect()
        } else {
            text.chars().map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| self.index_of(t).ok_or_else(|| Error::Invalid(format!("unknown symbol `{t}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Renders a word: concatenated when all symbol names are single
    /// characters, dot-separated otherwise, `ε` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_owned();
        }
        let sep = if self.single_chars() { "" } else { "." };
        w.0.iter().map(|&c| self.name(c)).collect::<Vec<_>>().join(sep)
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }
}

/// A word over some alphabet, as a sequence of symbol indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    fn check(&self, alphabet_len: usize) -> Result<()> {
        match self.0.iter().find(|&&c| c >= alphabet_len) {
            Some(&c) => Err(Error::SymbolOutOfRange(c)),
            None => Ok(()),
        }
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

/// All words over `k` letters of length at most `max_len`, in shortlex order.
pub fn words_up_to(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(frontier.len() * k);
        for w in &frontier {
            for c in 0..k {
                let mut v = w.0.clone();
                v.push(c);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A total deterministic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    state_count: usize,
    /// Row-major `state * |Σ| + symbol`.
    delta: Vec<State>,
    initial: State,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a total transition table `delta[state][symbol]`.
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<State>>,
        initial: State,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::Invalid("a DFA needs at least one state".into()));
        }
        let k = alphabet.len();
        let mut flat = Vec::with_capacity(n * k);
        for (q, row) in delta.iter().enumerate() {
            if row.len() != k {
                let symbol = alphabet.name(row.len().min(k - 1)).to_owned();
                return Err(Error::Partial { state: q, symbol });
            }
            for &t in row {
                if t >= n {
                    return Err(Error::Invalid(format!("transition target {t} out of range")));
                }
            }
            flat.extend_from_slice(row);
        }
        if initial >= n {
            return Err(Error::Invalid(format!("initial state {initial} out of range")));
        }
        let mut fin = vec![false; n];
        for f in finals {
            if f >= n {
                return Err(Error::Invalid(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        Ok(Dfa { alphabet, state_count: n, delta: flat, initial, finals: fin })
    }

    /// Builds a DFA from a partial table, routing every missing transition to
    /// a fresh non-accepting trash state that loops on all symbols.
    pub fn complete(
        alphabet: Alphabet,
        delta: Vec<Vec<Option<State>>>,
        initial: State,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let n = delta.len();
        let k = alphabet.len();
        let needs_trash = delta.iter().any(|row| row.len() < k || row.iter().any(Option::is_none));
        let trash = n;
        let mut table: Vec<Vec<State>> = delta
            .into_iter()
            .map(|row| (0..k).map(|c| row.get(c).copied().flatten().unwrap_or(trash)).collect())
            .collect();
        if needs_trash {
            table.push(vec![trash; k]);
        }
        Dfa::new(alphabet, table, initial, finals)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = State> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    #[inline]
    pub fn step(&self, q: State, c: Symbol) -> State {
        self.delta[q * self.alphabet.len() + c]
    }

    /// The transition row of a single letter as a map on states.
    pub fn letter_map(&self, c: Symbol) -> Vec<State> {
        (0..self.state_count).map(|q| self.step(q, c)).collect()
    }

    pub fn delta_word(&self, q: State, w: &Word) -> State {
        w.0.iter().fold(q, |s, &c| self.step(s, c))
    }

    pub fn run(&self, w: &Word) -> Result<bool> {
        w.check(self.alphabet.len())?;
        Ok(self.finals[self.delta_word(self.initial, w)])
    }

    /// States reachable from the initial state, in BFS discovery order.
    pub fn reachable_states(&self) -> Vec<State> {
        let mut seen = vec![false; self.state_count];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for c in 0..self.alphabet.len() {
                let t = self.step(q, c);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
        }
        order
    }

    /// States from which some final state can be reached.
    pub fn coreachable_states(&self) -> Vec<bool> {
        let n = self.state_count;
        let mut rev: Vec<Vec<State>> = vec![Vec::new(); n];
        for q in 0..n {
            for c in 0..self.alphabet.len() {
                rev[self.step(q, c)].push(q);
            }
        }
        let mut live = self.finals.clone();
        let mut queue: VecDeque<State> = self.finals().collect();
        while let Some(q) = queue.pop_front() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Rows of the transition table, for emitters and constructions.
    pub fn table(&self) -> Vec<Vec<State>> {
        (0..self.state_count).map(|q| (0..self.alphabet.len()).map(|c| self.step(q, c)).collect()).collect()
    }

    /// Relabels states in BFS order from the initial state (letters in
    /// alphabet order), dropping unreachable ones.
    pub fn canonical(&self) -> Dfa {
        let order = self.reachable_states();
        let mut rename = vec![usize::MAX; self.state_count];
        for (i, &q) in order.iter().enumerate() {
            rename[q] = i;
        }
        let delta =
            order.iter().map(|&q| (0..self.alphabet.len()).map(|c| rename[self.step(q, c)]).collect()).collect();
        let finals: Vec<State> = order.iter().filter(|&&q| self.finals[q]).map(|&q| rename[q]).collect();
        Dfa::new(self.alphabet.clone(), delta, 0, finals).expect("relabelling preserves validity")
    }

    /// Structural equality up to renaming of reachable states.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.canonical() == other.canonical()
    }
}

/// A one-way nondeterministic automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    delta: Vec<Vec<State>>,
    initials: Vec<State>,
    finals: Vec<bool>,
}

impl Nfa {
    /// `edges` are `(source, symbol, target)` triples.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        edges: impl IntoIterator<Item = (State, Symbol, State)>,
        initials: impl IntoIterator<Item = State>,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut delta = vec![Vec::new(); state_count * k];
        for (p, c, q) in edges {
            if p >= state_count || q >= state_count {
                return Err(Error::Invalid(format!("edge {p} -> {q} out of range")));
            }
            if c >= k {
                return Err(Error::SymbolOutOfRange(c));
            }
            delta[p * k + c].push(q);
        }
        for row in &mut delta {
            row.sort_unstable();
            row.dedup();
        }
        let initials = checked_set(initials, state_count, "initial")?;
        if initials.is_empty() {
            return Err(Error::Invalid("no initial state".into()));
        }
        let mut fin = vec![false; state_count];
        for f in checked_set(finals, state_count, "final")? {
            fin[f] = true;
        }
        Ok(Nfa { alphabet, state_count, delta, initials, finals: fin })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initials(&self) -> &[State] {
        &self.initials
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn successors(&self, q: State, c: Symbol) -> &[State] {
        &self.delta[q * self.alphabet.len() + c]
    }

    pub fn run(&self, w: &Word) -> Result<bool> {
        w.check(self.alphabet.len())?;
        let mut current: BTreeSet<State> = self.initials.iter().copied().collect();
        for &c in &w.0 {
            current = current.iter().flat_map(|&q| self.successors(q, c).iter().copied()).collect();
        }
        Ok(current.iter().any(|&q| self.finals[q]))
    }

    /// Subset construction over reachable subsets; the empty subset becomes
    /// the rejecting sink when it is reached.
    pub fn determinize(&self, cap: usize) -> Result<Dfa> {
        let k = self.alphabet.len();
        let start: Vec<State> = self.initials.clone();
        let mut index: FxHashMap<Vec<State>, usize> = FxHashMap::default();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta: Vec<Vec<State>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                let mut next: Vec<State> =
                    subsets[i].iter().flat_map(|&q| self.successors(q, c).iter().copied()).collect();
                next.sort_unstable();
                next.dedup();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= cap {
                            return Err(Error::SizeLimit { what: "subset construction", limit: cap });
                        }
                        index.insert(next.clone(), subsets.len());
                        subsets.push(next);
                        subsets.len() - 1
                    }
                };
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals: Vec<State> =
            subsets.iter().enumerate().filter(|(_, s)| s.iter().any(|&q| self.finals[q])).map(|(i, _)| i).collect();
        Dfa::new(self.alphabet.clone(), delta, 0, finals)
    }
}

/// Head movement of a two-way automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Left,
    Stay,
    Right,
}

impl Dir {
    pub fn offset(self) -> isize {
        match self {
            Dir::Left => -1,
            Dir::Stay => 0,
            Dir::Right => 1,
        }
    }

    pub fn from_offset(d: i64) -> Option<Dir> {
        match d {
            -1 => Some(Dir::Left),
            0 => Some(Dir::Stay),
            1 => Some(Dir::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.offset())
    }
}

/// A two-way nondeterministic automaton. The head starts on the first letter
/// and a run accepts when it steps one cell past the last letter in a final
/// state. Moves are only defined while the head is on a letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoNfa {
    alphabet: Alphabet,
    state_count: usize,
    delta: Vec<Vec<(State, Dir)>>,
    initials: Vec<State>,
    finals: Vec<bool>,
}

impl TwoNfa {
    /// `edges` are `(source, symbol, target, direction)`.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        edges: impl IntoIterator<Item = (State, Symbol, State, Dir)>,
        initials: impl IntoIterator<Item = State>,
        finals: impl IntoIterator<Item = State>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let mut delta = vec![Vec::new(); state_count * k];
        for (p, c, q, d) in edges {
            if p >= state_count || q >= state_count {
                return Err(Error::Invalid(format!("edge {p} -> {q} out of range")));
            }
            if c >= k {
                return Err(Error::SymbolOutOfRange(c));
            }
            delta[p * k + c].push((q, d));
        }
        for row in &mut delta {
            row.sort_unstable();
            row.dedup();
        }
        let initials = checked_set(initials, state_count, "initial")?;
        if initials.is_empty() {
            return Err(Error::Invalid("no initial state".into()));
        }
        let mut fin = vec![false; state_count];
        for f in checked_set(finals, state_count, "final")? {
            fin[f] = true;
        }
        Ok(TwoNfa { alphabet, state_count, delta, initials, finals: fin })
    }

    /// The one-way embedding of a DFA: every move goes right.
    pub fn from_dfa(dfa: &Dfa) -> TwoNfa {
        let k = dfa.alphabet().len();
        let edges = (0..dfa.state_count())
            .flat_map(|q| (0..k).map(move |c| (q, c)))
            .map(|(q, c)| (q, c, dfa.step(q, c), Dir::Right))
            .collect::<Vec<_>>();
        TwoNfa::new(dfa.alphabet().clone(), dfa.state_count(), edges, [dfa.initial()], dfa.finals())
            .expect("a valid DFA embeds as a valid 2NFA")
    }

    /// The one-way embedding of an NFA.
    pub fn from_nfa(nfa: &Nfa) -> TwoNfa {
        let k = nfa.alphabet().len();
        let mut edges = Vec::new();
        for q in 0..nfa.state_count() {
            for c in 0..k {
                edges.extend(nfa.successors(q, c).iter().map(|&t| (q, c, t, Dir::Right)));
            }
        }
        let finals = (0..nfa.state_count()).filter(|&q| nfa.is_final(q));
        TwoNfa::new(nfa.alphabet().clone(), nfa.state_count(), edges, nfa.initials().to_vec(), finals)
            .expect("a valid NFA embeds as a valid 2NFA")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn initials(&self) -> &[State] {
        &self.initials
    }

    pub fn is_final(&self, q: State) -> bool {
        self.finals[q]
    }

    pub fn moves(&self, q: State, c: Symbol) -> &[(State, Dir)] {
        &self.delta[q * self.alphabet.len() + c]
    }

    /// All `(source, symbol, target, dir)` edges in table order.
    pub fn edges(&self) -> Vec<(State, Symbol, State, Dir)> {
        let k = self.alphabet.len();
        let mut out = Vec::new();
        for q in 0..self.state_count {
            for c in 0..k {
                out.extend(self.moves(q, c).iter().map(|&(t, d)| (q, c, t, d)));
            }
        }
        out
    }

    /// Acceptance by reachability over configurations `(state, position)`.
    pub fn run(&self, w: &Word) -> Result<bool> {
        w.check(self.alphabet.len())?;
        let len = w.len();
        let n = self.state_count;
        let mut seen = vec![false; n * (len + 1)];
        let mut queue = VecDeque::new();
        for &q in &self.initials {
            if !seen[q] {
                seen[q] = true;
                queue.push_back((q, 0usize));
            }
        }
        while let Some((q, pos)) = queue.pop_front() {
            if pos == len {
                if self.finals[q] {
                    return Ok(true);
                }
                continue;
            }
            for &(t, d) in self.moves(q, w.0[pos]) {
                let np = pos as isize + d.offset();
                if np < 0 {
                    continue;
                }
                let np = np as usize;
                if !seen[np * n + t] {
                    seen[np * n + t] = true;
                    queue.push_back((t, np));
                }
            }
        }
        Ok(false)
    }
}

/// Any of the three automaton kinds, as produced by the text parser.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Dfa(Dfa),
    Nfa(Nfa),
    TwoNfa(TwoNfa),
}

impl Automaton {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Automaton::Dfa(a) => a.alphabet(),
            Automaton::Nfa(a) => a.alphabet(),
            Automaton::TwoNfa(a) => a.alphabet(),
        }
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        match self {
            Automaton::Dfa(a) => a.run(w),
            Automaton::Nfa(a) => a.run(w),
            Automaton::TwoNfa(a) => a.run(w),
        }
    }
}

fn checked_set(states: impl IntoIterator<Item = State>, n: usize, what: &str) -> Result<Vec<State>> {
    let mut v: Vec<State> = states.into_iter().collect();
    if let Some(&bad) = v.iter().find(|&&q| q >= n) {
        return Err(Error::Invalid(format!("{what} state {bad} out of range")));
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}
