//! Deterministic single-tape machines and their configuration alphabet.
//!
//! ```text
//! # accepts inputs starting with 1
//! states: q0 qacc
//! tape: b 0 1
//! blank: b
//! initial: q0
//! accept: qacc
//! rule: q0 1 -> qacc b S
//! rule: q0 0 -> q0 0 S
//! ```
//!
//! Moves are `L`, `S` or `R`. The accepting state has no rules.

use std::collections::BTreeMap;

use crate::automata::{Alphabet, Symbol, Word};
use crate::error::{Error, Result};

pub const SHARP: &str = "♯";
pub const FLAT: &str = "♭";
pub const NATURAL: &str = "♮";
pub const A1: &str = "a1";
pub const A2: &str = "a2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Left,
    Stay,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub state: usize,
    pub write: usize,
    pub dir: Move,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    states: Vec<String>,
    tape: Vec<String>,
    blank: usize,
    initial: usize,
    accept: usize,
    rules: BTreeMap<(usize, usize), Rule>,
}

/// One tape cell of a configuration: a plain symbol or the head on a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Tape(usize),
    Head(usize, usize),
}

/// A position of the 3-cell window; `Sep` stands for `♯` or `♭` beyond the
/// tape ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Slot {
    Sep,
    Cell(Cell),
}

impl TuringMachine {
    pub fn new(
        states: Vec<String>,
        tape: Vec<String>,
        blank: &str,
        initial: &str,
        accept: &str,
        rules: impl IntoIterator<Item = (String, String, String, String, Move)>,
    ) -> Result<Self> {
        let bad = |s: &String| s.is_empty() || s.chars().any(|c| c.is_whitespace() || "(),".contains(c));
        if let Some(s) = states.iter().chain(&tape).find(|s| bad(s)) {
            return Err(Error::Machine(format!("bad name `{s}`")));
        }
        let find = |list: &[String], name: &str, what: &str| {
            list.iter().position(|s| s == name).ok_or_else(|| Error::Machine(format!("unknown {what} `{name}`")))
        };
        let blank = find(&tape, blank, "tape symbol")?;
        let initial = find(&states, initial, "state")?;
        let accept = find(&states, accept, "state")?;
        let mut table = BTreeMap::new();
        for (q, y, q2, y2, dir) in rules {
            let key = (find(&states, &q, "state")?, find(&tape, &y, "tape symbol")?);
            if key.0 == accept {
                return Err(Error::Machine(format!("accepting state `{q}` has a rule")));
            }
            let rule = Rule { state: find(&states, &q2, "state")?, write: find(&tape, &y2, "tape symbol")?, dir };
            if table.insert(key, rule).is_some() {
                return Err(Error::Machine(format!("two rules for `{q} {y}`")));
            }
        }
        let tm = TuringMachine { states, tape, blank, initial, accept, rules: table };
        // duplicate names surface here
        tm.sigma_plus()?;
        Ok(tm)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |message: String| Error::Syntax { line, message };
            let (key, value) =
                content.split_once(':').ok_or_else(|| syntax(format!("expected `key: value`, found `{content}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "states" | "tape" | "blank" | "initial" | "accept" => {
                    if fields.insert(key, (line, value)).is_some() {
                        return Err(syntax(format!("duplicate `{key}` line")));
                    }
                }
                "rule" => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [q, y, "->", q2, y2, m] = parts[..] else {
                        return Err(syntax("expected `rule: q y -> q' y' L|S|R`".into()));
                    };
                    let dir = match m {
                        "L" => Move::Left,
                        "S" => Move::Stay,
                        "R" => Move::Right,
                        other => return Err(syntax(format!("unknown move `{other}`"))),
                    };
                    rules.push((q.to_owned(), y.to_owned(), q2.to_owned(), y2.to_owned(), dir));
                }
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        let get = |key: &str| {
            fields.get(key).map(|&(_, v)| v).ok_or_else(|| Error::Machine(format!("missing `{key}:` line")))
        };
        let list = |key: &str| get(key).map(|v| v.split_whitespace().map(str::to_owned).collect::<Vec<_>>());
        TuringMachine::new(list("states")?, list("tape")?, get("blank")?, get("initial")?, get("accept")?, rules)
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn tape_names(&self) -> &[String] {
        &self.tape
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accept(&self) -> usize {
        self.accept
    }

    pub fn rule(&self, q: usize, y: usize) -> Option<Rule> {
        self.rules.get(&(q, y)).copied()
    }

    pub fn tape_symbol(&self, name: &str) -> Option<usize> {
        self.tape.iter().position(|s| s == name)
    }

    /// `Γ ∪ (Q × Γ) ∪ {♯, ♭}`, in that order.
    pub fn sigma(&self) -> Result<Alphabet> {
        let mut names: Vec<String> = self.tape.clone();
        for q in &self.states {
            for y in &self.tape {
                names.push(format!("({q},{y})"));
            }
        }
        names.push(SHARP.into());
        names.push(FLAT.into());
        Alphabet::new(names).map_err(|e| Error::Machine(e.to_string()))
    }

    /// `Σ` followed by `a1`, `a2` and `♮`.
    pub fn sigma_plus(&self) -> Result<Alphabet> {
        let mut names = self.sigma()?.symbols().to_vec();
        names.extend([A1, A2, NATURAL].map(String::from));
        Alphabet::new(names).map_err(|e| Error::Machine(e.to_string()))
    }

    pub(crate) fn cell_count(&self) -> usize {
        self.tape.len() * (1 + self.states.len())
    }

    /// Index of a cell in `Σ`.
    pub fn cell_symbol(&self, c: Cell) -> Symbol {
        match c {
            Cell::Tape(y) => y,
            Cell::Head(q, y) => self.tape.len() * (1 + q) + y,
        }
    }

    pub(crate) fn cell_of_symbol(&self, s: Symbol) -> Option<Cell> {
        let g = self.tape.len();
        match s {
            s if s < g => Some(Cell::Tape(s)),
            s if s < self.cell_count() => Some(Cell::Head(s / g - 1, s % g)),
            _ => None,
        }
    }

    pub fn sharp(&self) -> Symbol {
        self.cell_count()
    }

    pub fn flat(&self) -> Symbol {
        self.cell_count() + 1
    }

    /// The cell at the centre of `window` one step later, or `None` when a
    /// head in the window has no rule. A head leaving the tape disappears.
    pub(crate) fn next_cell(&self, window: [Slot; 3]) -> Option<Cell> {
        let mut moves = [None; 3];
        for (i, slot) in window.iter().enumerate() {
            if let Slot::Cell(Cell::Head(q, y)) = *slot {
                moves[i] = Some(self.rule(q, y)?);
            }
        }
        let Slot::Cell(centre) = window[1] else { unreachable!("the window centre is a tape cell") };
        let under = match centre {
            Cell::Tape(y) | Cell::Head(_, y) => y,
        };
        Some(match (moves[0], moves[1], moves[2]) {
            (_, Some(r), _) if r.dir == Move::Stay => Cell::Head(r.state, r.write),
            (_, Some(r), _) => Cell::Tape(r.write),
            (Some(r), None, _) if r.dir == Move::Right => Cell::Head(r.state, under),
            (_, None, Some(r)) if r.dir == Move::Left => Cell::Head(r.state, under),
            _ => centre,
        })
    }

    /// One step of the machine on a tape of fixed length; `None` if the
    /// configuration has no successor.
    pub fn step(&self, config: &[Cell]) -> Option<Vec<Cell>> {
        let slot = |i: isize| usize::try_from(i).ok().and_then(|i| config.get(i)).map_or(Slot::Sep, |&c| Slot::Cell(c));
        (0..config.len() as isize).map(|i| self.next_cell([slot(i - 1), slot(i), slot(i + 1)])).collect()
    }

    pub fn initial_config(&self, input: &[usize], n: usize) -> Result<Vec<Cell>> {
        if input.is_empty() || input.len() > n {
            return Err(Error::Machine(format!("input length {} not in 1..={n}", input.len())));
        }
        let mut c: Vec<Cell> = (0..n).map(|i| Cell::Tape(input.get(i).copied().unwrap_or(self.blank))).collect();
        c[0] = Cell::Head(self.initial, input[0]);
        Ok(c)
    }

    pub fn parse_input(&self, text: &str) -> Result<Vec<usize>> {
        let tokens: Vec<String> =
            if text.contains(char::is_whitespace) || self.tape.iter().any(|s| s.chars().count() != 1) {
                text.split_whitespace().map(str::to_owned).collect()
            } else {
                text.chars().map(String::from).collect()
            };
        tokens
            .iter()
            .map(|t| self.tape_symbol(t).ok_or_else(|| Error::Machine(format!("unknown tape symbol `{t}`"))))
            .collect()
    }

    /// Runs from the initial configuration for at most `max_steps` steps and
    /// returns the encoding `♯c1♯c2…♯ck♭` of an accepting run, if any.
    pub fn accepting_run(&self, input: &[usize], n: usize, max_steps: usize) -> Result<Option<Word>> {
        let mut config = self.initial_config(input, n)?;
        let mut word = Vec::new();
        for _ in 0..=max_steps {
            word.push(self.sharp());
            word.extend(config.iter().map(|&c| self.cell_symbol(c)));
            let accepting = config[0] == Cell::Head(self.accept, self.blank)
                && config[1..].iter().all(|&c| c == Cell::Tape(self.blank));
            if accepting {
                word.push(self.flat());
                return Ok(Some(Word(word)));
            }
            match self.step(&config) {
                Some(next) => config = next,
                None => return Ok(None),
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    pub const TOY: &str = "\
states: q0 qacc
tape: b 0 1
blank: b
initial: q0
accept: qacc
rule: q0 1 -> qacc b S
rule: q0 0 -> q0 0 S
";
}
