//! Line-oriented text format shared by DFAs, NFAs and 2NFAs.
//!
//! ```text
//! # (aa)*
//! type: dfa
//! states: 2
//! alphabet: a
//! initial: 0
//! final: 0
//! trans: 0 a 1
//! trans: 1 a 0
//! ```
//!
//! 2NFA transitions carry a fourth field, the head direction `-1`, `0` or `1`.

use std::fmt::Write as _;

use super::{Alphabet, Automaton, Dfa, Dir, Nfa, State, Symbol, TwoNfa};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Route missing DFA transitions to a fresh trash state instead of
    /// rejecting the input.
    pub complete: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Dfa,
    Nfa,
    TwoNfa,
}

pub fn parse_automaton(text: &str, opts: ParseOptions) -> Result<Automaton> {
    let mut kind = None;
    let mut states: Option<(usize, usize)> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut initial: Option<(usize, Vec<usize>)> = None;
    let mut finals: Option<(usize, Vec<usize>)> = None;
    let mut trans: Vec<(usize, usize, String, usize, Option<Dir>)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax { line, message };
        let (key, value) =
            content.split_once(':').ok_or_else(|| syntax(format!("expected `key: value`, found `{content}`")))?;
        let value = value.trim();
        let fields: Vec<&str> = value.split_whitespace().collect();
        match key.trim() {
            "type" => {
                kind = Some(match value {
                    "dfa" => Kind::Dfa,
                    "nfa" => Kind::Nfa,
                    "2nfa" => Kind::TwoNfa,
                    other => return Err(syntax(format!("unknown automaton type `{other}`"))),
                })
            }
            "states" => {
                let n = parse_usize(value, line)?;
                if n == 0 {
                    return Err(syntax("state count must be positive".into()));
                }
                states = Some((line, n));
            }
            "alphabet" => alphabet = Some(Alphabet::new(fields.iter().copied()).map_err(|e| syntax(e.to_string()))?),
            "initial" => initial = Some((line, fields.iter().map(|f| parse_usize(f, line)).collect::<Result<_>>()?)),
            "final" => finals = Some((line, fields.iter().map(|f| parse_usize(f, line)).collect::<Result<_>>()?)),
            "trans" => {
                let (src, sym, dst, dir) = match fields.as_slice() {
                    [s, c, d] => (s, c, d, None),
                    [s, c, d, dir] => {
                        let v: i64 = dir.parse().map_err(|_| syntax(format!("bad direction `{dir}`")))?;
                        let dir = Dir::from_offset(v)
                            .ok_or_else(|| syntax(format!("direction must be -1, 0 or 1, found `{dir}`")))?;
                        (s, c, d, Some(dir))
                    }
                    _ => return Err(syntax(format!("malformed transition `{value}`"))),
                };
                trans.push((line, parse_usize(src, line)?, (*sym).to_owned(), parse_usize(dst, line)?, dir));
            }
            other => return Err(syntax(format!("unknown key `{other}`"))),
        }
    }

    let missing =
        |what: &str| Error::Syntax { line: text.lines().count().max(1), message: format!("missing `{what}` line") };
    let kind = kind.ok_or_else(|| missing("type"))?;
    let (_, n) = states.ok_or_else(|| missing("states"))?;
    let alphabet = alphabet.ok_or_else(|| missing("alphabet"))?;
    let (init_line, initials) = initial.ok_or_else(|| missing("initial"))?;
    let (final_line, final_states) = finals.unwrap_or((0, Vec::new()));

    let in_range = |line: usize, q: usize| -> Result<usize> {
        if q < n {
            Ok(q)
        } else {
            Err(Error::StateOutOfRange { line, state: q, count: n })
        }
    };
    for &q in &initials {
        in_range(init_line, q)?;
    }
    for &q in &final_states {
        in_range(final_line, q)?;
    }
    let mut edges: Vec<(State, Symbol, State, Option<Dir>)> = Vec::with_capacity(trans.len());
    for (line, src, sym, dst, dir) in trans {
        in_range(line, src)?;
        in_range(line, dst)?;
        let c = alphabet
            .index_of(&sym)
            .ok_or_else(|| Error::Syntax { line, message: format!("unknown symbol `{sym}`") })?;
        match (kind, dir) {
            (Kind::TwoNfa, None) => {
                return Err(Error::Syntax { line, message: "2NFA transition needs a direction".into() })
            }
            (Kind::Dfa | Kind::Nfa, Some(_)) => {
                return Err(Error::Syntax { line, message: "only 2NFA transitions take a direction".into() })
            }
            _ => {}
        }
        edges.push((src, c, dst, dir));
    }

    match kind {
        Kind::Dfa => {
            if initials.len() != 1 {
                return Err(Error::Syntax { line: init_line, message: "a DFA has exactly one initial state".into() });
            }
            let k = alphabet.len();
            let mut table: Vec<Vec<Option<State>>> = vec![vec![None; k]; n];
            for (src, c, dst, _) in edges {
                match table[src][c] {
                    Some(prev) if prev != dst => {
                        return Err(Error::Invalid(format!(
                            "state {src} has two transitions on `{}`",
                            alphabet.name(c)
                        )))
                    }
                    _ => table[src][c] = Some(dst),
                }
            }
            if !opts.complete {
                for (q, row) in table.iter().enumerate() {
                    if let Some(c) = row.iter().position(Option::is_none) {
                        return Err(Error::Partial { state: q, symbol: alphabet.name(c).to_owned() });
                    }
                }
            }
            Ok(Automaton::Dfa(Dfa::complete(alphabet, table, initials[0], final_states)?))
        }
        Kind::Nfa => Ok(Automaton::Nfa(Nfa::new(
            alphabet,
            n,
            edges.into_iter().map(|(p, c, q, _)| (p, c, q)),
            initials,
            final_states,
        )?)),
        Kind::TwoNfa => Ok(Automaton::TwoNfa(TwoNfa::new(
            alphabet,
            n,
            edges.into_iter().map(|(p, c, q, d)| (p, c, q, d.expect("checked above"))),
            initials,
            final_states,
        )?)),
    }
}

fn parse_usize(s: &str, line: usize) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Syntax { line, message: format!("expected a non-negative integer, found `{s}`") })
}

pub fn emit_automaton(a: &Automaton) -> String {
    match a {
        Automaton::Dfa(d) => {
            let k = d.alphabet().len();
            let edges = (0..d.state_count())
                .flat_map(|q| (0..k).map(move |c| (q, c)))
                .map(|(q, c)| format!("{q} {} {}", d.alphabet().name(c), d.step(q, c)));
            emit("dfa", d.state_count(), d.alphabet(), &[d.initial()], d.finals(), edges)
        }
        Automaton::Nfa(m) => {
            let mut edges = Vec::new();
            for q in 0..m.state_count() {
                for c in 0..m.alphabet().len() {
                    for &t in m.successors(q, c) {
                        edges.push(format!("{q} {} {t}", m.alphabet().name(c)));
                    }
                }
            }
            let finals = (0..m.state_count()).filter(|&q| m.is_final(q));
            emit("nfa", m.state_count(), m.alphabet(), m.initials(), finals, edges.into_iter())
        }
        Automaton::TwoNfa(m) => {
            let edges = m.edges().into_iter().map(|(q, c, t, d)| format!("{q} {} {t} {d}", m.alphabet().name(c)));
            let finals = (0..m.state_count()).filter(|&q| m.is_final(q));
            emit("2nfa", m.state_count(), m.alphabet(), m.initials(), finals, edges)
        }
    }
}

fn emit(
    kind: &str,
    n: usize,
    alphabet: &Alphabet,
    initials: &[State],
    finals: impl Iterator<Item = State>,
    edges: impl Iterator<Item = String>,
) -> String {
    let join = |v: Vec<String>| v.join(" ");
    let mut out = String::new();
    let _ = writeln!(out, "type: {kind}");
    let _ = writeln!(out, "states: {n}");
    let _ = writeln!(out, "alphabet: {}", alphabet.symbols().join(" "));
    let _ = writeln!(out, "initial: {}", join(initials.iter().map(ToString::to_string).collect()));
    let finals = join(finals.map(|q| q.to_string()).collect());
    if finals.is_empty() {
        let _ = writeln!(out, "final:");
    } else {
        let _ = writeln!(out, "final: {finals}");
    }
    for e in edges {
        let _ = writeln!(out, "trans: {e}");
    }
    out
}
