use thiserror::Error;

/// Errors produced by parsing, construction and the bounded searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("DFA is not total: no transition for state {state} on symbol `{symbol}`")]
    Partial { state: usize, symbol: String },

    #[error("line {line}: state {state} out of range (automaton has {count} states)")]
    StateOutOfRange { line: usize, state: usize, count: usize },

    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("symbol index {0} is not in the alphabet")]
    SymbolOutOfRange(usize),

    #[error("alphabets differ")]
    AlphabetMismatch,

    #[error("{what} exceeds the limit of {limit} elements")]
    SizeLimit { what: &'static str, limit: usize },

    #[error("{0} is not a valid gadget prime (need p prime, p > 5, p mod 10 not in {{1, 9}})")]
    InvalidPrime(usize),

    #[error("Turing machine: {0}")]
    Machine(String),

    #[error("gadget has {edges} a-edges but {checkers} checker automata were supplied")]
    IndexMismatch { edges: usize, checkers: usize },

    #[error("witness search and algebraic oracle disagree: {0}")]
    Disagreement(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
