pub mod automata;
pub mod definability;
pub mod error;
pub mod hardness;
pub mod monoid;
pub mod two_nfa;

pub use automata::{Alphabet, Automaton, Dfa, Dir, Nfa, State, Symbol, TwoNfa, Word};
pub use error::{Error, Result};
