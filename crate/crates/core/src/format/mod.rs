//! File formats: grammar text, automaton JSON and dot.

pub mod grammar;

pub use grammar::{parse_grammar, write_grammar, Grammar, GrammarSystem};
