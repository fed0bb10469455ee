//! NFA constructions for operations on suffix-free regular languages,
//! together with machinery that certifies their nondeterministic state
//! complexity: fooling-set verification and search, and an exhaustive
//! minimal-NFA oracle for tiny languages.

#![allow(clippy::needless_range_loop)]

pub mod automata;
pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod suffix_free;
pub mod witnesses;

pub use automata::{Alphabet, Dfa, Nfa, Symbol, Word};
pub use suffix_free::{is_non_returning, is_suffix_free, SuffixFreeness};
