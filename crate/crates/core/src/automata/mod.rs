//! Finite automata over small explicit alphabets.
//!
//! States are dense indices `0..state_count`. Every value here is immutable
//! once built; operations return fresh automata.

mod dfa;
pub mod dot;
pub mod json;
mod nfa;

use std::fmt;

use thiserror::Error;

pub use dfa::{determinize, determinize_with_subsets, equivalent, minimize, Dfa};
pub use nfa::{
    enumerate_words, product_intersection, product_intersection_with_pairs, remove_lambda,
    shortest_word, trim, trim_with_map, Nfa, NfaBuilder, StateId, Transition,
};

/// Character reserved for λ in serialized transitions.
pub const LAMBDA_LABEL: char = '~';

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutomatonError {
    #[error("alphabet label {0:?} is not a single character")]
    BadLabel(String),
    #[error("alphabet label {0:?} occurs more than once")]
    DuplicateLabel(char),
    #[error("'~' is reserved for lambda and cannot be an alphabet symbol")]
    ReservedLabel,
    #[error("alphabet has {0} symbols, at most 255 are supported")]
    AlphabetTooLarge(usize),
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("state {state} out of range for an automaton with {count} states")]
    StateOutOfRange { state: usize, count: usize },
    #[error("symbol index {symbol} out of range for an alphabet of {size} symbols")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("transition table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
}

/// A symbol, identified by its index in an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u8);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered set of single-character symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    labels: Vec<char>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = char>>(labels: I) -> Result<Self, AutomatonError> {
        let labels: Vec<char> = labels.into_iter().collect();
        if labels.len() > u8::MAX as usize {
            return Err(AutomatonError::AlphabetTooLarge(labels.len()));
        }
        for (i, &c) in labels.iter().enumerate() {
            if c == LAMBDA_LABEL {
                return Err(AutomatonError::ReservedLabel);
            }
            if labels[..i].contains(&c) {
                return Err(AutomatonError::DuplicateLabel(c));
            }
        }
        Ok(Alphabet { labels })
    }

    /// Builds an alphabet from a string of labels, e.g. `"abc"`.
    pub fn from_labels(labels: &str) -> Result<Self, AutomatonError> {
        Self::new(labels.chars())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.labels.len()).map(|i| Symbol(i as u8))
    }

    pub fn label(&self, sym: Symbol) -> char {
        self.labels[sym.index()]
    }

    pub fn labels(&self) -> &[char] {
        &self.labels
    }

    pub fn symbol(&self, label: char) -> Result<Symbol, AutomatonError> {
        self.labels
            .iter()
            .position(|&c| c == label)
            .map(|i| Symbol(i as u8))
            .ok_or(AutomatonError::UnknownSymbol(label))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.index() < self.labels.len()
    }

    /// Parses a word written as a string of labels. The empty string is λ.
    pub fn word(&self, text: &str) -> Result<Word, AutomatonError> {
        text.chars()
            .map(|c| self.symbol(c))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn render(&self, word: &Word) -> String {
        word.0.iter().map(|&s| self.label(s)).collect()
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<(), AutomatonError> {
        if self == other {
            Ok(())
        } else {
            Err(AutomatonError::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite word. The empty word is λ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
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
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `true` if `self` is a suffix of `other` and strictly shorter.
    pub fn is_proper_suffix_of(&self, other: &Word) -> bool {
        self.len() < other.len() && other.0.ends_with(&self.0)
    }
}

/// Length-then-lexicographic order (symbols compared by alphabet index).
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// All words over `alphabet` of length at most `max_len`, in length-lex order.
pub fn all_words(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for s in alphabet.symbols() {
                let mut v = w.0.clone();
                v.push(s);
                next.push(Word(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
