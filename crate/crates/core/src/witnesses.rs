//! Generators for the worst-case witness languages.
//!
//! | family               | language                                   | states | alphabet |
//! |----------------------|--------------------------------------------|--------|----------|
//! | `lemma-l1`           | b(a^(m-1))*                                | m      | {a,b}    |
//! | `lemma-l2`           | b(a^(m-2))*b                               | m      | {a,b}    |
//! | `union-pair`         | b(a^(m-1))*, a(b^(n-1))*                   | m, n   | {a,b}    |
//! | `concat-pair`        | a^(m-1), a^(n-1)                           | m, n   | {a}      |
//! | `intersect-pair`     | c{a,b}* with #a ≡ 0 mod m-1 / #b ≡ 0 mod n-1 | m, n | {a,b,c}  |
//! | `star`               | b(a^(m-1))*                                | m      | {a,b}    |
//! | `reversal`           | d(a^(m-3))*(b* + c*)                       | m      | {a,b,c,d}|
//! | `complement-prefixed`| c·L1 for an (m-1)-state L1 ⊆ {a,b}*        | m      | {a,b,c}  |

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::automata::{remove_lambda, Alphabet, Nfa, Transition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    LemmaL1,
    LemmaL2,
    UnionPair,
    ConcatPair,
    IntersectPair,
    StarWitness,
    ReversalWitness,
    ComplementPrefixed,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::LemmaL1,
        Family::LemmaL2,
        Family::UnionPair,
        Family::ConcatPair,
        Family::IntersectPair,
        Family::StarWitness,
        Family::ReversalWitness,
        Family::ComplementPrefixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::LemmaL1 => "lemma-l1",
            Family::LemmaL2 => "lemma-l2",
            Family::UnionPair => "union-pair",
            Family::ConcatPair => "concat-pair",
            Family::IntersectPair => "intersect-pair",
            Family::StarWitness => "star",
            Family::ReversalWitness => "reversal",
            Family::ComplementPrefixed => "complement-prefixed",
        }
    }

    pub fn is_pair(self) -> bool {
        matches!(
            self,
            Family::UnionPair | Family::ConcatPair | Family::IntersectPair
        )
    }

    /// Smallest admissible `m` (and `n`, for pair families).
    pub fn min_param(self) -> usize {
        match self {
            Family::ConcatPair => 1,
            Family::LemmaL2 => 3,
            Family::ReversalWitness => 4,
            _ => 2,
        }
    }

    pub fn alphabet(self) -> Alphabet {
        let labels = match self {
            Family::ConcatPair => "a",
            Family::IntersectPair | Family::ComplementPrefixed => "abc",
            Family::ReversalWitness => "abcd",
            _ => "ab",
        };
        Alphabet::from_labels(labels).expect("static alphabet")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| WitnessError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("unknown witness family {0:?}")]
    UnknownFamily(String),
    #[error("{family}: parameter {param} = {value} is below the minimum {min}")]
    ParameterOutOfRange {
        family: Family,
        param: char,
        value: usize,
        min: usize,
    },
    #[error("{0} needs a second parameter n")]
    MissingN(Family),
    #[error("{0} takes a single parameter m")]
    UnexpectedN(Family),
    #[error("prefix language must not use the symbol 'c'")]
    PrefixClash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessSpec {
    pub family: Family,
    pub m: usize,
    pub n: Option<usize>,
}

impl WitnessSpec {
    pub fn single(family: Family, m: usize) -> Self {
        WitnessSpec { family, m, n: None }
    }

    pub fn pair(family: Family, m: usize, n: usize) -> Self {
        WitnessSpec {
            family,
            m,
            n: Some(n),
        }
    }

    pub fn validate(&self) -> Result<(), WitnessError> {
        let family = self.family;
        let min = family.min_param();
        if self.m < min {
            return Err(WitnessError::ParameterOutOfRange {
                family,
                param: 'm',
                value: self.m,
                min,
            });
        }
        match (family.is_pair(), self.n) {
            (true, None) => Err(WitnessError::MissingN(family)),
            (false, Some(_)) => Err(WitnessError::UnexpectedN(family)),
            (true, Some(n)) if n < min => Err(WitnessError::ParameterOutOfRange {
                family,
                param: 'n',
                value: n,
                min,
            }),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Single(Nfa),
    Pair(Nfa, Nfa),
}

impl Witness {
    pub fn automata(&self) -> Vec<&Nfa> {
        match self {
            Witness::Single(a) => vec![a],
            Witness::Pair(a, b) => vec![a, b],
        }
    }
}

pub fn build(spec: &WitnessSpec) -> Result<Witness, WitnessError> {
    spec.validate()?;
    let m = spec.m;
    let n = spec.n.unwrap_or(0);
    let abc = Family::IntersectPair.alphabet();
    Ok(match spec.family {
        Family::LemmaL1 | Family::StarWitness => Witness::Single(lead_cycle('b', 'a', m)),
        Family::LemmaL2 => Witness::Single(lemma_l2(m)),
        Family::UnionPair => Witness::Pair(lead_cycle('b', 'a', m), lead_cycle('a', 'b', n)),
        Family::ConcatPair => Witness::Pair(a_chain(m), a_chain(n)),
        Family::IntersectPair => Witness::Pair(
            prefixed_count(&abc, 'a', 'b', m),
            prefixed_count(&abc, 'b', 'a', n),
        ),
        Family::ReversalWitness => Witness::Single(reversal(m)),
        Family::ComplementPrefixed => Witness::Single(complement_prefixed(&mod_counter(m - 1))?),
    })
}

/// Convenience for single-automaton families.
pub fn build_single(family: Family, m: usize) -> Result<Nfa, WitnessError> {
    match build(&WitnessSpec::single(family, m))? {
        Witness::Single(a) => Ok(a),
        Witness::Pair(..) => unreachable!("single family"),
    }
}

/// Convenience for pair families.
pub fn build_pair(family: Family, m: usize, n: usize) -> Result<(Nfa, Nfa), WitnessError> {
    match build(&WitnessSpec::pair(family, m, n))? {
        Witness::Pair(a, b) => Ok((a, b)),
        Witness::Single(_) => unreachable!("pair family"),
    }
}

/// `lead (cycle^(states-1))*` over {a,b}: the start reads `lead` into a
/// final state on a `cycle`-labelled loop of length `states - 1`.
fn lead_cycle(lead: char, cycle: char, states: usize) -> Nfa {
    let loop_len = states - 1;
    let mut builder = Nfa::builder(Family::LemmaL1.alphabet(), states)
        .edge(0, lead, 1)
        .final_state(1);
    for i in 1..=loop_len {
        let next = if i == loop_len { 1 } else { i + 1 };
        builder = builder.edge(i, cycle, next);
    }
    builder.build().expect("valid witness")
}

fn lemma_l2(m: usize) -> Nfa {
    let loop_len = m - 2;
    let last = m - 1;
    let mut builder = Nfa::builder(Family::LemmaL2.alphabet(), m)
        .edge(0, 'b', 1)
        .edge(1, 'b', last)
        .final_state(last);
    for i in 1..=loop_len {
        let next = if i == loop_len { 1 } else { i + 1 };
        builder = builder.edge(i, 'a', next);
    }
    builder.build().expect("valid witness")
}

fn a_chain(states: usize) -> Nfa {
    let mut builder = Nfa::builder(Family::ConcatPair.alphabet(), states).final_state(states - 1);
    for i in 0..states - 1 {
        builder = builder.edge(i, 'a', i + 1);
    }
    builder.build().expect("valid witness")
}

/// c·{w ∈ {a,b}* : #counted(w) ≡ 0 mod states-1}.
fn prefixed_count(alphabet: &Alphabet, counted: char, other: char, states: usize) -> Nfa {
    let modulus = states - 1;
    let mut builder = Nfa::builder(alphabet.clone(), states)
        .edge(0, 'c', 1)
        .final_state(1);
    for i in 1..=modulus {
        let next = if i == modulus { 1 } else { i + 1 };
        builder = builder.edge(i, counted, next).edge(i, other, i);
    }
    builder.build().expect("valid witness")
}

fn reversal(m: usize) -> Nfa {
    let loop_len = m - 3;
    let (qb, qc) = (m - 2, m - 1);
    let mut builder = Nfa::builder(Family::ReversalWitness.alphabet(), m)
        .edge(0, 'd', 1)
        .edge(1, 'b', qb)
        .edge(qb, 'b', qb)
        .edge(1, 'c', qc)
        .edge(qc, 'c', qc)
        .final_state(1)
        .final_state(qb)
        .final_state(qc);
    for i in 1..=loop_len {
        let next = if i == loop_len { 1 } else { i + 1 };
        builder = builder.edge(i, 'a', next);
    }
    builder.build().expect("valid witness")
}

/// The default prefix language: words over {a,b} whose number of a's is a
/// multiple of `states`, on `states` states.
pub fn mod_counter(states: usize) -> Nfa {
    let mut builder = Nfa::builder(Family::LemmaL1.alphabet(), states).final_state(0);
    for i in 0..states {
        builder = builder.edge(i, 'a', (i + 1) % states).edge(i, 'b', i);
    }
    builder.build().expect("valid counter")
}

/// c·L(prefix) on one more state than `prefix`, over `prefix`'s alphabet
/// extended with `c`.
pub fn complement_prefixed(prefix: &Nfa) -> Result<Nfa, WitnessError> {
    let prefix = remove_lambda(prefix);
    if prefix.alphabet().labels().contains(&'c') {
        return Err(WitnessError::PrefixClash);
    }
    let alphabet = Alphabet::new(prefix.alphabet().labels().iter().copied().chain(['c']))
        .map_err(|_| WitnessError::PrefixClash)?;
    let c = alphabet.symbol('c').expect("just added");
    let mut transitions: Vec<Transition> = prefix
        .transitions()
        .map(|t| Transition {
            src: t.src + 1,
            label: t.label,
            dst: t.dst + 1,
        })
        .collect();
    transitions.push(Transition {
        src: 0,
        label: Some(c),
        dst: prefix.start() + 1,
    });
    let finals = prefix.finals().iter().map(|&f| f + 1);
    Ok(
        Nfa::from_parts(alphabet, prefix.state_count() + 1, 0, finals, transitions)
            .expect("indices stay in range"),
    )
}
