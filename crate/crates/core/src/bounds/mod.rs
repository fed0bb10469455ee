//! Lower-bound machinery for nondeterministic state complexity.
//!
//! A fooling set of size k for L proves every NFA for L has at least k
//! states. Sets come from three places: the explicit families in
//! [`family_fooling_set`], an automated search ([`search_fooling_set`]), or
//! user-supplied pair files. [`nsc_exhaustive`] computes the exact minimum
//! for tiny instances and serves as a soundness oracle.

mod certify;
mod exhaustive;
mod fooling;
mod search;

use thiserror::Error;

use crate::automata::AutomatonError;
use crate::constructions::ConstructionError;
use crate::witnesses::WitnessError;

pub use certify::{certify, certify_with, ComplexityReport, LowerBoundKind, Operation};
pub use exhaustive::{default_ceiling, nsc_exhaustive, nsc_exhaustive_with, ExhaustiveOptions};
pub use fooling::{
    check_fooling_set, family_fooling_set, verify_fooling_set, FoolingFamily, FoolingSet,
    FoolingViolation,
};
pub use search::{search_fooling_set, search_fooling_set_with, SearchOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("{what}: parameter {param} = {value} is below the minimum {min}")]
    ParameterOutOfRange {
        what: String,
        param: char,
        value: usize,
        min: usize,
    },
    #[error("{0} needs a second parameter n")]
    MissingN(String),
    #[error("target size must be at least 1")]
    EmptyTarget,
    #[error("fooling-set search exceeded its candidate budget; best clique found has size {best}")]
    SearchBudgetExceeded { best: usize },
    #[error(
        "exhaustive search up to {max_states} states exceeds the budget (ceiling {ceiling} states, {candidates} candidates > {budget})"
    )]
    BudgetExceeded {
        max_states: usize,
        ceiling: usize,
        candidates: u128,
        budget: u128,
    },
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}
