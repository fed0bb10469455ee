use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::automata::{Alphabet, Nfa};
use crate::constructions::{
    complement_sf, concat_sf, intersect_sf, reverse_nfa, star_sf, union_sf,
};
use crate::witnesses::{build_pair, build_single, Family};

use super::{
    family_fooling_set, search_fooling_set_with, verify_fooling_set, BoundsError, FoolingFamily,
    FoolingSet, SearchOptions,
};

/// Operations in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operation {
    Concat,
    Union,
    Intersect,
    Star,
    Reverse,
    Complement,
}

impl Operation {
    pub const ALL: [Operation; 6] = [
        Operation::Concat,
        Operation::Union,
        Operation::Intersect,
        Operation::Star,
        Operation::Reverse,
        Operation::Complement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Operation::Concat => "concat",
            Operation::Union => "union",
            Operation::Intersect => "intersect",
            Operation::Star => "star",
            Operation::Reverse => "reverse",
            Operation::Complement => "complement",
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            Operation::Concat | Operation::Union | Operation::Intersect
        )
    }

    /// Smallest admissible `m` (and `n`).
    pub fn min_param(self) -> usize {
        match self {
            Operation::Concat | Operation::Star => 1,
            Operation::Reverse => Family::ReversalWitness.min_param(),
            _ => 2,
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Operation::Concat | Operation::Union => "m+n-1",
            Operation::Intersect => "mn-(m+n)+2",
            Operation::Star => "m",
            Operation::Reverse => "m+1",
            Operation::Complement => "2^{m-1}±1",
        }
    }

    /// The formula evaluated at `(m, n)`; for complement, the upper value
    /// `2^(m-1) + 1`.
    pub fn formula_value(self, m: usize, n: usize) -> usize {
        match self {
            Operation::Concat | Operation::Union => m + n - 1,
            Operation::Intersect => m * n + 2 - (m + n),
            Operation::Star => m,
            Operation::Reverse => m + 1,
            Operation::Complement => 1usize
                .checked_shl((m - 1) as u32)
                .map_or(usize::MAX, |p| p.saturating_add(1)),
        }
    }

    /// Whether certification is expected to close the gap.
    pub fn expects_tight(self) -> bool {
        matches!(
            self,
            Operation::Concat | Operation::Union | Operation::Intersect | Operation::Star
        )
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Operation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "catenation" | "concatenation" => Ok(Operation::Concat),
            "intersection" => Ok(Operation::Intersect),
            "reversal" => Ok(Operation::Reverse),
            _ => Operation::ALL
                .into_iter()
                .find(|op| op.name() == s)
                .ok_or_else(|| format!("unknown operation {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LowerBoundKind {
    FoolingSet,
    Exhaustive,
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub operation: Operation,
    pub m: usize,
    pub n: Option<usize>,
    pub constructed_size: usize,
    pub lower_bound: usize,
    pub lower_bound_kind: LowerBoundKind,
    pub formula: &'static str,
    pub formula_value: usize,
    pub tight: bool,
    pub note: Option<String>,
    /// The verified certificate, as `[x, w]` strings with "" for λ.
    pub fooling_set: Option<Vec<[String; 2]>>,
}

pub fn certify(op: Operation, m: usize, n: Option<usize>) -> Result<ComplexityReport, BoundsError> {
    certify_with(op, m, n, 0)
}

/// Builds the witnesses for `op`, applies the construction and certifies
/// a lower bound for the result. `seed` drives the reversal search.
pub fn certify_with(
    op: Operation,
    m: usize,
    n: Option<usize>,
    seed: u64,
) -> Result<ComplexityReport, BoundsError> {
    let min = op.min_param();
    let out_of_range = |param, value| BoundsError::ParameterOutOfRange {
        what: op.name().to_string(),
        param,
        value,
        min,
    };
    if m < min {
        return Err(out_of_range('m', m));
    }
    let n = if op.is_binary() {
        let n = n.ok_or_else(|| BoundsError::MissingN(op.name().to_string()))?;
        if n < min {
            return Err(out_of_range('n', n));
        }
        Some(n)
    } else {
        None
    };
    let nv = n.unwrap_or(0);

    let mut report = ComplexityReport {
        operation: op,
        m,
        n,
        constructed_size: 0,
        lower_bound: 0,
        lower_bound_kind: LowerBoundKind::None,
        formula: op.formula(),
        formula_value: op.formula_value(m, nv),
        tight: false,
        note: None,
        fooling_set: None,
    };

    let (result, family): (Nfa, Option<FoolingFamily>) = match op {
        Operation::Union => {
            let (a, b) = build_pair(Family::UnionPair, m, nv)?;
            (union_sf(&a, &b)?, Some(FoolingFamily::Union))
        }
        Operation::Concat => {
            let (a, b) = build_pair(Family::ConcatPair, m, nv)?;
            (concat_sf(&a, &b)?, Some(FoolingFamily::Concat))
        }
        Operation::Intersect => {
            let (a, b) = build_pair(Family::IntersectPair, m, nv)?;
            (intersect_sf(&a, &b)?, Some(FoolingFamily::Intersection))
        }
        Operation::Star => {
            let a = if m == 1 {
                Nfa::lambda_only(Family::StarWitness.alphabet())
            } else {
                build_single(Family::StarWitness, m)?
            };
            (star_sf(&a)?, Some(FoolingFamily::Star))
        }
        Operation::Reverse => {
            let a = build_single(Family::ReversalWitness, m)?;
            (reverse_nfa(&a), None)
        }
        Operation::Complement => {
            let a = build_single(Family::LemmaL1, m)?;
            let dfa = complement_sf(&a)?;
            report.constructed_size = dfa.state_count();
            report.note = Some(format!(
                "upper bound only: {} states on b(a^{})*; the lower bound 2^{{m-1}}-1 is not certified",
                dfa.state_count(),
                m - 1
            ));
            return Ok(report);
        }
    };
    report.constructed_size = result.state_count();
    let alphabet: Alphabet = result.alphabet().clone();

    let certificate: Option<FoolingSet> = match family {
        Some(family) => {
            let p = family_fooling_set(family, m, n)?;
            if verify_fooling_set(&result, &p) {
                Some(p)
            } else {
                report.note = Some("explicit fooling set failed verification".to_string());
                None
            }
        }
        None => {
            let mut opts = SearchOptions::new(2 * m, m);
            opts.seed = seed;
            match search_fooling_set_with(&result, &opts) {
                Ok(found) => found,
                Err(BoundsError::SearchBudgetExceeded { best }) => {
                    report.note = Some(format!("fooling-set search budget exceeded (best {best})"));
                    None
                }
                Err(e) => return Err(e),
            }
        }
    };
    if let Some(p) = certificate {
        report.lower_bound = p.len();
        report.lower_bound_kind = LowerBoundKind::FoolingSet;
        report.fooling_set = Some(p.to_strings(&alphabet));
    }
    report.tight = report.lower_bound_kind != LowerBoundKind::None
        && report.lower_bound == report.constructed_size
        && report.constructed_size == report.formula_value;
    if op == Operation::Reverse && !report.tight && report.note.is_none() {
        report.note = Some(format!(
            "lower bound m+1 not machine-certified; fooling sets certify at least {}",
            report.lower_bound
        ));
    }
    debug_assert!(report.lower_bound <= report.constructed_size);
    Ok(report)
}
