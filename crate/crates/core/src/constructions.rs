//! State-optimal NFA constructions for operations on suffix-free languages.
//!
//! Every construction relies only on the start state having no incoming
//! edges. That is checked structurally on every call; full suffix-freeness
//! of the operands is verified only by a [`Constructor`] in strict mode.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::automata::{
    product_intersection_with_pairs, remove_lambda, trim_with_map, Alphabet, AutomatonError, Dfa,
    Nfa, StateId, Symbol, Transition,
};
use crate::suffix_free::{is_suffix_free, start_in_transition};

/// Which argument of an operation a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    First,
    Second,
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operand::First => "first",
            Operand::Second => "second",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(
        "{operand} operand is not non-returning: start state {start} has an in-transition {src} --{label}--> {start}"
    )]
    NonReturning {
        operand: Operand,
        start: StateId,
        src: StateId,
        label: String,
    },
    #[error(
        "{operand} operand is not suffix-free: \"{shorter}\" is a proper suffix of \"{longer}\" and both are accepted"
    )]
    NotSuffixFree {
        operand: Operand,
        shorter: String,
        longer: String,
    },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Runs the constructions, optionally verifying suffix-freeness of operands.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Constructor {
    pub strict: bool,
}

impl Constructor {
    pub const PERMISSIVE: Constructor = Constructor { strict: false };
    pub const STRICT: Constructor = Constructor { strict: true };

    fn operand(
        &self,
        a: &Nfa,
        which: Operand,
        need_non_returning: bool,
    ) -> Result<Nfa, ConstructionError> {
        let a = remove_lambda(a);
        if need_non_returning {
            if let Some(t) = start_in_transition(&a) {
                return Err(ConstructionError::NonReturning {
                    operand: which,
                    start: a.start(),
                    src: t.src,
                    label: t
                        .label
                        .map_or("λ".to_string(), |s| a.alphabet().label(s).to_string()),
                });
            }
        }
        if self.strict {
            if let Some((shorter, longer)) = is_suffix_free(&a).witness() {
                return Err(ConstructionError::NotSuffixFree {
                    operand: which,
                    shorter: a.alphabet().render(shorter),
                    longer: a.alphabet().render(longer),
                });
            }
        }
        Ok(a)
    }

    /// L(a) ∪ L(b) with `m + n - 1` states: the two start states merge into
    /// state 0, followed by the other states of `a` and then of `b`.
    pub fn union(&self, a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
        a.alphabet().ensure_same(b.alphabet())?;
        let a = self.operand(a, Operand::First, true)?;
        let b = self.operand(b, Operand::Second, true)?;
        let map_a = merge_start_map(&a, 1);
        let map_b = merge_start_map(&b, a.state_count());
        let state_count = a.state_count() + b.state_count() - 1;

        let mut transitions = BTreeSet::new();
        let mut finals = BTreeSet::new();
        for (nfa, map) in [(&a, &map_a), (&b, &map_b)] {
            transitions.extend(nfa.transitions().map(|t| Transition {
                src: map[t.src],
                label: t.label,
                dst: map[t.dst],
            }));
            finals.extend(nfa.finals().iter().map(|&f| map[f]));
        }
        let out = Nfa::from_parts(a.alphabet().clone(), state_count, 0, finals, transitions)?;
        assert_eq!(out.state_count(), a.state_count() + b.state_count() - 1);
        Ok(out)
    }

    /// L(a)·L(b) with `m + n - 1` states. The start of `b` is dropped and
    /// every final state of `a` takes over its outgoing edges. Finals are
    /// those of `b`, plus those of `a` when λ ∈ L(b).
    pub fn concat(&self, a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
        a.alphabet().ensure_same(b.alphabet())?;
        let a = self.operand(a, Operand::First, false)?;
        let b = self.operand(b, Operand::Second, true)?;
        let map_b = merge_start_map(&b, a.state_count());
        let bridge = |q: StateId| map_b[q];
        let state_count = a.state_count() + b.state_count() - 1;

        let mut transitions: BTreeSet<Transition> = a.transitions().copied().collect();
        for t in b.transitions() {
            if t.src != b.start() {
                transitions.insert(Transition {
                    src: bridge(t.src),
                    label: t.label,
                    dst: bridge(t.dst),
                });
            }
        }
        let start_edges: Vec<&Transition> =
            b.transitions().filter(|t| t.src == b.start()).collect();
        for &f in a.finals() {
            for t in &start_edges {
                transitions.insert(Transition {
                    src: f,
                    label: t.label,
                    dst: bridge(t.dst),
                });
            }
        }
        let mut finals: BTreeSet<StateId> = b
            .finals()
            .iter()
            .filter(|&&f| f != b.start())
            .map(|&f| bridge(f))
            .collect();
        if b.is_final(b.start()) {
            finals.extend(a.finals().iter().copied());
        }
        let out = Nfa::from_parts(
            a.alphabet().clone(),
            state_count,
            a.start(),
            finals,
            transitions,
        )?;
        assert_eq!(out.state_count(), a.state_count() + b.state_count() - 1);
        Ok(out)
    }

    /// L(a) ∩ L(b) as the trimmed reachable product.
    pub fn intersect(&self, a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
        Ok(self.intersect_parts(a, b)?.trimmed)
    }

    /// The intersection together with the product pairs behind each state,
    /// before and after trimming.
    pub fn intersect_parts(
        &self,
        a: &Nfa,
        b: &Nfa,
    ) -> Result<IntersectionParts, ConstructionError> {
        a.alphabet().ensure_same(b.alphabet())?;
        let a = self.operand(a, Operand::First, true)?;
        let b = self.operand(b, Operand::Second, true)?;
        let (product, product_pairs) = product_intersection_with_pairs(&a, &b)?;
        let (trimmed, origin) = trim_with_map(&product);
        let trimmed_pairs = origin.iter().map(|&q| product_pairs[q]).collect();
        let parts = IntersectionParts {
            starts: (a.start(), b.start()),
            product,
            product_pairs,
            trimmed,
            trimmed_pairs,
        };
        // Non-returning operands never reach a pair with exactly one start.
        assert!(parts.mixed_start_pairs().is_empty());
        let (m, n) = (a.state_count(), b.state_count());
        assert!(parts.trimmed.state_count() <= (m * n + 2).saturating_sub(m + n).max(1));
        Ok(parts)
    }

    /// L(a)* on the same states: final states copy the start's outgoing
    /// edges and the start becomes final.
    pub fn star(&self, a: &Nfa) -> Result<Nfa, ConstructionError> {
        let a = self.operand(a, Operand::First, true)?;
        let mut transitions: BTreeSet<Transition> = a.transitions().copied().collect();
        let start_edges: Vec<Transition> = a
            .transitions()
            .filter(|t| t.src == a.start())
            .copied()
            .collect();
        for &f in a.finals() {
            for t in &start_edges {
                transitions.insert(Transition { src: f, ..*t });
            }
        }
        let mut finals = a.finals().clone();
        finals.insert(a.start());
        let out = Nfa::from_parts(
            a.alphabet().clone(),
            a.state_count(),
            a.start(),
            finals,
            transitions,
        )?;
        assert_eq!(out.state_count(), a.state_count());
        Ok(out)
    }

    /// L(a)^R with `m + 1` states: edges flipped, a fresh start (state 0)
    /// with λ-edges to the old finals, old start final, then λ-removal.
    pub fn reverse(&self, a: &Nfa) -> Result<Nfa, ConstructionError> {
        let a = self.operand(a, Operand::First, false)?;
        Ok(reverse_unchecked(&a))
    }

    /// Complement of L(a) as a complete DFA with at most `2^(m-1) + 1`
    /// states. The subset construction starts from {s}; because nothing
    /// enters s, every other reachable subset avoids it.
    pub fn complement(&self, a: &Nfa) -> Result<Dfa, ConstructionError> {
        let a = self.operand(a, Operand::First, true)?;
        let m = a.state_count();
        let k = a.alphabet().len();
        let delta = a.delta();
        let s = a.start();

        let mut subsets: Vec<FixedBitSet> = Vec::new();
        let mut index = std::collections::HashMap::new();
        let mut table = Vec::new();
        // State 0 is {s}; its row is filled from δ(s, ·) directly.
        let mut intern = |set: FixedBitSet, subsets: &mut Vec<FixedBitSet>| -> StateId {
            debug_assert!(!set.contains(s));
            *index.entry(set.clone()).or_insert_with(|| {
                subsets.push(set);
                subsets.len()
            })
        };
        for sym in 0..k {
            let mut set = FixedBitSet::with_capacity(m);
            set.extend(delta[s][sym].iter().copied());
            table.push(intern(set, &mut subsets));
        }
        let mut i = 0;
        while i < subsets.len() {
            for sym in 0..k {
                let mut set = FixedBitSet::with_capacity(m);
                for q in subsets[i].ones() {
                    set.extend(delta[q][sym].iter().copied());
                }
                table.push(intern(set, &mut subsets));
            }
            i += 1;
        }
        let mut finals = vec![!a.is_final(s)];
        finals.extend(subsets.iter().map(|set| !set.ones().any(|q| a.is_final(q))));
        let dfa = Dfa::from_table(a.alphabet().clone(), 0, finals, table)?;
        if m <= 64 {
            assert!((dfa.state_count() as u128) <= (1u128 << (m - 1)) + 1);
        }
        Ok(dfa)
    }
}

/// The pieces of an intersection construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionParts {
    /// Start states of the two operands.
    pub starts: (StateId, StateId),
    /// Reachable product, before trimming.
    pub product: Nfa,
    pub product_pairs: Vec<(StateId, StateId)>,
    pub trimmed: Nfa,
    pub trimmed_pairs: Vec<(StateId, StateId)>,
}

impl IntersectionParts {
    /// Reachable pairs `(s1, q)` with `q != s2` or `(p, s2)` with `p != s1`.
    pub fn mixed_start_pairs(&self) -> Vec<(StateId, StateId)> {
        let (s1, s2) = self.starts;
        self.product_pairs
            .iter()
            .chain(&self.trimmed_pairs)
            .filter(|&&(p, q)| (p == s1) != (q == s2))
            .copied()
            .collect()
    }
}

/// Maps a state of `a` into a merged numbering where `a`'s start becomes 0
/// and its other states are packed from `offset` on.
fn merge_start_map(a: &Nfa, offset: StateId) -> Vec<StateId> {
    let mut next = offset;
    (0..a.state_count())
        .map(|q| {
            if q == a.start() {
                0
            } else {
                next += 1;
                next - 1
            }
        })
        .collect()
}

pub(crate) fn reverse_unchecked(a: &Nfa) -> Nfa {
    let a = remove_lambda(a);
    let mut transitions: Vec<Transition> = a
        .transitions()
        .map(|t| Transition {
            src: t.dst + 1,
            label: t.label,
            dst: t.src + 1,
        })
        .collect();
    transitions.extend(a.finals().iter().map(|&f| Transition {
        src: 0,
        label: None,
        dst: f + 1,
    }));
    let flipped = Nfa::from_parts(
        a.alphabet().clone(),
        a.state_count() + 1,
        0,
        [a.start() + 1],
        transitions,
    )
    .expect("indices stay in range");
    let out = remove_lambda(&flipped);
    debug_assert_eq!(out.state_count(), a.state_count() + 1);
    out
}

pub fn union_sf(a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
    Constructor::PERMISSIVE.union(a, b)
}

pub fn concat_sf(a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
    Constructor::PERMISSIVE.concat(a, b)
}

pub fn intersect_sf(a: &Nfa, b: &Nfa) -> Result<Nfa, ConstructionError> {
    Constructor::PERMISSIVE.intersect(a, b)
}

pub fn star_sf(a: &Nfa) -> Result<Nfa, ConstructionError> {
    Constructor::PERMISSIVE.star(a)
}

/// Reversal of any automaton; never fails.
pub fn reverse_nfa(a: &Nfa) -> Nfa {
    reverse_unchecked(a)
}

pub fn complement_sf(a: &Nfa) -> Result<Dfa, ConstructionError> {
    Constructor::PERMISSIVE.complement(a)
}

/// {w : c·w ∈ L(a)} over the same alphabet. State 0 is a fresh start whose
/// x-edges lead to ⋃ δ(p, x) over p ∈ δ(s, c); the states of `a` follow.
pub fn left_quotient_symbol(a: &Nfa, c: Symbol) -> Result<Nfa, AutomatonError> {
    let a = remove_lambda(a);
    if !a.alphabet().contains(c) {
        return Err(AutomatonError::SymbolOutOfRange {
            symbol: c.index(),
            size: a.alphabet().len(),
        });
    }
    let delta = a.delta();
    let after_c = &delta[a.start()][c.index()];
    let mut transitions: BTreeSet<Transition> = a
        .transitions()
        .map(|t| Transition {
            src: t.src + 1,
            label: t.label,
            dst: t.dst + 1,
        })
        .collect();
    for sym in a.alphabet().symbols() {
        for &p in after_c {
            for &r in &delta[p][sym.index()] {
                transitions.insert(Transition {
                    src: 0,
                    label: Some(sym),
                    dst: r + 1,
                });
            }
        }
    }
    let mut finals: BTreeSet<StateId> = a.finals().iter().map(|&f| f + 1).collect();
    if after_c.iter().any(|&p| a.is_final(p)) {
        finals.insert(0);
    }
    Nfa::from_parts(
        a.alphabet().clone(),
        a.state_count() + 1,
        0,
        finals,
        transitions,
    )
}

/// [`left_quotient_symbol`] restricted to words without `c`: every c-edge is
/// dropped and `c` is removed from the alphabet.
pub fn left_quotient_symbol_restricted(a: &Nfa, c: Symbol) -> Result<Nfa, AutomatonError> {
    let q = left_quotient_symbol(a, c)?;
    let labels = q
        .alphabet()
        .symbols()
        .filter(|&s| s != c)
        .map(|s| q.alphabet().label(s));
    let alphabet = Alphabet::new(labels)?;
    let shift = |s: Symbol| if s > c { Symbol(s.0 - 1) } else { s };
    let transitions = q
        .transitions()
        .filter(|t| t.label != Some(c))
        .map(|t| Transition {
            label: t.label.map(shift),
            ..*t
        });
    Nfa::from_parts(
        alphabet,
        q.state_count(),
        q.start(),
        q.finals().iter().copied(),
        transitions,
    )
}
