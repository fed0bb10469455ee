//! Exact NSC for tiny languages by enumerating every small λ-free NFA.
//!
//! A k-state candidate has start 0, a final-state bitmask and one successor
//! bitmask per (state, symbol). Candidates are first screened against the
//! target on all words of length ≤ 2k, then reduced modulo relabelling of
//! the non-start states, and only then compared exactly through minimal DFAs.

use rayon::prelude::*;

use crate::automata::{determinize, minimize, Dfa, Nfa, Symbol, Transition};

use super::BoundsError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    /// Largest admissible `max_states`; `None` uses [`default_ceiling`].
    pub ceiling: Option<usize>,
    /// Upper limit on the total number of enumerated candidates.
    pub budget: u128,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            ceiling: None,
            budget: 10_000_000,
        }
    }
}

/// 3 states for alphabets of at most two symbols, 2 otherwise.
pub fn default_ceiling(alphabet_size: usize) -> usize {
    if alphabet_size <= 2 {
        3
    } else {
        2
    }
}

fn candidate_count(k: usize, symbols: usize) -> u128 {
    let bits = k * k * symbols + k.saturating_sub(1);
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

pub fn nsc_exhaustive(a: &Nfa, max_states: usize) -> Result<Option<usize>, BoundsError> {
    nsc_exhaustive_with(a, max_states, &ExhaustiveOptions::default())
}

/// The least k ≤ `max_states` such that some k-state λ-free NFA over the
/// same alphabet accepts L(a), or `None` if there is none.
pub fn nsc_exhaustive_with(
    a: &Nfa,
    max_states: usize,
    opts: &ExhaustiveOptions,
) -> Result<Option<usize>, BoundsError> {
    let symbols = a.alphabet().len();
    let ceiling = opts.ceiling.unwrap_or_else(|| default_ceiling(symbols));
    let candidates = (1..=max_states)
        .map(|k| candidate_count(k, symbols))
        .fold(0u128, u128::saturating_add);
    if max_states > ceiling || max_states > 8 || candidates > opts.budget {
        return Err(BoundsError::BudgetExceeded {
            max_states,
            ceiling,
            candidates,
            budget: opts.budget,
        });
    }
    let target = minimize(&determinize(a));
    Ok((1..=max_states).find(|&k| exists_with_states(&target, k)))
}

/// Membership of every word up to `depth`, in breadth-first tree order:
/// node `i` has children `i * s + 1 + x`.
fn word_tree(target: &Dfa, depth: usize) -> Vec<bool> {
    let s = target.alphabet().len();
    let mut states = vec![target.start()];
    let mut layer_start = 0;
    for _ in 0..depth {
        let layer_end = states.len();
        if s == 0 {
            break;
        }
        for i in layer_start..layer_end {
            for x in 0..s {
                states.push(target.next(states[i], Symbol(x as u8)));
            }
        }
        layer_start = layer_end;
    }
    states.iter().map(|&q| target.is_final(q)).collect()
}

struct Candidate<'a> {
    k: usize,
    s: usize,
    finals: u8,
    masks: &'a [u8],
}

impl Candidate<'_> {
    fn succ(&self, set: u8, x: usize) -> u8 {
        let mut out = 0;
        let mut bits = set;
        while bits != 0 {
            let q = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out |= self.masks[q * self.s + x];
        }
        out
    }

    fn agrees_on(&self, accept: &[bool], sets: &mut [u8]) -> bool {
        sets[0] = 1;
        for i in 0..accept.len() {
            if accept[i] != (sets[i] & self.finals != 0) {
                return false;
            }
            let first_child = i * self.s + 1;
            if first_child < accept.len() {
                for x in 0..self.s {
                    sets[first_child + x] = self.succ(sets[i], x);
                }
            }
        }
        true
    }

    /// `true` unless relabelling the non-start states yields a
    /// lexicographically smaller encoding.
    fn is_canonical(&self) -> bool {
        let rest: Vec<usize> = (1..self.k).collect();
        let mut perm = rest.clone();
        let own: Vec<u8> = std::iter::once(self.finals)
            .chain(self.masks.iter().copied())
            .collect();
        while next_permutation(&mut perm) {
            let mut map = vec![0usize; self.k];
            for (from, to) in rest.iter().zip(&perm) {
                map[*from] = *to;
            }
            let remap = |set: u8| {
                (0..self.k)
                    .filter(|&q| set & (1 << q) != 0)
                    .fold(0u8, |acc, q| acc | (1 << map[q]))
            };
            let mut other = vec![0u8; own.len()];
            other[0] = remap(self.finals);
            for q in 0..self.k {
                for x in 0..self.s {
                    other[1 + map[q] * self.s + x] = remap(self.masks[q * self.s + x]);
                }
            }
            if other < own {
                return false;
            }
        }
        true
    }

    fn to_nfa(&self, like: &Dfa) -> Nfa {
        let mut transitions = Vec::new();
        for q in 0..self.k {
            for x in 0..self.s {
                let mask = self.masks[q * self.s + x];
                transitions.extend((0..self.k).filter(|r| mask & (1 << r) != 0).map(|r| {
                    Transition {
                        src: q,
                        label: Some(Symbol(x as u8)),
                        dst: r,
                    }
                }));
            }
        }
        let finals = (0..self.k).filter(|q| self.finals & (1 << q) != 0);
        Nfa::from_parts(like.alphabet().clone(), self.k, 0, finals, transitions)
            .expect("candidate indices in range")
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn exists_with_states(target: &Dfa, k: usize) -> bool {
    let s = target.alphabet().len();
    let accept = word_tree(target, 2 * k);
    let slots = k * s;
    let width = k as u32;
    let combos: u64 = 1u64 << (slots as u32 * width);
    let lambda_bit = u8::from(accept[0]);

    (0..combos).into_par_iter().any(|code| {
        let masks: Vec<u8> = (0..slots)
            .map(|i| ((code >> (i as u32 * width)) & ((1 << width) - 1)) as u8)
            .collect();
        let mut sets = vec![0u8; accept.len()];
        (0u8..(1 << k))
            .filter(|f| f & 1 == lambda_bit)
            .any(|finals| {
                let cand = Candidate {
                    k,
                    s,
                    finals,
                    masks: &masks,
                };
                cand.agrees_on(&accept, &mut sets)
                    && cand.is_canonical()
                    && minimize(&determinize(&cand.to_nfa(target))) == *target
            })
    })
}
