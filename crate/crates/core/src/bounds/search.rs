//! Automated fooling-set discovery.
//!
//! Whether x·w ∈ L depends only on the class of x in the minimal DFA of L
//! and the class of w (read backwards) in the minimal DFA of L^R. Two
//! pairs sharing both classes never distinguish each other, so one
//! representative per (left class, right class) loses nothing. The
//! candidates are the classes whose shortest representatives fit within
//! `max_word_len`; the fooling set is a clique in their compatibility graph.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automata::{determinize, minimize, Dfa, Nfa, StateId, Word};
use crate::constructions::reverse_nfa;

use super::{verify_fooling_set, BoundsError, FoolingSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_word_len: usize,
    pub target_size: usize,
    /// Seed for the greedy restarts.
    pub seed: u64,
    /// Largest candidate graph solved exactly.
    pub exact_limit: usize,
    pub restarts: usize,
    /// Candidate graphs larger than this are truncated and reported as a
    /// budget failure unless the greedy pass still reaches the target.
    pub max_candidates: usize,
}

impl SearchOptions {
    pub fn new(max_word_len: usize, target_size: usize) -> Self {
        SearchOptions {
            max_word_len,
            target_size,
            seed: 0,
            exact_limit: 24,
            restarts: 64,
            max_candidates: 4096,
        }
    }
}

pub fn search_fooling_set(
    a: &Nfa,
    max_word_len: usize,
    target_size: usize,
) -> Result<Option<FoolingSet>, BoundsError> {
    search_fooling_set_with(a, &SearchOptions::new(max_word_len, target_size))
}

/// Shortest (length-lex least) word reaching each live state within
/// `max_len` steps.
fn class_representatives(dfa: &Dfa, max_len: usize) -> Vec<(StateId, Word)> {
    let mut seen = vec![false; dfa.state_count()];
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(dfa.start(), Word::empty())]);
    seen[dfa.start()] = true;
    while let Some((q, w)) = queue.pop_front() {
        if Some(q) != dfa.sink() {
            out.push((q, w.clone()));
        }
        if w.len() == max_len {
            continue;
        }
        for sym in dfa.alphabet().symbols() {
            let r = dfa.next(q, sym);
            if !seen[r] {
                seen[r] = true;
                let mut v = w.0.clone();
                v.push(sym);
                queue.push_back((r, Word(v)));
            }
        }
    }
    out
}

pub fn search_fooling_set_with(
    a: &Nfa,
    opts: &SearchOptions,
) -> Result<Option<FoolingSet>, BoundsError> {
    if opts.target_size == 0 {
        return Err(BoundsError::EmptyTarget);
    }
    let left = minimize(&determinize(a));
    let right = minimize(&determinize(&reverse_nfa(a)));

    let lefts = class_representatives(&left, opts.max_word_len);
    let rights: Vec<(StateId, Word)> = class_representatives(&right, opts.max_word_len)
        .into_iter()
        .map(|(q, w)| (q, w.reversed()))
        .collect();

    // Candidate node: (left state, x, w) with x·w ∈ L.
    let mut nodes: Vec<(StateId, &Word, &Word)> = Vec::new();
    for (p, x) in &lefts {
        for (_, w) in &rights {
            if left.is_final(left.run(*p, w)) {
                nodes.push((*p, x, w));
            }
        }
    }
    let over_budget = nodes.len() > opts.max_candidates;
    nodes.truncate(opts.max_candidates);

    let n = nodes.len();
    let member = |i: usize, j: usize| left.is_final(left.run(nodes[i].0, nodes[j].2));
    let mut compatible = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let ok = !(member(i, j) && member(j, i));
            compatible[i][j] = ok;
            compatible[j][i] = ok;
        }
    }

    let clique = if n <= opts.exact_limit {
        max_clique_exact(&compatible)
    } else {
        greedy_clique(&compatible, opts.seed, opts.restarts)
    };

    if clique.len() < opts.target_size {
        if over_budget {
            return Err(BoundsError::SearchBudgetExceeded { best: clique.len() });
        }
        return Ok(None);
    }
    let set = FoolingSet {
        pairs: clique
            .iter()
            .map(|&i| (nodes[i].1.clone(), nodes[i].2.clone()))
            .collect(),
    };
    assert!(
        verify_fooling_set(a, &set),
        "search produced an invalid fooling set"
    );
    Ok(Some(set))
}

/// Maximum clique by branch and bound over bitmasks; `n <= 64`.
fn max_clique_exact(compatible: &[Vec<bool>]) -> Vec<usize> {
    let n = compatible.len();
    assert!(n <= 64);
    let adj: Vec<u64> = compatible
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c)
                .fold(0u64, |m, (j, _)| m | (1 << j))
        })
        .collect();

    fn expand(adj: &[u64], current: &mut Vec<usize>, candidates: u64, best: &mut Vec<usize>) {
        if candidates == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if current.len() + rest.count_ones() as usize <= best.len() {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= !(1 << v);
            current.push(v);
            expand(adj, current, rest & adj[v], best);
            current.pop();
        }
        if current.len() > best.len() {
            *best = current.clone();
        }
    }

    let mut best = Vec::new();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(&adj, &mut Vec::new(), all, &mut best);
    best
}

/// Greedy cliques over `restarts` orders: the first by descending degree,
/// the rest shuffled from `seed`. Returns the largest found.
fn greedy_clique(compatible: &[Vec<bool>], seed: u64, restarts: usize) -> Vec<usize> {
    let n = compatible.len();
    let degree: Vec<usize> = compatible
        .iter()
        .map(|row| row.iter().filter(|&&c| c).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(degree[i]), i));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Vec<usize> = Vec::new();
    for round in 0..restarts.max(1) {
        if round > 0 {
            order.shuffle(&mut rng);
        }
        let mut clique: Vec<usize> = Vec::new();
        for &v in &order {
            if clique.iter().all(|&u| compatible[u][v]) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            clique.sort_unstable();
            best = clique;
        }
    }
    best
}
