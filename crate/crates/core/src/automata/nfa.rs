use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::{Alphabet, AutomatonError, Symbol, Word};

pub type StateId = usize;

/// One edge of the transition relation. `label == None` is a λ-edge.
///
/// The derived order (source, label, target) with λ before every symbol is
/// the canonical serialization order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub label: Option<Symbol>,
    pub dst: StateId,
}

/// A nondeterministic finite automaton with a single start state and
/// optional λ-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_count: usize,
    start: StateId,
    finals: BTreeSet<StateId>,
    transitions: BTreeSet<Transition>,
}

impl Nfa {
    pub fn from_parts(
        alphabet: Alphabet,
        state_count: usize,
        start: StateId,
        finals: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = Transition>,
    ) -> Result<Self, AutomatonError> {
        if state_count == 0 {
            return Err(AutomatonError::NoStates);
        }
        let check = |state: usize| {
            if state < state_count {
                Ok(())
            } else {
                Err(AutomatonError::StateOutOfRange {
                    state,
                    count: state_count,
                })
            }
        };
        check(start)?;
        let finals: BTreeSet<StateId> = finals.into_iter().collect();
        for &f in &finals {
            check(f)?;
        }
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        for t in &transitions {
            check(t.src)?;
            check(t.dst)?;
            if let Some(sym) = t.label {
                if !alphabet.contains(sym) {
                    return Err(AutomatonError::SymbolOutOfRange {
                        symbol: sym.index(),
                        size: alphabet.len(),
                    });
                }
            }
        }
        Ok(Nfa {
            alphabet,
            state_count,
            start,
            finals,
            transitions,
        })
    }

    pub fn builder(alphabet: Alphabet, state_count: usize) -> NfaBuilder {
        NfaBuilder {
            alphabet,
            state_count,
            start: 0,
            finals: BTreeSet::new(),
            transitions: BTreeSet::new(),
            error: None,
        }
    }

    /// The canonical automaton for ∅: one non-final state, no edges.
    pub fn empty(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            state_count: 1,
            start: 0,
            finals: BTreeSet::new(),
            transitions: BTreeSet::new(),
        }
    }

    /// The one-state automaton for {λ}.
    pub fn lambda_only(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            state_count: 1,
            start: 0,
            finals: BTreeSet::from([0]),
            transitions: BTreeSet::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn finals(&self) -> &BTreeSet<StateId> {
        &self.finals
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals.contains(&q)
    }

    pub fn transitions(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter()
    }

    pub fn transition_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn has_lambda(&self) -> bool {
        self.transitions.iter().any(|t| t.label.is_none())
    }

    /// Symbol successors as a `[state][symbol] -> targets` table; λ-edges ignored.
    pub fn delta(&self) -> Vec<Vec<Vec<StateId>>> {
        let mut table = vec![vec![Vec::new(); self.alphabet.len()]; self.state_count];
        for t in &self.transitions {
            if let Some(sym) = t.label {
                table[t.src][sym.index()].push(t.dst);
            }
        }
        table
    }

    fn lambda_adjacency(&self) -> Vec<Vec<StateId>> {
        let mut adj = vec![Vec::new(); self.state_count];
        for t in &self.transitions {
            if t.label.is_none() {
                adj[t.src].push(t.dst);
            }
        }
        adj
    }

    fn close(lambda: &[Vec<StateId>], set: &mut FixedBitSet) {
        let mut stack: Vec<StateId> = set.ones().collect();
        while let Some(q) = stack.pop() {
            for &r in &lambda[q] {
                if !set.put(r) {
                    stack.push(r);
                }
            }
        }
    }

    /// Membership by forward state-set simulation with λ-closure.
    pub fn accepts(&self, word: &Word) -> bool {
        let delta = self.delta();
        let lambda = self.lambda_adjacency();
        let mut current = FixedBitSet::with_capacity(self.state_count);
        current.insert(self.start);
        Self::close(&lambda, &mut current);
        for &sym in word.symbols() {
            if !self.alphabet.contains(sym) {
                return false;
            }
            let mut next = FixedBitSet::with_capacity(self.state_count);
            for q in current.ones() {
                next.extend(delta[q][sym.index()].iter().copied());
            }
            Self::close(&lambda, &mut next);
            if next.is_clear() {
                return false;
            }
            current = next;
        }
        current.ones().any(|q| self.finals.contains(&q))
    }

    /// Renames states through `map` (old → new) into a fresh automaton with
    /// `state_count` states; edges touching an unmapped state are dropped.
    pub(crate) fn relabel(&self, map: &[Option<StateId>], state_count: usize) -> Nfa {
        let start = map[self.start].expect("start state must be mapped");
        let finals = self.finals.iter().filter_map(|&f| map[f]);
        let transitions = self.transitions.iter().filter_map(|t| {
            Some(Transition {
                src: map[t.src]?,
                label: t.label,
                dst: map[t.dst]?,
            })
        });
        Nfa {
            alphabet: self.alphabet.clone(),
            state_count,
            start,
            finals: finals.collect(),
            transitions: transitions.collect(),
        }
    }
}

/// Incremental construction of an [`Nfa`] using character labels.
#[derive(Debug, Clone)]
pub struct NfaBuilder {
    alphabet: Alphabet,
    state_count: usize,
    start: StateId,
    finals: BTreeSet<StateId>,
    transitions: BTreeSet<Transition>,
    error: Option<AutomatonError>,
}

impl NfaBuilder {
    pub fn start(mut self, q: StateId) -> Self {
        self.start = q;
        self
    }

    pub fn final_state(mut self, q: StateId) -> Self {
        self.finals.insert(q);
        self
    }

    pub fn edge(mut self, src: StateId, label: char, dst: StateId) -> Self {
        match self.alphabet.symbol(label) {
            Ok(sym) => {
                self.transitions.insert(Transition {
                    src,
                    label: Some(sym),
                    dst,
                });
            }
            Err(e) => {
                self.error.get_or_insert(e);
            }
        }
        self
    }

    pub fn lambda(mut self, src: StateId, dst: StateId) -> Self {
        self.transitions.insert(Transition {
            src,
            label: None,
            dst,
        });
        self
    }

    pub fn build(self) -> Result<Nfa, AutomatonError> {
        if let Some(e) = self.error {
            return Err(e);
        }
        Nfa::from_parts(
            self.alphabet,
            self.state_count,
            self.start,
            self.finals,
            self.transitions,
        )
    }
}

/// Removes λ-edges without adding states: each state inherits the symbol
/// edges of its λ-closure and becomes final if the closure meets a final.
pub fn remove_lambda(a: &Nfa) -> Nfa {
    if !a.has_lambda() {
        return a.clone();
    }
    let lambda = a.lambda_adjacency();
    let mut transitions = BTreeSet::new();
    let mut finals = BTreeSet::new();
    let delta = a.delta();
    for p in 0..a.state_count {
        let mut closure = FixedBitSet::with_capacity(a.state_count);
        closure.insert(p);
        Nfa::close(&lambda, &mut closure);
        for q in closure.ones() {
            if a.finals.contains(&q) {
                finals.insert(p);
            }
            for sym in a.alphabet.symbols() {
                for &r in &delta[q][sym.index()] {
                    transitions.insert(Transition {
                        src: p,
                        label: Some(sym),
                        dst: r,
                    });
                }
            }
        }
    }
    Nfa {
        alphabet: a.alphabet.clone(),
        state_count: a.state_count,
        start: a.start,
        finals,
        transitions,
    }
}

fn graph_reach(
    n: usize,
    from: impl IntoIterator<Item = StateId>,
    adj: &[Vec<StateId>],
) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(n);
    let mut stack: Vec<StateId> = Vec::new();
    for q in from {
        if !seen.put(q) {
            stack.push(q);
        }
    }
    while let Some(q) = stack.pop() {
        for &r in &adj[q] {
            if !seen.put(r) {
                stack.push(r);
            }
        }
    }
    seen
}

/// Keeps only useful states. Also returns, for each new state, the old state
/// it came from.
pub fn trim_with_map(a: &Nfa) -> (Nfa, Vec<StateId>) {
    let n = a.state_count;
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for t in &a.transitions {
        fwd[t.src].push(t.dst);
        bwd[t.dst].push(t.src);
    }
    let reach = graph_reach(n, [a.start], &fwd);
    let coreach = graph_reach(n, a.finals.iter().copied(), &bwd);
    let mut useful = reach;
    useful.intersect_with(&coreach);
    if !useful.contains(a.start) {
        return (Nfa::empty(a.alphabet.clone()), vec![a.start]);
    }
    let mut map = vec![None; n];
    let mut origin = Vec::new();
    for q in useful.ones() {
        map[q] = Some(origin.len());
        origin.push(q);
    }
    (a.relabel(&map, origin.len()), origin)
}

/// Keeps only states that are reachable from the start and co-reachable to a
/// final state. Returns the one-state empty automaton when L(a) = ∅.
pub fn trim(a: &Nfa) -> Nfa {
    trim_with_map(a).0
}

/// Product construction over reachable pairs, numbered in breadth-first
/// order from `(start_a, start_b)`. The second component lists the pair each
/// product state stands for.
pub fn product_intersection_with_pairs(
    a: &Nfa,
    b: &Nfa,
) -> Result<(Nfa, Vec<(StateId, StateId)>), AutomatonError> {
    a.alphabet.ensure_same(&b.alphabet)?;
    let a = remove_lambda(a);
    let b = remove_lambda(b);
    let (da, db) = (a.delta(), b.delta());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut pairs = vec![(a.start, b.start)];
    index.insert((a.start, b.start), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut transitions = BTreeSet::new();
    while let Some(i) = queue.pop_front() {
        let (p, q) = pairs[i];
        for sym in a.alphabet.symbols() {
            for &p2 in &da[p][sym.index()] {
                for &q2 in &db[q][sym.index()] {
                    let j = *index.entry((p2, q2)).or_insert_with(|| {
                        pairs.push((p2, q2));
                        queue.push_back(pairs.len() - 1);
                        pairs.len() - 1
                    });
                    transitions.insert(Transition {
                        src: i,
                        label: Some(sym),
                        dst: j,
                    });
                }
            }
        }
    }
    let finals = pairs
        .iter()
        .enumerate()
        .filter(|(_, (p, q))| a.is_final(*p) && b.is_final(*q))
        .map(|(i, _)| i)
        .collect();
    let nfa = Nfa {
        alphabet: a.alphabet.clone(),
        state_count: pairs.len(),
        start: 0,
        finals,
        transitions,
    };
    Ok((nfa, pairs))
}

/// Accepts L(a) ∩ L(b).
pub fn product_intersection(a: &Nfa, b: &Nfa) -> Result<Nfa, AutomatonError> {
    product_intersection_with_pairs(a, b).map(|(nfa, _)| nfa)
}

/// Every accepted word of length at most `max_len`, in length-lex order.
pub fn enumerate_words(a: &Nfa, max_len: usize) -> Vec<Word> {
    let a = trim(&remove_lambda(a));
    let delta = a.delta();
    let mut out = Vec::new();
    let mut start = FixedBitSet::with_capacity(a.state_count);
    start.insert(a.start);
    if a.finals.is_empty() {
        return out;
    }
    let mut layer = vec![(Word::empty(), start)];
    for len in 0..=max_len {
        for (w, set) in &layer {
            if set.ones().any(|q| a.finals.contains(&q)) {
                out.push(w.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (w, set) in &layer {
            for sym in a.alphabet.symbols() {
                let mut succ = FixedBitSet::with_capacity(a.state_count);
                for q in set.ones() {
                    succ.extend(delta[q][sym.index()].iter().copied());
                }
                // In a trim automaton every live set leads to acceptance.
                if !succ.is_clear() {
                    let mut v = w.0.clone();
                    v.push(sym);
                    next.push((Word(v), succ));
                }
            }
        }
        layer = next;
    }
    out
}

/// The length-lex least accepted word, if any.
pub fn shortest_word(a: &Nfa) -> Option<Word> {
    let a = trim(&remove_lambda(a));
    if a.finals.is_empty() {
        return None;
    }
    let delta = a.delta();
    let mut start = FixedBitSet::with_capacity(a.state_count);
    start.insert(a.start);
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue = VecDeque::from([(Word::empty(), start)]);
    while let Some((w, set)) = queue.pop_front() {
        if set.ones().any(|q| a.finals.contains(&q)) {
            return Some(w);
        }
        for sym in a.alphabet.symbols() {
            let mut succ = FixedBitSet::with_capacity(a.state_count);
            for q in set.ones() {
                succ.extend(delta[q][sym.index()].iter().copied());
            }
            if !succ.is_clear() && seen.insert(succ.clone(), ()).is_none() {
                let mut v = w.0.clone();
                v.push(sym);
                queue.push_back((Word(v), succ));
            }
        }
    }
    None
}
