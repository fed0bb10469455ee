use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::nfa::{remove_lambda, Nfa, StateId, Transition};
use super::{Alphabet, AutomatonError, Symbol, Word};

/// A complete deterministic automaton. `table[q * |Σ| + a]` is δ(q, a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    start: StateId,
    finals: Vec<bool>,
    table: Vec<StateId>,
    sink: Option<StateId>,
}

impl Dfa {
    /// Builds a complete DFA from a row-major transition table.
    pub fn from_table(
        alphabet: Alphabet,
        start: StateId,
        finals: Vec<bool>,
        table: Vec<StateId>,
    ) -> Result<Self, AutomatonError> {
        let n = finals.len();
        if n == 0 {
            return Err(AutomatonError::NoStates);
        }
        if table.len() != n * alphabet.len() {
            return Err(AutomatonError::BadTable {
                got: table.len(),
                expected: n * alphabet.len(),
            });
        }
        if let Some(&bad) = table.iter().chain([&start]).find(|&&q| q >= n) {
            return Err(AutomatonError::StateOutOfRange {
                state: bad,
                count: n,
            });
        }
        let mut dfa = Dfa {
            alphabet,
            start,
            finals,
            table,
            sink: None,
        };
        dfa.sink = dfa.find_sink();
        Ok(dfa)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    /// States other than the designated sink.
    pub fn nonsink_count(&self) -> usize {
        self.state_count() - usize::from(self.sink.is_some())
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn sink(&self) -> Option<StateId> {
        self.sink
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: StateId, sym: Symbol) -> StateId {
        self.table[q * self.alphabet.len() + sym.index()]
    }

    pub fn run(&self, from: StateId, word: &Word) -> StateId {
        word.symbols().iter().fold(from, |q, &s| self.next(q, s))
    }

    pub fn accepts(&self, word: &Word) -> bool {
        if word.symbols().iter().any(|&s| !self.alphabet.contains(s)) {
            return false;
        }
        self.finals[self.run(self.start, word)]
    }

    /// Swaps final and non-final states.
    pub fn complement(&self) -> Dfa {
        let mut out = Dfa {
            alphabet: self.alphabet.clone(),
            start: self.start,
            finals: self.finals.iter().map(|f| !f).collect(),
            table: self.table.clone(),
            sink: None,
        };
        out.sink = out.find_sink();
        out
    }

    /// The DFA viewed as an NFA with the same states.
    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.len();
        let transitions = (0..self.state_count()).flat_map(|q| {
            self.alphabet.symbols().map(move |s| Transition {
                src: q,
                label: Some(s),
                dst: self.table[q * k + s.index()],
            })
        });
        let finals = (0..self.state_count()).filter(|&q| self.finals[q]);
        Nfa::from_parts(
            self.alphabet.clone(),
            self.state_count(),
            self.start,
            finals,
            transitions,
        )
        .expect("a valid DFA is a valid NFA")
    }

    /// Renumbers the reachable states breadth-first from the start, taking
    /// symbols in alphabet order. Unreachable states are dropped.
    pub fn canonical(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut order = vec![usize::MAX; self.state_count()];
        let mut visit = vec![self.start];
        order[self.start] = 0;
        let mut i = 0;
        while i < visit.len() {
            let q = visit[i];
            for s in 0..k {
                let r = self.table[q * k + s];
                if order[r] == usize::MAX {
                    order[r] = visit.len();
                    visit.push(r);
                }
            }
            i += 1;
        }
        let table = visit
            .iter()
            .flat_map(|&q| (0..k).map(move |s| q * k + s))
            .map(|idx| order[self.table[idx]])
            .collect();
        let finals = visit.iter().map(|&q| self.finals[q]).collect();
        let mut out = Dfa {
            alphabet: self.alphabet.clone(),
            start: 0,
            finals,
            table,
            sink: None,
        };
        out.sink = out.find_sink();
        out
    }

    /// `true` if the reachable parts are identical up to state renaming.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.canonical() == other.canonical()
    }

    fn find_sink(&self) -> Option<StateId> {
        let k = self.alphabet.len();
        (0..self.state_count())
            .find(|&q| !self.finals[q] && (0..k).all(|s| self.table[q * k + s] == q))
    }
}

/// Subset construction over reachable subsets. The empty subset, when
/// reached, becomes an explicit sink so the result is complete.
pub fn determinize(a: &Nfa) -> Dfa {
    determinize_with_subsets(a).0
}

/// Like [`determinize`], also returning the NFA subset behind each DFA state.
pub fn determinize_with_subsets(a: &Nfa) -> (Dfa, Vec<FixedBitSet>) {
    let a = remove_lambda(a);
    let n = a.state_count();
    let k = a.alphabet().len();
    let delta = a.delta();
    let mut start = FixedBitSet::with_capacity(n);
    start.insert(a.start());
    let mut index: HashMap<FixedBitSet, StateId> = HashMap::new();
    index.insert(start.clone(), 0);
    let mut subsets = vec![start];
    let mut table = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        // Rows are filled in BFS order, which equals insertion order.
        debug_assert_eq!(table.len(), i * k);
        for s in 0..k {
            let mut succ = FixedBitSet::with_capacity(n);
            for q in subsets[i].ones() {
                succ.extend(delta[q][s].iter().copied());
            }
            let j = match index.get(&succ) {
                Some(&j) => j,
                None => {
                    let j = subsets.len();
                    index.insert(succ.clone(), j);
                    subsets.push(succ);
                    queue.push_back(j);
                    j
                }
            };
            table.push(j);
        }
    }
    let finals = subsets
        .iter()
        .map(|set| set.ones().any(|q| a.is_final(q)))
        .collect();
    let dfa = Dfa::from_table(a.alphabet().clone(), 0, finals, table)
        .expect("subset construction yields a complete table");
    (dfa, subsets)
}

/// Hopcroft partition refinement followed by canonical renumbering, so two
/// DFAs for the same language minimize to equal values.
pub fn minimize(d: &Dfa) -> Dfa {
    let d = d.canonical();
    let n = d.state_count();
    let k = d.alphabet.len();

    let mut inverse = vec![vec![Vec::new(); n]; k];
    for q in 0..n {
        for s in 0..k {
            inverse[s][d.table[q * k + s]].push(q);
        }
    }

    let (fin, nonfin): (Vec<StateId>, Vec<StateId>) = (0..n).partition(|&q| d.finals[q]);
    let mut blocks: Vec<Vec<StateId>> = Vec::new();
    let mut block_of = vec![0usize; n];
    for part in [fin, nonfin] {
        if !part.is_empty() {
            for &q in &part {
                block_of[q] = blocks.len();
            }
            blocks.push(part);
        }
    }

    let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; blocks.len()];
    let mut work: Vec<(usize, usize)> = Vec::new();
    if blocks.len() == 2 {
        let smaller = if blocks[0].len() <= blocks[1].len() {
            0
        } else {
            1
        };
        for s in 0..k {
            work.push((smaller, s));
            pending[smaller][s] = true;
        }
    }

    let mut marked = vec![false; n];
    while let Some((splitter, s)) = work.pop() {
        pending[splitter][s] = false;
        let mut preds: Vec<StateId> = Vec::new();
        for &q in &blocks[splitter] {
            for &p in &inverse[s][q] {
                if !marked[p] {
                    marked[p] = true;
                    preds.push(p);
                }
            }
        }
        let mut touched: Vec<usize> = preds.iter().map(|&p| block_of[p]).collect();
        touched.sort_unstable();
        touched.dedup();
        for b in touched {
            let (inside, outside): (Vec<StateId>, Vec<StateId>) =
                blocks[b].iter().partition(|&&q| marked[q]);
            if outside.is_empty() {
                continue;
            }
            let new_block = blocks.len();
            for &q in &outside {
                block_of[q] = new_block;
            }
            blocks[b] = inside;
            blocks.push(outside);
            pending.push(vec![false; k]);
            for t in 0..k {
                if pending[b][t] {
                    pending[new_block][t] = true;
                    work.push((new_block, t));
                } else {
                    let pick = if blocks[b].len() <= blocks[new_block].len() {
                        b
                    } else {
                        new_block
                    };
                    pending[pick][t] = true;
                    work.push((pick, t));
                }
            }
        }
        for p in preds {
            marked[p] = false;
        }
    }

    let table = (0..blocks.len())
        .flat_map(|b| {
            let rep = blocks[b][0];
            let row: Vec<StateId> = (0..k).map(|s| block_of[d.table[rep * k + s]]).collect();
            row
        })
        .collect();
    let finals = blocks.iter().map(|blk| d.finals[blk[0]]).collect();
    Dfa::from_table(d.alphabet.clone(), block_of[d.start], finals, table)
        .expect("quotient of a complete DFA is complete")
        .canonical()
}

/// Language equality via minimal DFAs in canonical numbering.
pub fn equivalent(a: &Nfa, b: &Nfa) -> Result<bool, AutomatonError> {
    a.alphabet().ensure_same(b.alphabet())?;
    Ok(minimize(&determinize(a)) == minimize(&determinize(b)))
}
