//! Suffix-freeness of a regular language and the non-returning property.
//!
//! L is suffix-free iff L ∩ Σ⁺·L = ∅. The check builds a λ-free automaton
//! for Σ⁺·(L ∖ {λ}), intersects it with the subset automaton of L, and looks
//! for an accepted word. A language that contains λ and any other word is
//! caught separately, since λ is a suffix of everything.

use crate::automata::{
    determinize, product_intersection, remove_lambda, shortest_word, Nfa, Transition, Word,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuffixFreeness {
    SuffixFree,
    /// Both words are accepted and `shorter` is a proper suffix of `longer`.
    NotSuffixFree {
        shorter: Word,
        longer: Word,
    },
}

impl SuffixFreeness {
    pub fn is_suffix_free(&self) -> bool {
        matches!(self, SuffixFreeness::SuffixFree)
    }

    pub fn witness(&self) -> Option<(&Word, &Word)> {
        match self {
            SuffixFreeness::SuffixFree => None,
            SuffixFreeness::NotSuffixFree { shorter, longer } => Some((shorter, longer)),
        }
    }
}

/// `true` iff no edge (λ or symbol) enters the start state.
pub fn is_non_returning(a: &Nfa) -> bool {
    a.transitions().all(|t| t.dst != a.start())
}

/// The first edge entering the start state, if any.
pub fn start_in_transition(a: &Nfa) -> Option<Transition> {
    a.transitions().find(|t| t.dst == a.start()).copied()
}

/// Σ⁺·(L(a) ∖ {λ}) for a λ-free `a`. State 0 is the start, state 1 has read
/// at least one symbol and mimics the start of `a`; states of `a` follow.
fn sigma_plus_nonempty(a: &Nfa) -> Nfa {
    const OFFSET: usize = 2;
    let delta = a.delta();
    let mut transitions = Vec::new();
    for sym in a.alphabet().symbols() {
        transitions.push(Transition {
            src: 0,
            label: Some(sym),
            dst: 1,
        });
        transitions.push(Transition {
            src: 1,
            label: Some(sym),
            dst: 1,
        });
        for &q in &delta[a.start()][sym.index()] {
            transitions.push(Transition {
                src: 1,
                label: Some(sym),
                dst: q + OFFSET,
            });
        }
    }
    transitions.extend(a.transitions().map(|t| Transition {
        src: t.src + OFFSET,
        label: t.label,
        dst: t.dst + OFFSET,
    }));
    let finals = a.finals().iter().map(|&f| f + OFFSET);
    Nfa::from_parts(
        a.alphabet().clone(),
        a.state_count() + OFFSET,
        0,
        finals,
        transitions,
    )
    .expect("indices stay in range")
}

/// Σ⁺: every nonempty word.
fn sigma_plus(a: &Nfa) -> Nfa {
    let transitions = a.alphabet().symbols().flat_map(|sym| {
        [
            Transition {
                src: 0,
                label: Some(sym),
                dst: 1,
            },
            Transition {
                src: 1,
                label: Some(sym),
                dst: 1,
            },
        ]
    });
    Nfa::from_parts(a.alphabet().clone(), 2, 0, [1], transitions).expect("two-state automaton")
}

/// Decides suffix-freeness. On failure the witness pair is chosen as
/// follows: the length-lex least word that has a nonempty proper suffix in
/// the language, paired with its shortest such suffix; if no such word
/// exists but λ and some other word are accepted, (λ, least nonempty word).
pub fn is_suffix_free(a: &Nfa) -> SuffixFreeness {
    let a = remove_lambda(a);
    let subset = determinize(&a).to_nfa();
    let conflict = product_intersection(&subset, &sigma_plus_nonempty(&a))
        .expect("same alphabet by construction");
    if let Some(longer) = shortest_word(&conflict) {
        let shorter = (1..longer.len())
            .map(|len| Word(longer.symbols()[longer.len() - len..].to_vec()))
            .find(|suffix| a.accepts(suffix))
            .expect("a conflicting word has an accepted nonempty proper suffix");
        return SuffixFreeness::NotSuffixFree { shorter, longer };
    }
    if a.accepts(&Word::empty()) {
        let nonempty = product_intersection(&a, &sigma_plus(&a)).expect("same alphabet");
        if let Some(longer) = shortest_word(&nonempty) {
            return SuffixFreeness::NotSuffixFree {
                shorter: Word::empty(),
                longer,
            };
        }
    }
    SuffixFreeness::SuffixFree
}
