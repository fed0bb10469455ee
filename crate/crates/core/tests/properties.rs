use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use suffix_nsc::automata::json::{from_json, to_json};
use suffix_nsc::automata::{
    all_words, determinize, enumerate_words, equivalent, minimize, product_intersection,
    remove_lambda, trim, Alphabet, Nfa, Symbol, Transition, Word,
};
use suffix_nsc::bounds::{nsc_exhaustive, search_fooling_set, verify_fooling_set};
use suffix_nsc::constructions::{
    complement_sf, concat_sf, intersect_sf, reverse_nfa, star_sf, union_sf,
};
use suffix_nsc::{is_non_returning, is_suffix_free};

/// Membership by explicit search over (state, position), independent of
/// the library's simulation.
fn naive_accepts(a: &Nfa, w: &Word) -> bool {
    let mut seen = HashSet::new();
    let mut stack = vec![(a.start(), 0usize)];
    while let Some((q, i)) = stack.pop() {
        if !seen.insert((q, i)) {
            continue;
        }
        if i == w.len() && a.is_final(q) {
            return true;
        }
        for t in a.transitions().filter(|t| t.src == q) {
            match t.label {
                None => stack.push((t.dst, i)),
                Some(s) if i < w.len() && w.0[i] == s => stack.push((t.dst, i + 1)),
                _ => {}
            }
        }
    }
    false
}

fn language(a: &Nfa, max_len: usize) -> BTreeSet<Word> {
    all_words(a.alphabet(), max_len)
        .into_iter()
        .filter(|w| naive_accepts(a, w))
        .collect()
}

fn word(v: &[Symbol]) -> Word {
    Word(v.to_vec())
}

fn arb_nfa(max_states: usize, labels: &'static str, lambda: bool) -> impl Strategy<Value = Nfa> {
    let alphabet = Alphabet::from_labels(labels).unwrap();
    let k = alphabet.len();
    (1..=max_states).prop_flat_map(move |n| {
        let alphabet = alphabet.clone();
        let label = if lambda {
            prop_oneof![1 => Just(None), 4 => (0..k).prop_map(|s| Some(Symbol(s as u8)))].boxed()
        } else {
            (0..k).prop_map(|s| Some(Symbol(s as u8))).boxed()
        };
        (
            0..n,
            proptest::collection::btree_set(0..n, 0..=n),
            proptest::collection::vec((0..n, label, 0..n), 0..=3 * n),
        )
            .prop_map(move |(start, finals, edges)| {
                let transitions =
                    edges
                        .into_iter()
                        .map(|(src, label, dst)| Transition { src, label, dst });
                Nfa::from_parts(alphabet.clone(), n, start, finals, transitions).unwrap()
            })
    })
}

/// Drops every edge into the start state.
fn non_returning(a: &Nfa) -> Nfa {
    let transitions = a.transitions().filter(|t| t.dst != a.start()).copied();
    Nfa::from_parts(
        a.alphabet().clone(),
        a.state_count(),
        a.start(),
        a.finals().iter().copied(),
        transitions,
    )
    .unwrap()
}

fn arb_non_returning(max_states: usize) -> impl Strategy<Value = Nfa> {
    arb_nfa(max_states, "ab", true).prop_map(|a| non_returning(&a))
}

fn naive_concat(l1: &BTreeSet<Word>, l2: &BTreeSet<Word>, w: &Word) -> bool {
    (0..=w.len()).any(|i| l1.contains(&word(&w.0[..i])) && l2.contains(&word(&w.0[i..])))
}

fn naive_star(l: &BTreeSet<Word>, w: &Word) -> bool {
    // reach[i]: the prefix of length i is in L*.
    let mut reach = vec![false; w.len() + 1];
    reach[0] = true;
    for j in 1..=w.len() {
        reach[j] = (0..j).any(|i| reach[i] && l.contains(&word(&w.0[i..j])));
    }
    reach[w.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn simulation_agrees_with_transformations(a in arb_nfa(5, "ab", true)) {
        let no_lambda = remove_lambda(&a);
        prop_assert_eq!(no_lambda.state_count(), a.state_count());
        prop_assert!(!no_lambda.has_lambda());
        let dfa = determinize(&a);
        let min = minimize(&dfa);
        for w in all_words(a.alphabet(), 6) {
            let expected = naive_accepts(&a, &w);
            prop_assert_eq!(a.accepts(&w), expected);
            prop_assert_eq!(no_lambda.accepts(&w), expected);
            prop_assert_eq!(dfa.accepts(&w), expected);
            prop_assert_eq!(min.accepts(&w), expected);
        }
    }

    #[test]
    fn subset_construction_bound(a in arb_nfa(5, "ab", true)) {
        let dfa = determinize(&a);
        prop_assert!(dfa.state_count() <= 1 << a.state_count());
    }

    #[test]
    fn minimization_is_idempotent_and_canonical(a in arb_nfa(5, "ab", true)) {
        let min = minimize(&determinize(&a));
        prop_assert_eq!(&minimize(&min), &min);
        prop_assert!(min.state_count() <= determinize(&a).state_count());
        let round_trip = minimize(&determinize(&min.to_nfa()));
        prop_assert!(round_trip.is_isomorphic(&min));
        prop_assert!(equivalent(&a, &min.to_nfa()).unwrap());
    }

    #[test]
    fn trim_and_enumeration(a in arb_nfa(5, "ab", true)) {
        let t = trim(&a);
        prop_assert!(t.state_count() <= a.state_count().max(1));
        let expected: Vec<Word> = language(&a, 5).into_iter().collect();
        prop_assert_eq!(enumerate_words(&a, 5), expected.clone());
        prop_assert_eq!(enumerate_words(&t, 5), expected);
    }

    #[test]
    fn product_is_conjunction(a in arb_nfa(4, "ab", true), b in arb_nfa(4, "ab", true)) {
        let p = product_intersection(&a, &b).unwrap();
        for w in all_words(a.alphabet(), 5) {
            prop_assert_eq!(p.accepts(&w), naive_accepts(&a, &w) && naive_accepts(&b, &w));
        }
    }

    #[test]
    fn json_round_trip(a in arb_nfa(6, "abc", true)) {
        let text = to_json(&a);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn suffix_free_matches_bounded_search(a in arb_nfa(4, "ab", true)) {
        let verdict = is_suffix_free(&a);
        let words = language(&a, 6);
        let bounded_violation = words
            .iter()
            .any(|u| words.iter().any(|v| u.is_proper_suffix_of(v)));
        if bounded_violation {
            prop_assert!(!verdict.is_suffix_free());
        }
        if let Some((shorter, longer)) = verdict.witness() {
            prop_assert!(shorter.is_proper_suffix_of(longer));
            prop_assert!(naive_accepts(&a, shorter));
            prop_assert!(naive_accepts(&a, longer));
        }
    }

    #[test]
    fn non_returning_detection(a in arb_nfa(4, "ab", false)) {
        let expected = a.transitions().all(|t| t.dst != a.start());
        prop_assert_eq!(is_non_returning(&a), expected);
        prop_assert!(is_non_returning(&non_returning(&a)));
    }

    #[test]
    fn binary_constructions_match_set_semantics(a in arb_non_returning(5), b in arb_non_returning(5)) {
        let (m, n) = (a.state_count(), b.state_count());
        let len = 6;
        let la = language(&a, len);
        let lb = language(&b, len);

        let u = union_sf(&a, &b).unwrap();
        prop_assert_eq!(u.state_count(), m + n - 1);
        let c = concat_sf(&a, &b).unwrap();
        prop_assert_eq!(c.state_count(), m + n - 1);
        let i = intersect_sf(&a, &b).unwrap();
        prop_assert!(i.state_count() <= (m * n + 2).saturating_sub(m + n).max(1));

        for w in all_words(a.alphabet(), len) {
            let (x, y) = (la.contains(&w), lb.contains(&w));
            prop_assert_eq!(naive_accepts(&u, &w), x || y);
            prop_assert_eq!(naive_accepts(&i, &w), x && y);
            prop_assert_eq!(naive_accepts(&c, &w), naive_concat(&la, &lb, &w));
        }
    }

    #[test]
    fn unary_constructions_match_set_semantics(a in arb_non_returning(6)) {
        let m = a.state_count();
        let len = 7;
        let la = language(&a, len);

        let s = star_sf(&a).unwrap();
        prop_assert_eq!(s.state_count(), m);
        let r = reverse_nfa(&a);
        prop_assert_eq!(r.state_count(), m + 1);
        let c = complement_sf(&a).unwrap();
        prop_assert!(c.state_count() <= (1 << (m - 1)) + 1);

        for w in all_words(a.alphabet(), len) {
            prop_assert_eq!(naive_accepts(&s, &w), naive_star(&la, &w));
            prop_assert_eq!(naive_accepts(&r, &w), la.contains(&w.reversed()));
            prop_assert_eq!(c.accepts(&w), !la.contains(&w));
        }
        prop_assert!(equivalent(&reverse_nfa(&r), &a).unwrap());
    }

    #[test]
    fn search_results_verify(a in arb_nfa(4, "ab", true)) {
        if let Ok(Some(p)) = search_fooling_set(&a, 4, 1) {
            prop_assert!(verify_fooling_set(&a, &p));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fooling_sets_never_exceed_exhaustive_minimum(a in arb_nfa(2, "ab", true)) {
        let nsc = nsc_exhaustive(&a, 2).unwrap().expect("two states always suffice");
        prop_assert!(nsc <= 2);
        if let Some(p) = search_fooling_set(&a, 4, 1).unwrap() {
            prop_assert!(p.len() <= nsc);
        }
        // Monotone in the state limit.
        prop_assert_eq!(nsc_exhaustive(&a, 3).unwrap(), Some(nsc));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn three_state_soundness(a in arb_nfa(3, "ab", false)) {
        let nsc = nsc_exhaustive(&a, 3).unwrap().expect("three states always suffice");
        if let Some(p) = search_fooling_set(&a, 5, 1).unwrap() {
            prop_assert!(p.len() <= nsc);
        }
    }
}
