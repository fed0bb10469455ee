//! Acceptance suite: one line per criterion, non-zero exit on any failure.
//! Runtime budgets are enforced alongside the exact checks.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use suffix_nsc::automata::json::{from_json, to_json};
use suffix_nsc::automata::{
    all_words, determinize, enumerate_words, equivalent, Alphabet, Nfa, Symbol, Transition, Word,
};
use suffix_nsc::bounds::{
    certify, nsc_exhaustive, family_fooling_set, search_fooling_set, verify_fooling_set,
    FoolingFamily, LowerBoundKind, Operation,
};
use suffix_nsc::constructions::{
    complement_sf, concat_sf, intersect_sf, reverse_nfa, star_sf, union_sf, Constructor,
};
use suffix_nsc::witnesses::{build, build_pair, build_single, Family, Witness, WitnessSpec};
use suffix_nsc::{is_suffix_free, SuffixFreeness};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn binary_tightness(op: Operation, range: std::ops::RangeInclusive<usize>) -> Outcome {
    let mut cells = 0;
    for m in range.clone() {
        for n in range.clone() {
            let r = certify(op, m, Some(n)).map_err(|e| e.to_string())?;
            let expected = op.formula_value(m, n);
            ensure!(
                r.constructed_size == expected && r.lower_bound == expected && r.tight,
                "{op} m={m} n={n}: constructed {} lower {} formula {expected}",
                r.constructed_size,
                r.lower_bound
            );
            ensure!(
                r.lower_bound_kind == LowerBoundKind::FoolingSet,
                "{op} m={m} n={n}: no certificate"
            );
            cells += 1;
        }
    }
    Ok(format!("{cells} cells tight"))
}

fn criterion_union() -> Outcome {
    binary_tightness(Operation::Union, 2..=6)
}

fn criterion_concat() -> Outcome {
    binary_tightness(Operation::Concat, 2..=6)?;
    let a = Alphabet::from_labels("a").unwrap();
    for m in 2..=6 {
        for n in 2..=6 {
            let (x, y) = build_pair(Family::ConcatPair, m, n).map_err(|e| e.to_string())?;
            let c = concat_sf(&x, &y).map_err(|e| e.to_string())?;
            let words = enumerate_words(&c, m + n + 4);
            let single = a.word(&"a".repeat(m + n - 2)).unwrap();
            ensure!(
                words == vec![single],
                "m={m} n={n}: language is not {{a^{}}}",
                m + n - 2
            );
        }
    }
    Ok("25 cells tight; every catenation is the singleton {a^(m+n-2)}".to_string())
}

fn criterion_intersection() -> Outcome {
    binary_tightness(Operation::Intersect, 2..=5)?;
    for m in 2..=5 {
        for n in 2..=5 {
            let (x, y) = build_pair(Family::IntersectPair, m, n).map_err(|e| e.to_string())?;
            let parts = Constructor::PERMISSIVE
                .intersect_parts(&x, &y)
                .map_err(|e| e.to_string())?;
            let (s1, s2) = parts.starts;
            let mixed = parts
                .trimmed_pairs
                .iter()
                .chain(&parts.product_pairs)
                .filter(|&&(p, q)| (p == s1) != (q == s2))
                .count();
            ensure!(
                mixed == 0,
                "m={m} n={n}: {mixed} pair states with exactly one start"
            );
            ensure!(
                parts.trimmed.state_count() == m * n - (m + n) + 2,
                "m={m} n={n}: trimmed product has {} states",
                parts.trimmed.state_count()
            );
        }
    }
    Ok("16 cells tight; no (s1,q) or (p,s2) pairs in any product".to_string())
}

fn criterion_star() -> Outcome {
    for m in 1..=8 {
        let r = certify(Operation::Star, m, None).map_err(|e| e.to_string())?;
        ensure!(
            r.constructed_size == m && r.lower_bound == m && r.tight,
            "m={m}: constructed {} lower {}",
            r.constructed_size,
            r.lower_bound
        );
    }
    let lambda = Nfa::lambda_only(Family::StarWitness.alphabet());
    let s = star_sf(&lambda).map_err(|e| e.to_string())?;
    ensure!(
        s.state_count() == 1,
        "star of {{λ}} has {} states",
        s.state_count()
    );
    Ok("m = 1..8 tight; {λ}* has 1 state".to_string())
}

fn criterion_reversal() -> Outcome {
    let mut bounds = Vec::new();
    for m in 4..=7 {
        let a = build_single(Family::ReversalWitness, m).map_err(|e| e.to_string())?;
        let r = reverse_nfa(&a);
        ensure!(
            r.state_count() == m + 1,
            "m={m}: reversal has {} states",
            r.state_count()
        );
        let len = m + 6;
        let mut expected: Vec<Word> = enumerate_words(&a, len)
            .iter()
            .map(Word::reversed)
            .collect();
        expected.sort();
        ensure!(
            enumerate_words(&r, len) == expected,
            "m={m}: reversed language differs"
        );
        let p = search_fooling_set(&r, 2 * m, m)
            .map_err(|e| e.to_string())?
            .ok_or(format!("m={m}: no fooling set of size {m}"))?;
        ensure!(
            verify_fooling_set(&r, &p) && p.len() >= m,
            "m={m}: certificate invalid"
        );
        bounds.push(p.len());
    }
    Ok(format!(
        "m = 4..7: m+1 states, languages match, fooling-set lower bounds {bounds:?} (m+1 itself is not certified)"
    ))
}

fn criterion_complement() -> Outcome {
    let mut sizes = Vec::new();
    for m in 2..=6 {
        let a = build_single(Family::LemmaL1, m).map_err(|e| e.to_string())?;
        let c = complement_sf(&a).map_err(|e| e.to_string())?;
        ensure!(
            c.state_count() <= (1 << (m - 1)) + 1,
            "m={m}: {} states exceed 2^(m-1)+1",
            c.state_count()
        );
        let generic = determinize(&a).complement();
        ensure!(
            equivalent(&c.to_nfa(), &generic.to_nfa()).map_err(|e| e.to_string())?,
            "m={m}: language differs from the generic complement"
        );
        sizes.push(c.state_count());
    }
    Ok(format!(
        "m = 2..6 sizes {sizes:?} within 2^(m-1)+1 and equal to the DFA complement"
    ))
}

/// Each certified family instance paired with the language it certifies.
fn certified_instances() -> Vec<(String, Nfa, FoolingFamily, usize, Option<usize>)> {
    let mut out = Vec::new();
    for m in [2, 3] {
        out.push((
            format!("L1 m={m}"),
            build_single(Family::LemmaL1, m).unwrap(),
            FoolingFamily::LemmaL1,
            m,
            None,
        ));
        let star = star_sf(&build_single(Family::StarWitness, m).unwrap()).unwrap();
        out.push((format!("star m={m}"), star, FoolingFamily::Star, m, None));
    }
    out.push((
        "L2 m=3".into(),
        build_single(Family::LemmaL2, 3).unwrap(),
        FoolingFamily::LemmaL2,
        3,
        None,
    ));
    let (a, b) = build_pair(Family::UnionPair, 2, 2).unwrap();
    out.push((
        "union 2,2".into(),
        union_sf(&a, &b).unwrap(),
        FoolingFamily::Union,
        2,
        Some(2),
    ));
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)] {
        let (a, b) = build_pair(Family::ConcatPair, m, n).unwrap();
        out.push((
            format!("concat {m},{n}"),
            concat_sf(&a, &b).unwrap(),
            FoolingFamily::Concat,
            m,
            Some(n),
        ));
    }
    let (a, b) = build_pair(Family::IntersectPair, 2, 2).unwrap();
    out.push((
        "intersect 2,2".into(),
        intersect_sf(&a, &b).unwrap(),
        FoolingFamily::Intersection,
        2,
        Some(2),
    ));
    out
}

fn random_nfa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, states: usize, lambda: bool) -> Nfa {
    let k = alphabet.len();
    let start = rng.gen_range(0..states);
    let finals: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
    let edges = rng.gen_range(0..=3 * states);
    let transitions: Vec<Transition> = (0..edges)
        .map(|_| Transition {
            src: rng.gen_range(0..states),
            label: if lambda && rng.gen_bool(0.15) {
                None
            } else {
                Some(Symbol(rng.gen_range(0..k) as u8))
            },
            dst: rng.gen_range(0..states),
        })
        .collect();
    Nfa::from_parts(alphabet.clone(), states, start, finals, transitions).unwrap()
}

/// Every λ-free binary NFA on 2 states with start 0.
fn all_two_state_binary() -> impl Iterator<Item = Nfa> {
    let ab = Alphabet::from_labels("ab").unwrap();
    (0u32..1 << 8).flat_map(move |code| {
        let ab = ab.clone();
        (0u8..4).map(move |finals| {
            let transitions = (0..8)
                .filter(|bit| code & (1 << bit) != 0)
                .map(|bit| Transition {
                    src: bit / 4,
                    label: Some(Symbol(((bit / 2) % 2) as u8)),
                    dst: bit % 2,
                });
            let finals = (0..2).filter(|q| finals & (1 << q) != 0);
            Nfa::from_parts(ab.clone(), 2, 0, finals, transitions).unwrap()
        })
    })
}

fn criterion_soundness() -> Outcome {
    let mut matched = 0;
    for (name, lang, family, m, n) in certified_instances() {
        let p = family_fooling_set(family, m, n).map_err(|e| e.to_string())?;
        ensure!(
            verify_fooling_set(&lang, &p),
            "{name}: fooling set does not verify"
        );
        let nsc = nsc_exhaustive(&lang, p.len()).map_err(|e| format!("{name}: {e}"))?;
        ensure!(
            nsc == Some(p.len()),
            "{name}: exhaustive {nsc:?} vs certificate {}",
            p.len()
        );
        matched += 1;
    }

    let mut two_state = 0;
    for a in all_two_state_binary() {
        let nsc = nsc_exhaustive(&a, 2)
            .map_err(|e| e.to_string())?
            .ok_or("2 states must suffice")?;
        if let Some(p) = search_fooling_set(&a, 4, 1).map_err(|e| e.to_string())? {
            ensure!(
                p.len() <= nsc,
                "fooling set of {} exceeds exhaustive {nsc} for {}",
                p.len(),
                to_json(&a)
            );
        }
        two_state += 1;
    }

    let ab = Alphabet::from_labels("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut three_state = 0;
    for _ in 0..60 {
        let a = random_nfa(&mut rng, &ab, 3, false);
        let nsc = nsc_exhaustive(&a, 3)
            .map_err(|e| e.to_string())?
            .ok_or("3 states must suffice")?;
        if let Some(p) = search_fooling_set(&a, 5, 1).map_err(|e| e.to_string())? {
            ensure!(
                p.len() <= nsc,
                "fooling set of {} exceeds exhaustive {nsc} for {}",
                p.len(),
                to_json(&a)
            );
        }
        three_state += 1;
    }
    Ok(format!(
        "{matched} certified instances equal the exhaustive minimum; sound on {two_state} two-state and {three_state} seeded three-state NFAs"
    ))
}

fn criterion_suffix_free() -> Outcome {
    let mut checked = 0;
    for family in Family::ALL {
        let min = family.min_param();
        for m in min..=8 {
            let specs: Vec<WitnessSpec> = if family.is_pair() {
                (min..=6).map(|n| WitnessSpec::pair(family, m, n)).collect()
            } else {
                vec![WitnessSpec::single(family, m)]
            };
            for spec in specs {
                let w = build(&spec).map_err(|e| e.to_string())?;
                let automata = match &w {
                    Witness::Single(a) => vec![a],
                    Witness::Pair(a, b) => vec![a, b],
                };
                for a in automata {
                    ensure!(
                        is_suffix_free(a) == SuffixFreeness::SuffixFree,
                        "{family} {spec:?} is reported non-suffix-free"
                    );
                    checked += 1;
                }
            }
        }
    }

    let negatives = [
        (
            "a*",
            r#"{"alphabet":["a","b"],"states":1,"start":0,"finals":[0],"transitions":[[0,"a",0]]}"#,
        ),
        (
            "{a,ba}",
            r#"{"alphabet":["a","b"],"states":3,"start":0,"finals":[1],"transitions":[[0,"a",1],[0,"b",2],[2,"a",1]]}"#,
        ),
        (
            "(a+b)*b",
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[1],"transitions":[[0,"a",0],[0,"b",0],[0,"b",1]]}"#,
        ),
        (
            "{λ,a}",
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[0,1],"transitions":[[0,"a",1]]}"#,
        ),
        (
            "aa*",
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[1],"transitions":[[0,"a",1],[1,"a",1]]}"#,
        ),
        (
            "{b,ab}",
            r#"{"alphabet":["a","b"],"states":3,"start":0,"finals":[2],"transitions":[[0,"a",1],[0,"b",2],[1,"b",2]]}"#,
        ),
        (
            "(ab)*",
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[0],"transitions":[[0,"a",1],[1,"b",0]]}"#,
        ),
        (
            "b*a",
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[1],"transitions":[[0,"a",1],[0,"b",0]]}"#,
        ),
        (
            "(a+b)*",
            r#"{"alphabet":["a","b"],"states":1,"start":0,"finals":[0],"transitions":[[0,"a",0],[0,"b",0]]}"#,
        ),
        (
            "{ba,aba} with λ-edge",
            r#"{"alphabet":["a","b"],"states":4,"start":0,"finals":[3],"transitions":[[0,"~",1],[0,"a",1],[1,"b",2],[2,"a",3]]}"#,
        ),
    ];
    for (name, text) in negatives {
        let a = from_json(text).map_err(|e| format!("{name}: {e}"))?;
        let verdict = is_suffix_free(&a);
        let (shorter, longer) = verdict
            .witness()
            .ok_or(format!("{name}: reported suffix-free"))?;
        ensure!(
            shorter.is_proper_suffix_of(longer) && a.accepts(shorter) && a.accepts(longer),
            "{name}: invalid witness ({}, {})",
            a.alphabet().render(shorter),
            a.alphabet().render(longer)
        );
        // Cross-check the witness against brute-force membership.
        let words: Vec<Word> = all_words(a.alphabet(), longer.len())
            .into_iter()
            .filter(|w| a.accepts(w))
            .collect();
        ensure!(
            words.contains(shorter) && words.contains(longer),
            "{name}: witness not in language"
        );
    }
    Ok(format!(
        "{checked} witness automata suffix-free; 10 negatives with verified witnesses"
    ))
}

fn criterion_serialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let labels = ["a", "ab", "abc", "abcd"][rng.gen_range(0..4)];
        let alphabet = Alphabet::from_labels(labels).unwrap();
        let states = rng.gen_range(1..=6);
        let a = random_nfa(&mut rng, &alphabet, states, true);
        let first = to_json(&a);
        let parsed = from_json(&first).map_err(|e| format!("case {case}: {e}"))?;
        let second = to_json(&parsed);
        let third = to_json(&from_json(&second).map_err(|e| format!("case {case}: {e}"))?);
        ensure!(
            first == second && second == third,
            "case {case}: {first} != {second}"
        );
        ensure!(parsed == a, "case {case}: parsed automaton differs");
    }
    Ok("100 seeded cases byte-identical".to_string())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "union tightness",
            budget: Duration::from_secs(1),
            run: criterion_union,
        },
        Criterion {
            id: 2,
            name: "catenation tightness",
            budget: Duration::from_secs(1),
            run: criterion_concat,
        },
        Criterion {
            id: 3,
            name: "intersection tightness",
            budget: Duration::from_secs(5),
            run: criterion_intersection,
        },
        Criterion {
            id: 4,
            name: "star tightness",
            budget: Duration::from_secs(1),
            run: criterion_star,
        },
        Criterion {
            id: 5,
            name: "reversal",
            budget: Duration::from_secs(10),
            run: criterion_reversal,
        },
        Criterion {
            id: 6,
            name: "complement upper bound",
            budget: Duration::from_secs(5),
            run: criterion_complement,
        },
        Criterion {
            id: 7,
            name: "fooling-set soundness",
            budget: Duration::from_secs(60),
            run: criterion_soundness,
        },
        Criterion {
            id: 8,
            name: "suffix-freeness checker",
            budget: Duration::from_secs(1),
            run: criterion_suffix_free,
        },
        Criterion {
            id: 9,
            name: "serialization round trip",
            budget: Duration::from_secs(1),
            run: criterion_serialization,
        },
    ];
    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!(
                "{detail}; took {:.2}s, budget {:.0}s",
                elapsed.as_secs_f64(),
                c.budget.as_secs_f64()
            )),
            other => other,
        };
        match outcome {
            Ok(detail) => println!(
                "PASS  criterion {}: {} ({:.3}s) {detail}",
                c.id,
                c.name,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failures += 1;
                println!(
                    "FAIL  criterion {}: {} ({:.3}s) {detail}",
                    c.id,
                    c.name,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
