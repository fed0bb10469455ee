use std::fmt;
use std::str::FromStr;

use crate::automata::json::JsonError;
use crate::automata::{determinize, Alphabet, Nfa, Word};
use crate::witnesses::Family;

use super::BoundsError;

/// Pairs (x_i, w_i). Verified against L it requires x_i·w_i ∈ L for all i,
/// and for i ≠ j at least one of x_i·w_j, x_j·w_i outside L.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FoolingSet {
    pub pairs: Vec<(Word, Word)>,
}

impl FoolingSet {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs as label strings, λ as "".
    pub fn to_strings(&self, alphabet: &Alphabet) -> Vec<[String; 2]> {
        self.pairs
            .iter()
            .map(|(x, w)| [alphabet.render(x), alphabet.render(w)])
            .collect()
    }

    /// Parses the pairs file format `[["x","w"], ...]`.
    pub fn from_json(alphabet: &Alphabet, text: &str) -> Result<Self, JsonError> {
        let raw: Vec<(String, String)> = serde_json::from_str(text)?;
        let pairs = raw
            .iter()
            .map(|(x, w)| Ok((alphabet.word(x)?, alphabet.word(w)?)))
            .collect::<Result<Vec<_>, crate::automata::AutomatonError>>()?;
        Ok(FoolingSet { pairs })
    }

    pub fn to_json(&self, alphabet: &Alphabet) -> String {
        serde_json::to_string(&self.to_strings(alphabet)).expect("strings serialize")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoolingViolation {
    /// x_i·w_i is not in the language.
    NotAccepted { index: usize },
    /// Both x_i·w_j and x_j·w_i are in the language.
    NotDistinguished { i: usize, j: usize },
}

impl fmt::Display for FoolingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoolingViolation::NotAccepted { index } => {
                write!(f, "pair {index}: x·w is not accepted")
            }
            FoolingViolation::NotDistinguished { i, j } => {
                write!(f, "pairs {i} and {j}: both cross products are accepted")
            }
        }
    }
}

/// The first violated condition, or `None` if `p` is a fooling set for L(a).
pub fn check_fooling_set(a: &Nfa, p: &FoolingSet) -> Option<FoolingViolation> {
    let dfa = determinize(a);
    let member = |x: &Word, w: &Word| dfa.accepts(&x.concat(w));
    if let Some(index) = p.pairs.iter().position(|(x, w)| !member(x, w)) {
        return Some(FoolingViolation::NotAccepted { index });
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let (xi, wi) = &p.pairs[i];
            let (xj, wj) = &p.pairs[j];
            if member(xi, wj) && member(xj, wi) {
                return Some(FoolingViolation::NotDistinguished { i, j });
            }
        }
    }
    None
}

/// `true` certifies that every NFA for L(a) has at least `p.len()` states.
pub fn verify_fooling_set(a: &Nfa, p: &FoolingSet) -> bool {
    check_fooling_set(a, p).is_none()
}

/// Language families with an explicit fooling set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FoolingFamily {
    /// b(a^(m-1))*
    LemmaL1,
    /// b(a^(m-2))*b
    LemmaL2,
    /// union of the union-pair witnesses
    Union,
    /// catenation of the concat-pair witnesses, i.e. {a^(m+n-2)}
    Concat,
    /// intersection of the intersect-pair witnesses
    Intersection,
    /// star of b(a^(m-1))*
    Star,
}

impl FoolingFamily {
    pub const ALL: [FoolingFamily; 6] = [
        FoolingFamily::LemmaL1,
        FoolingFamily::LemmaL2,
        FoolingFamily::Union,
        FoolingFamily::Concat,
        FoolingFamily::Intersection,
        FoolingFamily::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FoolingFamily::LemmaL1 => "lemma-l1",
            FoolingFamily::LemmaL2 => "lemma-l2",
            FoolingFamily::Union => "union",
            FoolingFamily::Concat => "concat",
            FoolingFamily::Intersection => "intersect",
            FoolingFamily::Star => "star",
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            FoolingFamily::Union | FoolingFamily::Concat | FoolingFamily::Intersection
        )
    }

    /// The witness family whose alphabet the words are written over.
    pub fn witness_family(self) -> Family {
        match self {
            FoolingFamily::LemmaL1 => Family::LemmaL1,
            FoolingFamily::LemmaL2 => Family::LemmaL2,
            FoolingFamily::Union => Family::UnionPair,
            FoolingFamily::Concat => Family::ConcatPair,
            FoolingFamily::Intersection => Family::IntersectPair,
            FoolingFamily::Star => Family::StarWitness,
        }
    }

    fn min_param(self) -> usize {
        match self {
            FoolingFamily::Star => 1,
            _ => self.witness_family().min_param(),
        }
    }

    /// Size of the family's set: the matching state count.
    pub fn size(self, m: usize, n: usize) -> usize {
        match self {
            FoolingFamily::LemmaL1 | FoolingFamily::LemmaL2 | FoolingFamily::Star => m,
            FoolingFamily::Union | FoolingFamily::Concat => m + n - 1,
            FoolingFamily::Intersection => (m - 1) * (n - 1) + 1,
        }
    }
}

impl fmt::Display for FoolingFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FoolingFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FoolingFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fooling-set family {s:?}"))
    }
}

fn rep(c: char, k: usize) -> String {
    std::iter::repeat_n(c, k).collect()
}

/// The explicit fooling set for `family` with parameters `m` (and `n`),
/// over the family's witness alphabet. For `Star` with `m = 1` (L = {λ})
/// the set is {(λ, λ)}.
pub fn family_fooling_set(
    family: FoolingFamily,
    m: usize,
    n: Option<usize>,
) -> Result<FoolingSet, BoundsError> {
    let min = family.min_param();
    let out_of_range = |param, value| BoundsError::ParameterOutOfRange {
        what: family.name().to_string(),
        param,
        value,
        min,
    };
    if m < min {
        return Err(out_of_range('m', m));
    }
    let n = if family.is_binary() {
        let n = n.ok_or_else(|| BoundsError::MissingN(family.name().to_string()))?;
        if n < min {
            return Err(out_of_range('n', n));
        }
        n
    } else {
        0
    };

    let text: Vec<(String, String)> = match family {
        FoolingFamily::Star if m == 1 => vec![(String::new(), String::new())],
        FoolingFamily::LemmaL1 | FoolingFamily::Star => {
            let mut v = vec![(String::new(), "b".to_string())];
            v.extend((0..=m - 2).map(|i| (format!("b{}", rep('a', i)), rep('a', m - 1 - i))));
            v
        }
        FoolingFamily::LemmaL2 => {
            let mut v = vec![(String::new(), "bb".to_string())];
            v.extend((0..=m - 3).map(|i| {
                (
                    format!("b{}", rep('a', i)),
                    format!("{}b", rep('a', m - 2 - i)),
                )
            }));
            v.push((format!("b{}b", rep('a', m - 2)), String::new()));
            v
        }
        FoolingFamily::Union => {
            let mut v = vec![(String::new(), format!("b{}", rep('a', m - 1)))];
            v.extend((0..=m - 2).map(|i| (format!("b{}", rep('a', i)), rep('a', m - 1 - i))));
            v.extend((0..=n - 2).map(|j| (format!("a{}", rep('b', j)), rep('b', n - 1 - j))));
            v
        }
        FoolingFamily::Concat => {
            let total = m + n - 2;
            (0..=total)
                .map(|i| (rep('a', i), rep('a', total - i)))
                .collect()
        }
        FoolingFamily::Intersection => {
            let mut v = vec![(String::new(), "c".to_string())];
            for i in 1..m {
                for j in 1..n {
                    v.push((
                        format!("c{}{}", rep('a', i), rep('b', j)),
                        format!("{}{}", rep('a', m - 1 - i), rep('b', n - 1 - j)),
                    ));
                }
            }
            v
        }
    };
    let alphabet = family.witness_family().alphabet();
    let pairs = text
        .iter()
        .map(|(x, w)| Ok((alphabet.word(x)?, alphabet.word(w)?)))
        .collect::<Result<Vec<_>, crate::automata::AutomatonError>>()?;
    debug_assert_eq!(pairs.len(), family.size(m, n.max(1)));
    Ok(FoolingSet { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::union_sf;
    use crate::witnesses::{build_pair, build_single};

    fn strings(p: &FoolingSet, family: FoolingFamily) -> Vec<(String, String)> {
        p.to_strings(&family.witness_family().alphabet())
            .into_iter()
            .map(|[x, w]| (x, w))
            .collect()
    }

    fn owned(v: &[(&str, &str)]) -> Vec<(String, String)> {
        v.iter()
            .map(|(x, w)| (x.to_string(), w.to_string()))
            .collect()
    }

    #[test]
    fn lemma_l1_set_verifies() {
        let a = build_single(Family::LemmaL1, 3).unwrap();
        let p = family_fooling_set(FoolingFamily::LemmaL1, 3, None).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::LemmaL1),
            owned(&[("", "b"), ("b", "aa"), ("ba", "a")])
        );
        assert!(verify_fooling_set(&a, &p));
    }

    #[test]
    fn duplicated_pair_fails() {
        let a = build_single(Family::LemmaL1, 3).unwrap();
        let ab = a.alphabet().clone();
        let p = FoolingSet::from_json(&ab, r#"[["","b"],["","b"]]"#).unwrap();
        assert_eq!(
            check_fooling_set(&a, &p),
            Some(FoolingViolation::NotDistinguished { i: 0, j: 1 })
        );
        let bad = FoolingSet::from_json(&ab, r#"[["","a"]]"#).unwrap();
        assert_eq!(
            check_fooling_set(&a, &bad),
            Some(FoolingViolation::NotAccepted { index: 0 })
        );
    }

    #[test]
    fn union_set_for_3_3() {
        let (x, y) = build_pair(Family::UnionPair, 3, 3).unwrap();
        let u = union_sf(&x, &y).unwrap();
        let p = family_fooling_set(FoolingFamily::Union, 3, Some(3)).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::Union),
            owned(&[
                ("", "baa"),
                ("b", "aa"),
                ("ba", "a"),
                ("a", "bb"),
                ("ab", "b")
            ])
        );
        assert!(verify_fooling_set(&u, &p));
    }

    #[test]
    fn concat_and_star_and_intersection_shapes() {
        let p = family_fooling_set(FoolingFamily::Concat, 3, Some(3)).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::Concat),
            owned(&[
                ("", "aaaa"),
                ("a", "aaa"),
                ("aa", "aa"),
                ("aaa", "a"),
                ("aaaa", "")
            ])
        );
        let p = family_fooling_set(FoolingFamily::Intersection, 2, Some(2)).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::Intersection),
            owned(&[("", "c"), ("cab", "")])
        );
        let p = family_fooling_set(FoolingFamily::Star, 4, None).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::Star),
            owned(&[("", "b"), ("b", "aaa"), ("ba", "aa"), ("baa", "a")])
        );
        let p = family_fooling_set(FoolingFamily::LemmaL2, 4, None).unwrap();
        assert_eq!(
            strings(&p, FoolingFamily::LemmaL2),
            owned(&[("", "bb"), ("b", "aab"), ("ba", "ab"), ("baab", "")])
        );
    }

    #[test]
    fn range_checks() {
        assert!(matches!(
            family_fooling_set(FoolingFamily::LemmaL2, 2, None),
            Err(BoundsError::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            family_fooling_set(FoolingFamily::Union, 3, None),
            Err(BoundsError::MissingN(_))
        ));
    }
}
