//! Canonical JSON form of an automaton:
//!
//! ```text
//! {"alphabet":["a","b"],"states":3,"start":0,"finals":[1],"transitions":[[0,"b",1],[1,"a",2]]}
//! ```
//!
//! `"~"` labels a λ-edge. Keys appear in exactly this order and transitions
//! are sorted by (source, symbol, target), λ first, so emitting a parsed
//! automaton reproduces canonical input byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Alphabet, AutomatonError, Nfa, Transition, LAMBDA_LABEL};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid automaton: {0}")]
    Invalid(#[from] AutomatonError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct AutomatonDoc {
    alphabet: Vec<String>,
    states: usize,
    start: usize,
    finals: Vec<usize>,
    transitions: Vec<(usize, String, usize)>,
}

impl AutomatonDoc {
    pub(crate) fn from_nfa(a: &Nfa) -> Self {
        let alphabet = a.alphabet();
        AutomatonDoc {
            alphabet: alphabet.labels().iter().map(|c| c.to_string()).collect(),
            states: a.state_count(),
            start: a.start(),
            finals: a.finals().iter().copied().collect(),
            transitions: a
                .transitions()
                .map(|t| {
                    let label = t.label.map_or(LAMBDA_LABEL, |s| alphabet.label(s));
                    (t.src, label.to_string(), t.dst)
                })
                .collect(),
        }
    }

    pub(crate) fn into_nfa(self) -> Result<Nfa, AutomatonError> {
        let labels = self
            .alphabet
            .iter()
            .map(|l| single_char(l))
            .collect::<Result<Vec<_>, _>>()?;
        let alphabet = Alphabet::new(labels)?;
        let transitions = self
            .transitions
            .iter()
            .map(|(src, label, dst)| {
                let c = single_char(label)?;
                let label = if c == LAMBDA_LABEL {
                    None
                } else {
                    Some(alphabet.symbol(c)?)
                };
                Ok(Transition {
                    src: *src,
                    label,
                    dst: *dst,
                })
            })
            .collect::<Result<Vec<_>, AutomatonError>>()?;
        Nfa::from_parts(alphabet, self.states, self.start, self.finals, transitions)
    }
}

fn single_char(label: &str) -> Result<char, AutomatonError> {
    let mut chars = label.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(AutomatonError::BadLabel(label.to_string())),
    }
}

/// Canonical single-line JSON for one automaton.
pub fn to_json(a: &Nfa) -> String {
    serde_json::to_string(&AutomatonDoc::from_nfa(a)).expect("automaton document serializes")
}

/// Canonical JSON array of automata, used for witness pairs.
pub fn many_to_json(automata: &[&Nfa]) -> String {
    let docs: Vec<AutomatonDoc> = automata.iter().map(|a| AutomatonDoc::from_nfa(a)).collect();
    serde_json::to_string(&docs).expect("automaton documents serialize")
}

pub fn from_json(text: &str) -> Result<Nfa, JsonError> {
    let doc: AutomatonDoc = serde_json::from_str(text)?;
    Ok(doc.into_nfa()?)
}

/// Accepts either a single automaton object or an array of them.
pub fn many_from_json(text: &str) -> Result<Vec<Nfa>, JsonError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum OneOrMany {
        One(AutomatonDoc),
        Many(Vec<AutomatonDoc>),
    }
    let docs = match serde_json::from_str::<OneOrMany>(text)? {
        OneOrMany::One(doc) => vec![doc],
        OneOrMany::Many(docs) => docs,
    };
    docs.into_iter()
        .map(|d| d.into_nfa().map_err(JsonError::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{"alphabet":["a","b"],"states":3,"start":0,"finals":[1],"transitions":[[0,"b",1],[1,"a",2],[2,"a",1]]}"#;

    #[test]
    fn canonical_text_round_trips() {
        let a = from_json(SAMPLE).unwrap();
        assert_eq!(to_json(&a), SAMPLE);
    }

    #[test]
    fn transitions_are_sorted_and_lambda_first() {
        let text = r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[1],"transitions":[[0,"b",1],[0,"~",1],[0,"a",1],[0,"a",1]]}"#;
        let a = from_json(text).unwrap();
        assert_eq!(
            to_json(&a),
            r#"{"alphabet":["a","b"],"states":2,"start":0,"finals":[1],"transitions":[[0,"~",1],[0,"a",1],[0,"b",1]]}"#
        );
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(from_json("{"), Err(JsonError::Syntax(_))));
        let unknown = SAMPLE.replace("\"b\",1]", "\"z\",1]");
        assert!(matches!(
            from_json(&unknown),
            Err(JsonError::Invalid(AutomatonError::UnknownSymbol('z')))
        ));
        let long = SAMPLE.replace("[\"a\",\"b\"]", "[\"ab\",\"b\"]");
        assert!(matches!(
            from_json(&long),
            Err(JsonError::Invalid(AutomatonError::BadLabel(_)))
        ));
        let range = SAMPLE.replace("\"finals\":[1]", "\"finals\":[7]");
        assert!(matches!(
            from_json(&range),
            Err(JsonError::Invalid(AutomatonError::StateOutOfRange { .. }))
        ));
    }

    #[test]
    fn arrays_and_objects_both_parse() {
        assert_eq!(many_from_json(SAMPLE).unwrap().len(), 1);
        let pair = format!("[{SAMPLE},{SAMPLE}]");
        let parsed = many_from_json(&pair).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(many_to_json(&[&parsed[0], &parsed[1]]), pair);
    }
}
