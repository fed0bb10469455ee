//! Graphviz export.

use std::fmt::Write;

use super::Nfa;

/// Renders `a` as a left-to-right digraph: final states are double circles
/// and an invisible node points at the start state.
pub fn to_dot(a: &Nfa) -> String {
    let mut out = String::new();
    out.push_str("digraph automaton {\n  rankdir=LR;\n  __start [shape=point];\n");
    for q in 0..a.state_count() {
        let shape = if a.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  {q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  __start -> {};", a.start()).unwrap();
    for t in a.transitions() {
        let label = match t.label {
            Some(s) => a.alphabet().label(s).to_string(),
            None => "λ".to_string(),
        };
        writeln!(out, "  {} -> {} [label=\"{}\"];", t.src, t.dst, label).unwrap();
    }
    out.push_str("}\n");
    out
}
