//! Graphviz export: Hasse diagrams of logics and flow diagrams of
//! reversible automata.

use automaton_logic::reversible::{domain_labels, permutation};
use automaton_logic::{MealyAutomaton, PartitionLogic, Result};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Nodes are logic elements, edges the covering pairs (drawn bottom-up).
pub fn hasse_dot(logic: &PartitionLogic) -> Result<String> {
    let h = logic.hasse()?;
    let mut out = String::from("digraph logic {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, e) in h.elements.iter().enumerate() {
        out.push_str(&format!("  n{i} [label={}];\n", quote(&logic.render_element(e))));
    }
    for (lo, hi) in &h.covers {
        out.push_str(&format!("  n{lo} -> n{hi} [arrowhead=none];\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

/// One node per `(s,i)` configuration, one edge to its image.
pub fn flow_dot(a: &MealyAutomaton) -> Result<String> {
    let p = permutation(a)?;
    let labels = domain_labels(a);
    let mut out = String::from("digraph flow {\n  node [shape=circle];\n");
    for (j, l) in labels.iter().enumerate() {
        out.push_str(&format!("  c{j} [label={}];\n", quote(l)));
    }
    for j in 0..p.len() {
        out.push_str(&format!("  c{j} -> c{};\n", p.apply(j)));
    }
    out.push_str("}\n");
    Ok(out)
}
