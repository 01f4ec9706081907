//! Graphviz output. Nodes in name order, arrows in name order of their
//! endpoints; negative arrows dashed.

use std::fmt::Write;

use paradox_core::{FiniteGraph, Sign};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(graph: &FiniteGraph) -> String {
    let mut out = String::from("digraph G {\n  rankdir=BT;\n");
    let nodes = graph.sorted_nodes();
    for n in &nodes {
        writeln!(out, "  {};", quote(n.as_str())).expect("write to String");
    }
    for n in &nodes {
        for (m, s) in graph.successors(n) {
            let attrs = match s {
                Sign::Neg => "style=dashed, label=\"-\"",
                Sign::Pos => "style=solid, label=\"+\"",
            };
            writeln!(out, "  {} -> {} [{attrs}];", quote(n.as_str()), quote(m.as_str())).expect("write to String");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use paradox_core::constructions::fixtures::example_basic;

    #[test]
    fn basic() {
        let dot = export_dot(&example_basic());
        assert_eq!(dot.matches("style=dashed").count(), 3);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 3);
        assert!(dot.contains("  \"x\" -> \"y\" [style=dashed, label=\"-\"];\n"));
        assert_eq!(dot, export_dot(&example_basic()));
    }

    #[test]
    fn empty() {
        assert_eq!(export_dot(&FiniteGraph::empty()), "digraph G {\n  rankdir=BT;\n}\n");
    }
}
