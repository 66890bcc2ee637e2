//! Graphviz export of the component order.

use std::fmt::Write;

use crate::decomposition::Decomposition;
use crate::graph::BipartiteGraph;

/// The component DAG in DOT. Nodes are labelled `C<id>[kind]` with the
/// member vertices underneath; arcs go from smaller to larger components.
/// With `reduce`, only the Hasse diagram is drawn.
pub fn to_dot(g: &BipartiteGraph, d: &Decomposition, reduce: bool) -> String {
    let mut out = String::from("digraph components {\n  rankdir=BT;\n  node [shape=box];\n");
    for c in d.components() {
        let members: Vec<String> = c.vertices.iter().map(|&v| g.vertex_name(v)).collect();
        let _ = writeln!(
            out,
            "  C{id} [label=\"C{id}[{kind}]\\n{members}\"];",
            id = c.id,
            kind = c.kind,
            members = members.join(" ")
        );
    }
    let arcs = if reduce {
        d.transitive_reduction()
    } else {
        d.order_arcs().to_vec()
    };
    for (x, y) in arcs {
        let _ = writeln!(out, "  C{x} -> C{y};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::decompose;
    use crate::matching::max_b_matching;

    #[test]
    fn chain_dot() {
        let g = BipartiteGraph::with_uniform_caps(2, 2, &[(0, 0), (1, 1), (0, 1)], 1).unwrap();
        let d = decompose(&g, &max_b_matching(&g)).unwrap();
        let dot = to_dot(&g, &d, true);
        assert!(dot.starts_with("digraph components {"));
        assert!(dot.contains("C0 [label=\"C0[consistent]\\na0\"];"));
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(dot.contains("C1 -> C3;"));
        assert!(dot.contains("C3 -> C0;"));
        assert!(dot.contains("C0 -> C2;"));
    }
}
