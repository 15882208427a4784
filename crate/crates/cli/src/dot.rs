//! Graphviz export.

use std::fmt::Write;

use stratifold::{StratGraph, VertexKind};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Whites are circles annotated with their genus, blacks are filled points
/// with an external label. Edge labels are printed.
pub fn to_dot(g: &StratGraph, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for v in g.vertex_ids() {
        let id = g.display_name(v);
        match g.kind(v) {
            VertexKind::White { genus } => {
                let label = format!("{id}\\ng={genus}");
                writeln!(
                    out,
                    "  {} [shape=circle, label=\"{}\"];",
                    quote(&id),
                    label.replace('"', "\\\"")
                )
                .unwrap();
            }
            VertexKind::Black => {
                writeln!(
                    out,
                    "  {} [shape=point, style=filled, width=0.15, xlabel={}];",
                    quote(&id),
                    quote(&id)
                )
                .unwrap();
            }
        }
    }
    for e in g.edges() {
        let (u, v) = (g.display_name(e.u), g.display_name(e.v));
        writeln!(
            out,
            "  {} -- {} [label=\"{}\"];",
            quote(&u),
            quote(&v),
            e.label
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}
