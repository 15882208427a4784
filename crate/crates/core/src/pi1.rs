//! Fundamental-group presentations read off genus-0 trees.
//!
//! Each black vertex and each edge is a generator. A white vertex with
//! incident edges `c1 .. cp` gives the relator `c1 ⋯ cp`, and an edge `c` with
//! label `m` at black vertex `b` gives `b^m c^-1`.

use std::fmt;

use crate::canon::{graph_symbols, labeled_adjacency, subtree_codes};
use crate::error::{Error, Result};
use crate::graph::{is_tree, StratGraph, VertexKind};

/// A letter `generators[gen]^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub gen: usize,
    pub exp: i64,
}

/// A relator, read as `word = 1`.
pub type Word = Vec<Letter>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
}

pub fn pi1_presentation(g: &StratGraph) -> Result<Pi1Presentation> {
    if !is_tree(g) {
        return Err(Error::NotATree);
    }
    for v in g.vertex_ids() {
        if let VertexKind::White { genus } = g.kind(v) {
            if genus != 0 {
                return Err(Error::NonzeroGenus(g.display_name(v)));
            }
        }
    }
    let mut generators = Vec::new();
    let mut black_gen = vec![usize::MAX; g.vertex_count()];
    for v in g.vertex_ids().filter(|&v| g.is_black(v)) {
        black_gen[v.0] = generators.len();
        generators.push(g.display_name(v));
    }
    let edge_base = generators.len();
    generators.extend((0..g.edges().len()).map(|i| format!("c{}", i + 1)));

    let adj = labeled_adjacency(g);
    let symbols = graph_symbols(g);
    let inc = g.incidence();
    let mut relations = Vec::new();
    for w in g.vertex_ids().filter(|&v| g.is_white(v)) {
        if inc[w.0].is_empty() {
            continue;
        }
        let (codes, _) = subtree_codes(&adj, &symbols, w.0);
        let mut incident: Vec<(&str, u32, usize)> = inc[w.0]
            .iter()
            .map(|&(y, e)| (codes[y.0].as_str(), g.edges()[e].label, e))
            .collect();
        incident.sort();
        relations.push(
            incident
                .into_iter()
                .map(|(_, _, e)| Letter {
                    gen: edge_base + e,
                    exp: 1,
                })
                .collect(),
        );
    }
    for (i, e) in g.edges().iter().enumerate() {
        let b = if g.is_black(e.u) { e.u } else { e.v };
        relations.push(vec![
            Letter {
                gen: black_gen[b.0],
                exp: e.label as i64,
            },
            Letter {
                gen: edge_base + i,
                exp: -1,
            },
        ]);
    }
    Ok(Pi1Presentation {
        generators,
        relations,
    })
}

impl fmt::Display for Pi1Presentation {
    /// `⟨g1,g2 | w1, w2⟩`, with `x^k` for powers and `x^{-k}` for inverses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.generators.join(","))?;
        let words: Vec<String> = self
            .relations
            .iter()
            .map(|word| {
                word.iter()
                    .map(|l| {
                        let name = &self.generators[l.gen];
                        match l.exp {
                            1 => name.clone(),
                            e if e < 0 => format!("{name}^{{{e}}}"),
                            e => format!("{name}^{e}"),
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}⟩", words.join(", "))
    }
}
