//! JSON graph documents.
//!
//! ```json
//! {
//!   "vertices": [{"id": "w", "color": "white", "genus": 0}, {"id": "b", "color": "black"}],
//!   "edges": [{"white": "w", "black": "b", "label": 3}]
//! }
//! ```

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use stratifold::{validate, StratGraph, VertexColor, VertexId, VertexKind};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("white vertex {0:?} has no genus")]
    MissingGenus(String),
    #[error("black vertex {0:?} must not carry a genus")]
    GenusOnBlack(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("edge endpoint {id:?} is not a {expected} vertex")]
    WrongColor { id: String, expected: &'static str },
    #[error("invalid graph: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub color: Color,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeEntry {
    pub white: String,
    pub black: String,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<EdgeEntry>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<Self, DocumentError> {
        let text = fs::read_to_string(path).map_err(|source| DocumentError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn from_graph(g: &StratGraph) -> Self {
        let vertices = g
            .vertex_ids()
            .map(|v| VertexEntry {
                id: g.display_name(v),
                color: match g.color(v) {
                    VertexColor::White => Color::White,
                    VertexColor::Black => Color::Black,
                },
                genus: g.kind(v).genus(),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                let (w, b) = if g.is_white(e.u) {
                    (e.u, e.v)
                } else {
                    (e.v, e.u)
                };
                EdgeEntry {
                    white: g.display_name(w),
                    black: g.display_name(b),
                    label: e.label,
                }
            })
            .collect();
        Self { vertices, edges }
    }

    /// Builds the graph and runs structural validation on it.
    pub fn to_graph(&self) -> Result<StratGraph, DocumentError> {
        let mut g = StratGraph::new();
        let mut ids: HashMap<&str, VertexId> = HashMap::new();
        for v in &self.vertices {
            let kind = match (v.color, v.genus) {
                (Color::White, Some(genus)) => VertexKind::White { genus },
                (Color::White, None) => return Err(DocumentError::MissingGenus(v.id.clone())),
                (Color::Black, None) => VertexKind::Black,
                (Color::Black, Some(_)) => return Err(DocumentError::GenusOnBlack(v.id.clone())),
            };
            ids.insert(&v.id, g.add_named(v.id.clone(), kind));
        }
        let lookup = |id: &str, expected: VertexColor| -> Result<VertexId, DocumentError> {
            let v = *ids
                .get(id)
                .ok_or_else(|| DocumentError::UnknownVertex(id.to_owned()))?;
            if g.color(v) != expected {
                let expected = if expected == VertexColor::White {
                    "white"
                } else {
                    "black"
                };
                return Err(DocumentError::WrongColor {
                    id: id.to_owned(),
                    expected,
                });
            }
            Ok(v)
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push((
                lookup(&e.white, VertexColor::White)?,
                lookup(&e.black, VertexColor::Black)?,
                e.label,
            ));
        }
        for (w, b, label) in edges {
            g.add_edge(w, b, label);
        }
        let verdict = validate(&g);
        if !verdict.accepted {
            let reasons: Vec<String> = verdict.reasons.iter().map(ToString::to_string).collect();
            return Err(DocumentError::Invalid(reasons.join("; ")));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("documents always serialize");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"vertices":[{"id":"w","color":"white","genus":0},{"id":"b","color":"black"}],
                       "edges":[{"white":"w","black":"b","label":3}]}"#;
        let doc = GraphDocument::parse(text).unwrap();
        let g = doc.to_graph().unwrap();
        assert_eq!(g.edges()[0].label, 3);
        assert_eq!(GraphDocument::from_graph(&g), doc);
        assert_eq!(GraphDocument::parse(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn rejects_bad_documents() {
        let cases = [
            (r#"{"vertices":[],"edges":[],"extra":1}"#, "malformed"),
            (
                r#"{"vertices":[{"id":"w","color":"white"}],"edges":[]}"#,
                "no genus",
            ),
            (
                r#"{"vertices":[{"id":"b","color":"black","genus":0}],"edges":[]}"#,
                "must not carry",
            ),
            (
                r#"{"vertices":[{"id":"w","color":"white","genus":0}],"edges":[{"white":"w","black":"x","label":1}]}"#,
                "not a declared",
            ),
            (
                r#"{"vertices":[{"id":"w","color":"white","genus":0},{"id":"v","color":"white","genus":0}],
                "edges":[{"white":"w","black":"v","label":1}]}"#,
                "not a black",
            ),
            (
                r#"{"vertices":[{"id":"w","color":"white","genus":0},{"id":"b","color":"black"}],
                "edges":[{"white":"w","black":"b","label":0}]}"#,
                "nonpositive label",
            ),
            (
                r#"{"vertices":[{"id":"w","color":"white","genus":0},{"id":"w","color":"black"}],"edges":[]}"#,
                "duplicate id",
            ),
        ];
        for (text, needle) in cases {
            let err = GraphDocument::parse(text)
                .and_then(|d| d.to_graph())
                .unwrap_err()
                .to_string();
            assert!(err.contains(needle), "{err}");
        }
    }
}
