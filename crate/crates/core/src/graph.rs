//! Bi-colored, edge-labeled graphs and their structural checks.
//!
//! White vertices stand for the surface pieces of a 2-stratifold and carry a
//! genus (negative for nonorientable surfaces); black vertices stand for the
//! singular circles. Each edge joins a white vertex to a black vertex and is
//! labeled with the degree of the covering map it records.

use std::collections::{HashSet, VecDeque};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColor {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    White { genus: i64 },
    Black,
}

impl VertexKind {
    pub fn color(self) -> VertexColor {
        match self {
            VertexKind::White { .. } => VertexColor::White,
            VertexKind::Black => VertexColor::Black,
        }
    }

    pub fn genus(self) -> Option<i64> {
        match self {
            VertexKind::White { genus } => Some(genus),
            VertexKind::Black => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: Option<String>,
    pub kind: VertexKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub label: u32,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A bi-colored labeled graph. Parallel edges are representable; every
/// operation that needs a tree checks for one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StratGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl StratGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_white(&mut self, genus: i64) -> VertexId {
        self.push(None, VertexKind::White { genus })
    }

    pub fn add_black(&mut self) -> VertexId {
        self.push(None, VertexKind::Black)
    }

    pub fn add_named(&mut self, name: impl Into<String>, kind: VertexKind) -> VertexId {
        self.push(Some(name.into()), kind)
    }

    fn push(&mut self, name: Option<String>, kind: VertexKind) -> VertexId {
        self.vertices.push(Vertex { name, kind });
        VertexId(self.vertices.len() - 1)
    }

    /// Adds an edge without checking it; `validate` reports problems.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, label: u32) -> usize {
        self.edges.push(Edge { u, v, label });
        self.edges.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.vertices[v.0].kind
    }

    pub fn color(&self, v: VertexId) -> VertexColor {
        self.vertices[v.0].kind.color()
    }

    pub fn is_white(&self, v: VertexId) -> bool {
        self.color(v) == VertexColor::White
    }

    pub fn is_black(&self, v: VertexId) -> bool {
        self.color(v) == VertexColor::Black
    }

    pub fn white_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind.color() == VertexColor::White)
            .count()
    }

    pub fn black_count(&self) -> usize {
        self.vertices.len() - self.white_count()
    }

    /// Name for display: the stored name, or `w<i>` / `b<i>`.
    pub fn display_name(&self, v: VertexId) -> String {
        match &self.vertices[v.0].name {
            Some(name) => name.clone(),
            None => match self.kind(v) {
                VertexKind::White { .. } => format!("w{}", v.0),
                VertexKind::Black => format!("b{}", v.0),
            },
        }
    }

    /// Incidence lists: for each vertex, `(neighbor, edge index)`. Edges with
    /// out-of-range endpoints are skipped.
    pub fn incidence(&self) -> Vec<Vec<(VertexId, usize)>> {
        let n = self.vertices.len();
        let mut inc = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            if e.u.0 >= n || e.v.0 >= n {
                continue;
            }
            inc[e.u.0].push((e.v, i));
            if e.u != e.v {
                inc[e.v.0].push((e.u, i));
            }
        }
        inc
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    /// Black vertices of degree exactly three.
    pub fn degree3_blacks(&self) -> Vec<VertexId> {
        let inc = self.incidence();
        self.vertex_ids()
            .filter(|&v| self.is_black(v) && inc[v.0].len() == 3)
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        self.components().len() == 1
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let inc = self.incidence();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for start in 0..self.vertices.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![VertexId(start)];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &inc[x] {
                    if !seen[y.0] {
                        seen[y.0] = true;
                        comp.push(y);
                        queue.push_back(y.0);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// True when the graph has no cycles (parallel edges count as a cycle).
    pub fn is_forest(&self) -> bool {
        self.edges.len() + self.components().len() == self.vertices.len()
            && self.edges.iter().all(|e| e.u != e.v)
    }

    /// The subgraph on `keep` using only the edges accepted by `edge_filter`
    /// whose endpoints are both kept. Vertex names are carried over.
    pub fn subgraph(
        &self,
        keep: &[VertexId],
        mut edge_filter: impl FnMut(usize, &Edge) -> bool,
    ) -> Piece {
        let mut index = vec![usize::MAX; self.vertices.len()];
        let mut graph = StratGraph::new();
        for &v in keep {
            index[v.0] = graph.push(Some(self.display_name(v)), self.kind(v)).0;
        }
        for (i, e) in self.edges.iter().enumerate() {
            if index[e.u.0] != usize::MAX && index[e.v.0] != usize::MAX && edge_filter(i, e) {
                graph.add_edge(VertexId(index[e.u.0]), VertexId(index[e.v.0]), e.label);
            }
        }
        Piece {
            graph,
            origin: keep.to_vec(),
        }
    }

    /// The same graph with vertex `i` moved to position `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> StratGraph {
        assert_eq!(perm.len(), self.vertices.len());
        let mut vertices = vec![None; self.vertices.len()];
        for (i, v) in self.vertices.iter().enumerate() {
            vertices[perm[i]] = Some(v.clone());
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                u: VertexId(perm[e.u.0]),
                v: VertexId(perm[e.v.0]),
                label: e.label,
            })
            .collect();
        StratGraph {
            vertices: vertices.into_iter().map(Option::unwrap).collect(),
            edges,
        }
    }
}

/// A subgraph together with the ids its vertices had in the parent graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub graph: StratGraph,
    pub origin: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReasonCode {
    NonBipartiteEdge,
    NonpositiveLabel,
    UnknownEndpoint,
    DuplicateId,
    NotATree,
    NonzeroGenus,
    TerminalBlack,
    NotTrivalent,
    ComponentNotCollapsible,
    HornedTree,
}

impl ReasonCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::NonBipartiteEdge => "non-bipartite edge",
            ReasonCode::NonpositiveLabel => "nonpositive label",
            ReasonCode::UnknownEndpoint => "unknown endpoint",
            ReasonCode::DuplicateId => "duplicate id",
            ReasonCode::NotATree => "not a tree",
            ReasonCode::NonzeroGenus => "nonzero genus",
            ReasonCode::TerminalBlack => "terminal black vertex",
            ReasonCode::NotTrivalent => "not trivalent",
            ReasonCode::ComponentNotCollapsible => "component not collapsible",
            ReasonCode::HornedTree => "horned tree",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reason {
    pub code: ReasonCode,
    pub message: String,
}

impl Reason {
    pub fn new(code: ReasonCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

/// Outcome of a check. `reasons` is empty exactly when `accepted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub reasons: Vec<Reason>,
}

impl Verdict {
    pub fn from_reasons(reasons: Vec<Reason>) -> Self {
        Self {
            accepted: reasons.is_empty(),
            reasons,
        }
    }

    pub fn has(&self, code: ReasonCode) -> bool {
        self.reasons.iter().any(|r| r.code == code)
    }
}

/// Checks the structural invariants of a [`StratGraph`]; one reason per violation.
pub fn validate(g: &StratGraph) -> Verdict {
    let mut reasons = Vec::new();
    let mut names = HashSet::new();
    for v in g.vertex_ids() {
        if let Some(name) = &g.vertices[v.0].name {
            if !names.insert(name.as_str()) {
                reasons.push(Reason::new(
                    ReasonCode::DuplicateId,
                    format!("vertex id {name:?} is used twice"),
                ));
            }
        }
    }
    let n = g.vertex_count();
    for (i, e) in g.edges().iter().enumerate() {
        if e.u.0 >= n || e.v.0 >= n {
            reasons.push(Reason::new(
                ReasonCode::UnknownEndpoint,
                format!("edge {i} references a missing vertex"),
            ));
            continue;
        }
        if g.color(e.u) == g.color(e.v) {
            reasons.push(Reason::new(
                ReasonCode::NonBipartiteEdge,
                format!(
                    "edge {i} joins {} and {} of the same color",
                    g.display_name(e.u),
                    g.display_name(e.v)
                ),
            ));
        }
        if e.label == 0 {
            reasons.push(Reason::new(
                ReasonCode::NonpositiveLabel,
                format!("edge {i} has label 0"),
            ));
        }
    }
    Verdict::from_reasons(reasons)
}

pub fn is_tree(g: &StratGraph) -> bool {
    !g.vertices.is_empty() && g.edges.len() + 1 == g.vertices.len() && g.is_connected()
}

/// Whether the incident labels of a black vertex form one of the trivalent
/// patterns {3}, {1,2} or {1,1,1}.
pub fn is_trivalent_black(labels: &[u32]) -> bool {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    matches!(sorted.as_slice(), [3] | [1, 2] | [1, 1, 1])
}

/// Every black vertex matches a trivalent incidence pattern. A graph with no
/// black vertices only qualifies as the single white vertex.
pub fn is_trivalent(g: &StratGraph) -> bool {
    if g.black_count() == 0 {
        return g.vertex_count() == 1;
    }
    let inc = g.incidence();
    g.vertex_ids().filter(|&v| g.is_black(v)).all(|v| {
        let labels: Vec<u32> = inc[v.0].iter().map(|&(_, e)| g.edges[e].label).collect();
        is_trivalent_black(&labels)
    })
}
