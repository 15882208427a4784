//! Canonical codes and automorphisms for labeled trees.
//!
//! Codes are AHU encodings: a vertex is written as its symbol followed by the
//! sorted list of `label:child` entries in parentheses. Free trees are rooted
//! at a centroid and the smaller of the (at most two) centroid codes wins.
//! Symbols must not contain `(`, `)`, `,` or `:`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{is_tree, StratGraph, VertexKind};

/// Adjacency with edge labels: `adj[v]` lists `(neighbor, label)`.
pub type Adjacency = Vec<Vec<(usize, u32)>>;

/// Total-order isomorphism invariant; equal codes mean isomorphic graphs for trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn new(code: impl Into<String>) -> Self {
        Self(code.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// BFS order from `root` and the parent of every reached vertex.
fn bfs(adj: &[Vec<(usize, u32)>], root: usize) -> (Vec<usize>, Vec<usize>) {
    let mut parent = vec![usize::MAX; adj.len()];
    let mut order = Vec::with_capacity(adj.len());
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &(y, _) in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    (order, parent)
}

/// Subtree code of every vertex reachable from `root`, plus the parent array.
pub(crate) fn subtree_codes(
    adj: &[Vec<(usize, u32)>],
    symbols: &[String],
    root: usize,
) -> (Vec<String>, Vec<usize>) {
    let (order, parent) = bfs(adj, root);
    let mut codes = vec![String::new(); adj.len()];
    for &v in order.iter().rev() {
        let mut entries: Vec<String> = adj[v]
            .iter()
            .filter(|&&(c, _)| parent[c] == v && c != v)
            .map(|&(c, label)| format!("{label}:{}", codes[c]))
            .collect();
        entries.sort_unstable();
        let mut code = symbols[v].clone();
        if !entries.is_empty() {
            code.push('(');
            code.push_str(&entries.join(","));
            code.push(')');
        }
        codes[v] = code;
    }
    (codes, parent)
}

pub(crate) fn rooted_code(adj: &[Vec<(usize, u32)>], symbols: &[String], root: usize) -> String {
    let (mut codes, _) = subtree_codes(adj, symbols, root);
    std::mem::take(&mut codes[root])
}

/// The one or two centroids of a nonempty tree.
pub(crate) fn centroids(adj: &[Vec<(usize, u32)>]) -> Vec<usize> {
    let n = adj.len();
    let (order, parent) = bfs(adj, 0);
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if v != 0 {
            size[parent[v]] += size[v];
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        let mut largest = n - size[v];
        for &(c, _) in &adj[v] {
            if parent[c] == v && c != v {
                largest = largest.max(size[c]);
            }
        }
        if 2 * largest <= n {
            out.push(v);
        }
    }
    out
}

/// Code of an unrooted tree: the minimal centroid-rooted code.
pub(crate) fn tree_code(adj: &[Vec<(usize, u32)>], symbols: &[String]) -> String {
    if adj.is_empty() {
        return String::new();
    }
    centroids(adj)
        .into_iter()
        .map(|c| rooted_code(adj, symbols, c))
        .min()
        .expect("a nonempty tree has a centroid")
}

/// All automorphisms of a labeled tree as vertex permutations (`perm[v]` is
/// the image of `v`). The identity is always first.
pub(crate) fn automorphisms(adj: &[Vec<(usize, u32)>], symbols: &[String]) -> Vec<Vec<usize>> {
    let n = adj.len();
    if n == 0 {
        return vec![Vec::new()];
    }
    let cs = centroids(adj);
    let base = cs[0];
    let (codes_a, parent_a) = subtree_codes(adj, symbols, base);
    let mut out = Vec::new();
    for &c in &cs {
        let (codes_b, parent_b) = subtree_codes(adj, symbols, c);
        if codes_b[c] != codes_a[base] {
            continue;
        }
        let ctx = AutoCtx {
            adj,
            codes_a: &codes_a,
            parent_a: &parent_a,
            codes_b: &codes_b,
            parent_b: &parent_b,
        };
        let mut map = vec![usize::MAX; n];
        map[base] = c;
        ctx.expand(vec![(base, c)], map, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

struct AutoCtx<'a> {
    adj: &'a [Vec<(usize, u32)>],
    codes_a: &'a [String],
    parent_a: &'a [usize],
    codes_b: &'a [String],
    parent_b: &'a [usize],
}

impl AutoCtx<'_> {
    fn children(&self, v: usize, parent: &[usize]) -> Vec<(u32, usize)> {
        self.adj[v]
            .iter()
            .filter(|&&(c, _)| parent[c] == v && c != v)
            .map(|&(c, label)| (label, c))
            .collect()
    }

    fn expand(&self, work: Vec<(usize, usize)>, map: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some((&(u, v), rest)) = work.split_first() else {
            out.push(map);
            return;
        };
        let cu = self.children(u, self.parent_a);
        let cv = self.children(v, self.parent_b);
        let mut used = vec![false; cv.len()];
        let mut chosen = Vec::with_capacity(cu.len());
        self.assign(&cu, &cv, &mut used, &mut chosen, rest, &map, out);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign(
        &self,
        cu: &[(u32, usize)],
        cv: &[(u32, usize)],
        used: &mut [bool],
        chosen: &mut Vec<usize>,
        rest: &[(usize, usize)],
        map: &[usize],
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = chosen.len();
        if i == cu.len() {
            let mut next_map = map.to_vec();
            let mut work = rest.to_vec();
            for (k, &j) in chosen.iter().enumerate() {
                next_map[cu[k].1] = cv[j].1;
                work.push((cu[k].1, cv[j].1));
            }
            self.expand(work, next_map, out);
            return;
        }
        let (label, child) = cu[i];
        for j in 0..cv.len() {
            if used[j] || cv[j].0 != label || self.codes_b[cv[j].1] != self.codes_a[child] {
                continue;
            }
            used[j] = true;
            chosen.push(j);
            self.assign(cu, cv, used, chosen, rest, map, out);
            chosen.pop();
            used[j] = false;
        }
    }
}

pub(crate) fn vertex_symbol(kind: VertexKind) -> String {
    match kind {
        VertexKind::White { genus } => format!("w{genus}"),
        VertexKind::Black => "b".to_string(),
    }
}

pub(crate) fn labeled_adjacency(g: &StratGraph) -> Adjacency {
    g.incidence()
        .into_iter()
        .map(|list| {
            list.into_iter()
                .map(|(y, e)| (y.0, g.edges()[e].label))
                .collect()
        })
        .collect()
}

pub(crate) fn graph_symbols(g: &StratGraph) -> Vec<String> {
    g.vertices().iter().map(|v| vertex_symbol(v.kind)).collect()
}

/// Color refinement invariant for connected graphs that are not trees.
fn refinement_code(adj: &[Vec<(usize, u32)>], symbols: &[String]) -> String {
    let n = adj.len();
    let mut colors: Vec<String> = symbols.to_vec();
    let mut out = String::from("C");
    for _ in 0..n.max(1) {
        let signatures: Vec<String> = (0..n)
            .map(|v| {
                let mut nbrs: Vec<String> = adj[v]
                    .iter()
                    .map(|&(y, l)| format!("{l}:{}", colors[y]))
                    .collect();
                nbrs.sort_unstable();
                format!("{}[{}]", colors[v], nbrs.join(","))
            })
            .collect();
        let mut table: BTreeMap<&str, usize> = BTreeMap::new();
        for s in &signatures {
            table.entry(s.as_str()).or_insert(0);
        }
        for (rank, value) in table.values_mut().enumerate() {
            *value = rank;
        }
        let mut sorted = signatures.clone();
        sorted.sort_unstable();
        out.push('{');
        out.push_str(&sorted.join(";"));
        out.push('}');
        let next: Vec<String> = signatures
            .iter()
            .map(|s| format!("#{}", table[s.as_str()]))
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    out
}

/// Canonical code of a connected graph. Complete for trees; for graphs with
/// cycles it is an isomorphism invariant only.
pub fn canonical_code(g: &StratGraph) -> Result<CanonicalCode> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let adj = labeled_adjacency(g);
    let symbols = graph_symbols(g);
    if is_tree(g) {
        Ok(CanonicalCode(format!("T{}", tree_code(&adj, &symbols))))
    } else {
        Ok(CanonicalCode(refinement_code(&adj, &symbols)))
    }
}

pub fn are_isomorphic(g1: &StratGraph, g2: &StratGraph) -> Result<bool> {
    Ok(canonical_code(g1)? == canonical_code(g2)?)
}
