//! Unlabeled rooted, bi-rooted and d-rooted trees.
//!
//! Rooted trees are produced by the Beyer–Hedetniemi level-sequence
//! successor, which visits every canonical level sequence exactly once.
//! Marked variants are obtained by placing marks on those trees and
//! deduplicating by the AHU code of the decorated tree rooted at its root.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{self, Adjacency, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{StratGraph, VertexId};

/// An unlabeled tree on vertices `0..len` given by its edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    len: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn from_edges(len: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert_eq!(edges.len() + 1, len.max(1));
        Self { len, edges }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub(crate) fn adjacency(&self) -> Adjacency {
        let mut adj = vec![Vec::new(); self.len];
        for &(a, b) in &self.edges {
            adj[a].push((b, 0));
            adj[b].push((a, 0));
        }
        adj
    }

    /// Code of the tree rooted at `root`, with `symbols` decorating vertices.
    pub(crate) fn rooted_code_with(&self, root: usize, symbols: &[String]) -> String {
        canon::rooted_code(&self.adjacency(), symbols, root)
    }

    /// Isomorphism code of the unrooted tree.
    pub fn free_code(&self) -> CanonicalCode {
        CanonicalCode::new(canon::tree_code(
            &self.adjacency(),
            &vec!["v".to_string(); self.len],
        ))
    }

    /// Parent of every vertex when rooted at `root` (the root maps to itself)
    /// and the BFS order.
    pub fn rooted_at(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let adj = self.neighbors();
        let mut parent = vec![usize::MAX; self.len];
        parent[root] = root;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        (parent, order)
    }
}

/// A rooted tree stored as its canonical level sequence: depths in preorder,
/// lexicographically maximal over all plane embeddings. Vertex `i` is the
/// `i`-th vertex in preorder, so the root is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    levels: Vec<u32>,
}

impl RootedTree {
    /// Wraps a level sequence, checking that it describes a rooted tree.
    /// Canonicity is not checked.
    pub fn from_levels(levels: Vec<u32>) -> Option<Self> {
        let ok =
            levels.first() == Some(&0) && levels.windows(2).all(|w| w[1] >= 1 && w[1] <= w[0] + 1);
        ok.then_some(Self { levels })
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// `parents()[i]` is the parent of vertex `i`; the root has none.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut last_at_depth: Vec<usize> = Vec::new();
        let mut out = Vec::with_capacity(self.levels.len());
        for (i, &d) in self.levels.iter().enumerate() {
            let d = d as usize;
            out.push(if d == 0 {
                None
            } else {
                Some(last_at_depth[d - 1])
            });
            last_at_depth.truncate(d);
            last_at_depth.push(i);
        }
        out
    }

    pub fn to_tree(&self) -> Tree {
        let edges = self
            .parents()
            .into_iter()
            .enumerate()
            .filter_map(|(i, p)| p.map(|p| (p, i)))
            .collect();
        Tree::from_edges(self.len(), edges)
    }

    /// Whether the sequence is the maximal one for its tree.
    pub fn is_canonical(&self) -> bool {
        // Each vertex's child subsequences must appear in non-increasing order.
        let n = self.len();
        let parents = self.parents();
        let mut end = vec![n; n];
        for i in (0..n).rev() {
            let mut j = i + 1;
            while j < n && self.levels[j] > self.levels[i] {
                j += 1;
            }
            end[i] = j;
        }
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(i);
            }
        }
        children.iter().all(|kids| {
            kids.windows(2).all(|w| {
                let a = &self.levels[w[0]..end[w[0]]];
                let b = &self.levels[w[1]..end[w[1]]];
                a >= b
            })
        })
    }
}

/// Successor of a canonical level sequence in decreasing lexicographic order.
fn next_level_sequence(levels: &mut [u32]) -> bool {
    let Some(p) = levels.iter().rposition(|&d| d > 1) else {
        return false;
    };
    let q = levels[..p]
        .iter()
        .rposition(|&d| d == levels[p] - 1)
        .expect("a parent level exists");
    let shift = p - q;
    for i in p..levels.len() {
        levels[i] = levels[i - shift];
    }
    true
}

/// All rooted trees on `n` vertices, one per isomorphism class, in
/// decreasing lexicographic order of level sequences (the path comes first).
pub fn enum_rooted(n: usize) -> Result<Vec<RootedTree>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let mut levels: Vec<u32> = (0..n as u32).collect();
    let mut out = vec![RootedTree {
        levels: levels.clone(),
    }];
    while next_level_sequence(&mut levels) {
        out.push(RootedTree {
            levels: levels.clone(),
        });
    }
    Ok(out)
}

/// All free trees on `n` vertices, ordered by code.
pub fn enum_free(n: usize) -> Result<Vec<Tree>> {
    let mut seen = BTreeMap::new();
    for rt in enum_rooted(n)? {
        let tree = rt.to_tree();
        // Only trees rooted at a centroid can be the unique representative.
        if !canon::centroids(&tree.adjacency()).contains(&0) {
            continue;
        }
        seen.entry(tree.free_code()).or_insert(tree);
    }
    Ok(seen.into_values().collect())
}

/// A tree with a root and an ordered list of pairwise distinct marks. The
/// root may coincide with a mark.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTree {
    pub tree: Tree,
    pub root: usize,
    pub marks: Vec<usize>,
}

impl MarkedTree {
    pub fn new(tree: Tree, root: usize, marks: Vec<usize>) -> Self {
        Self { tree, root, marks }
    }

    /// Code of the decorated tree rooted at its root. Marks carry their
    /// position so `m1` and `m2` are told apart.
    pub fn code(&self) -> CanonicalCode {
        let mut symbols = vec!["v".to_string(); self.tree.len()];
        for (i, &m) in self.marks.iter().enumerate() {
            symbols[m] = format!("m{}", i + 1);
        }
        CanonicalCode::new(self.tree.rooted_code_with(self.root, &symbols))
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

/// A tree with one mark and one root (possibly equal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiRootedTree {
    inner: MarkedTree,
    code: CanonicalCode,
}

impl BiRootedTree {
    pub fn new(tree: Tree, mark: usize, root: usize) -> Self {
        let inner = MarkedTree::new(tree, root, vec![mark]);
        let code = inner.code();
        Self { inner, code }
    }

    pub fn mark(&self) -> usize {
        self.inner.marks[0]
    }

    pub fn root(&self) -> usize {
        self.inner.root
    }

    pub fn mark_is_root(&self) -> bool {
        self.mark() == self.root()
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    pub fn as_marked(&self) -> &MarkedTree {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }
}

/// A tree with `d - 1` ordered, pairwise distinct marks and a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRootedTree {
    inner: MarkedTree,
    code: CanonicalCode,
}

impl DRootedTree {
    pub fn new(tree: Tree, marks: Vec<usize>, root: usize) -> Result<Self> {
        if marks.len() < 2 {
            return Err(Error::BadArity(marks.len() + 1));
        }
        let distinct: BTreeSet<_> = marks.iter().collect();
        if distinct.len() != marks.len() {
            return Err(Error::TooFewVertices {
                vertices: distinct.len(),
                marks: marks.len(),
            });
        }
        let inner = MarkedTree::new(tree, root, marks);
        let code = inner.code();
        Ok(Self { inner, code })
    }

    pub fn d(&self) -> usize {
        self.inner.marks.len() + 1
    }

    pub fn marks(&self) -> &[usize] {
        &self.inner.marks
    }

    pub fn root(&self) -> usize {
        self.inner.root
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    pub fn as_marked(&self) -> &MarkedTree {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }
}

/// All bi-rooted trees on `n` vertices, ordered by code.
pub fn enum_birooted(n: usize) -> Result<Vec<BiRootedTree>> {
    let mut out = BTreeMap::new();
    for rt in enum_rooted(n)? {
        let tree = rt.to_tree();
        for mark in 0..n {
            let b = BiRootedTree::new(tree.clone(), mark, 0);
            out.entry(b.code.clone()).or_insert(b);
        }
    }
    Ok(out.into_values().collect())
}

/// Bi-rooted tree codes obtained by placing a mark and a root anywhere on
/// every free tree. Must agree with [`enum_birooted`].
pub fn birooted_codes_from_free(n: usize) -> Result<BTreeSet<CanonicalCode>> {
    let mut out = BTreeSet::new();
    for tree in enum_free(n)? {
        for root in 0..n {
            for mark in 0..n {
                out.insert(MarkedTree::new(tree.clone(), root, vec![mark]).code());
            }
        }
    }
    Ok(out)
}

pub fn count_u(n: usize) -> Result<u64> {
    let m = enum_birooted(n)?.len() as u64;
    let r = enum_rooted(n)?.len() as u64;
    Ok(m - r)
}

/// All d-rooted trees on `n` vertices, ordered by code.
pub fn enum_drooted(n: usize, d: usize) -> Result<Vec<DRootedTree>> {
    if d < 3 {
        return Err(Error::BadArity(d));
    }
    let marks = d - 1;
    if n < marks {
        return Err(Error::TooFewVertices { vertices: n, marks });
    }
    let mut out = BTreeMap::new();
    for rt in enum_rooted(n)? {
        let tree = rt.to_tree();
        let mut current = Vec::with_capacity(marks);
        place_marks(n, marks, &mut current, &mut |chosen| {
            let t = DRootedTree::new(tree.clone(), chosen.to_vec(), 0).expect("marks are distinct");
            out.entry(t.code.clone()).or_insert(t);
        });
    }
    Ok(out.into_values().collect())
}

/// Calls `f` for every ordered selection of `k` distinct vertices out of `n`.
fn place_marks(n: usize, k: usize, current: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if current.len() == k {
        f(current);
        return;
    }
    for v in 0..n {
        if current.contains(&v) {
            continue;
        }
        current.push(v);
        place_marks(n, k, current, f);
        current.pop();
    }
}

/// Bisects every edge of `tree` with a new black vertex and labels each edge
/// 2 or 1 as its distance to `root` is even or odd. Returns the graph and the
/// white vertex of each tree vertex.
pub fn bisect_from_root(tree: &Tree, root: usize) -> (StratGraph, Vec<VertexId>) {
    let mut g = StratGraph::new();
    let whites: Vec<VertexId> = (0..tree.len()).map(|_| g.add_white(0)).collect();
    attach_bisected(&mut g, tree, root, &whites);
    (g, whites)
}

/// Adds the bisected edges of `tree` to `g`, where tree vertex `i` is the
/// existing white vertex `whites[i]`.
pub(crate) fn attach_bisected(g: &mut StratGraph, tree: &Tree, root: usize, whites: &[VertexId]) {
    let (parent, order) = tree.rooted_at(root);
    for &child in order.iter().skip(1) {
        let b = g.add_black();
        // whites sit at even distance from the root, so the edge toward the
        // parent starts at even distance and the edge toward the child at odd
        g.add_edge(whites[parent[child]], b, 2);
        g.add_edge(b, whites[child], 1);
    }
}

/// The (2,1)-collapsible graph of a rooted tree.
pub fn rooted_to_collapsible(t: &RootedTree) -> StratGraph {
    bisect_from_root(&t.to_tree(), 0).0
}

/// Rows `(n, R_n, M_n, U_n)` for `n = 1..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceTable {
    rows: Vec<SequenceRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceRow {
    pub n: usize,
    pub rooted: u64,
    pub birooted: u64,
    pub unrooted_mark: u64,
}

impl SequenceTable {
    pub fn compute(max_n: usize) -> Result<Self> {
        if max_n == 0 {
            return Err(Error::ZeroSize);
        }
        let mut rows = Vec::with_capacity(max_n);
        for n in 1..=max_n {
            let rooted = enum_rooted(n)?;
            let mut birooted = 0u64;
            for rt in &rooted {
                birooted += vertex_orbits(&rt.to_tree(), 0) as u64;
            }
            let r = rooted.len() as u64;
            rows.push(SequenceRow {
                n,
                rooted: r,
                birooted,
                unrooted_mark: birooted - r,
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[SequenceRow] {
        &self.rows
    }

    pub fn max_n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, n: usize) -> Option<&SequenceRow> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn r(&self, n: usize) -> u64 {
        self.row(n).map_or(0, |r| r.rooted)
    }

    pub fn m(&self, n: usize) -> u64 {
        self.row(n).map_or(0, |r| r.birooted)
    }

    pub fn u(&self, n: usize) -> u64 {
        self.row(n).map_or(0, |r| r.unrooted_mark)
    }
}

/// `R_0..=R_max_n` (with `R_0 = 0`) from the recurrence
/// `(n-1) R_n = sum_k (sum_{d|k} d R_d) R_{n-k}`.
pub fn rooted_counts(max_n: usize) -> Result<Vec<u64>> {
    let mut r = vec![0u64; max_n + 1];
    if max_n >= 1 {
        r[1] = 1;
    }
    for n in 2..=max_n {
        let mut acc = 0u128;
        for k in 1..n {
            let s: u128 = (1..=k)
                .filter(|d| k % d == 0)
                .map(|d| d as u128 * u128::from(r[d]))
                .sum();
            acc = acc
                .checked_add(s * u128::from(r[n - k]))
                .ok_or(Error::Overflow(n))?;
        }
        r[n] = u64::try_from(acc / (n as u128 - 1)).map_err(|_| Error::Overflow(n))?;
    }
    Ok(r)
}

/// `M_0..=M_max_n` from `M = R + R M`: a bi-rooted tree is the path from the
/// root to the mark with a rooted tree hanging at each path vertex.
pub fn birooted_counts(max_n: usize) -> Result<Vec<u64>> {
    let r = rooted_counts(max_n)?;
    let mut m = vec![0u64; max_n + 1];
    for n in 1..=max_n {
        let mut acc = u128::from(r[n]);
        for k in 1..n {
            acc += u128::from(r[k]) * u128::from(m[n - k]);
        }
        m[n] = u64::try_from(acc).map_err(|_| Error::Overflow(n))?;
    }
    Ok(m)
}

/// Number of orbits of the root-fixing automorphism group on vertices.
fn vertex_orbits(tree: &Tree, root: usize) -> usize {
    let symbols = vec!["v".to_string(); tree.len()];
    let (codes, parent) = canon::subtree_codes(&tree.adjacency(), &symbols, root);
    // Two vertices are in the same orbit iff their root paths carry the same
    // sequence of subtree codes; the code of the path is the chain of codes.
    let mut paths: Vec<String> = vec![String::new(); tree.len()];
    let (_, order) = tree.rooted_at(root);
    let mut seen = BTreeSet::new();
    for &v in &order {
        paths[v] = if v == root {
            codes[v].clone()
        } else {
            format!("{}/{}", paths[parent[v]], codes[v])
        };
        seen.insert(paths[v].clone());
    }
    seen.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_21_collapsible;

    #[test]
    fn small_rooted_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enum_rooted(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48]);
        assert_eq!(enum_rooted(0), Err(Error::ZeroSize));
    }

    #[test]
    fn generated_sequences_are_canonical() {
        for n in 1..=9 {
            for t in enum_rooted(n).unwrap() {
                assert!(t.is_canonical(), "{:?}", t.levels());
            }
        }
        assert!(!RootedTree::from_levels(vec![0, 1, 1, 2])
            .unwrap()
            .is_canonical());
        assert!(RootedTree::from_levels(vec![0, 2]).is_none());
    }

    #[test]
    fn birooted_counts_by_enumeration() {
        let counts: Vec<usize> = (1..=7).map(|n| enum_birooted(n).unwrap().len()).collect();
        // the n = 7 values agree with R/(1 - R), see tests/sequences.rs
        assert_eq!(counts, [1, 2, 5, 13, 35, 95, 262]);
        assert_eq!(count_u(1).unwrap(), 0);
        assert_eq!(count_u(5).unwrap(), 26);
        assert_eq!(count_u(7).unwrap(), 214);
    }

    #[test]
    fn birooted_with_mark_on_root_matches_rooted() {
        for n in 1..=8 {
            let on_root = enum_birooted(n)
                .unwrap()
                .iter()
                .filter(|b| b.mark_is_root())
                .count();
            assert_eq!(on_root, enum_rooted(n).unwrap().len());
        }
    }

    #[test]
    fn closed_form_counts_match_enumeration() {
        let r = rooted_counts(9).unwrap();
        let m = birooted_counts(9).unwrap();
        for n in 1..=9 {
            assert_eq!(r[n], enum_rooted(n).unwrap().len() as u64);
            assert_eq!(m[n], enum_birooted(n).unwrap().len() as u64);
        }
        assert!(rooted_counts(200).is_err());
    }

    #[test]
    fn free_tree_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| enum_free(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
    }

    #[test]
    fn table_orbit_count_matches_enumeration() {
        let table = SequenceTable::compute(8).unwrap();
        for n in 1..=8 {
            assert_eq!(table.m(n), enum_birooted(n).unwrap().len() as u64);
            assert_eq!(table.u(n), table.m(n) - table.r(n));
        }
    }

    #[test]
    fn drooted_small_cases() {
        assert_eq!(enum_drooted(2, 3).unwrap().len(), 2);
        assert!(matches!(
            enum_drooted(1, 3),
            Err(Error::TooFewVertices { .. })
        ));
        assert!(matches!(enum_drooted(4, 2), Err(Error::BadArity(2))));
        for t in enum_drooted(4, 4).unwrap() {
            assert_eq!(t.d(), 4);
            let distinct: BTreeSet<_> = t.marks().iter().collect();
            assert_eq!(distinct.len(), 3);
        }
    }

    #[test]
    fn collapsible_of_small_trees() {
        let one = rooted_to_collapsible(&enum_rooted(1).unwrap()[0]);
        assert_eq!(one.vertex_count(), 1);
        assert_eq!(one.edges().len(), 0);

        let two = rooted_to_collapsible(&enum_rooted(2).unwrap()[0]);
        assert_eq!(two.white_count(), 2);
        assert_eq!(two.black_count(), 1);
        let root_edge = two
            .edges()
            .iter()
            .find(|e| e.u == VertexId(0) || e.v == VertexId(0))
            .unwrap();
        assert_eq!(root_edge.label, 2);
        let verdict = is_21_collapsible(&two);
        assert_eq!(verdict.root, Some(VertexId(0)));
    }
}
