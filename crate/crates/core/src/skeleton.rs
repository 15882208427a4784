//! Generating trees, their skeletons, and split variants.
//!
//! A generating tree has `b` black vertices and white vertices of degree at
//! least 3. Its skeleton subdivides every black–black edge with a white
//! vertex and pads each black vertex with terminal whites up to degree 3.
//! Every white vertex of a skeleton is a slot that later receives an
//! attachment tree. A split variant breaks some non-terminal slots into
//! several copies that are re-joined through one multi-marked tree.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{self, Adjacency, CanonicalCode};
use crate::error::{Error, Result};
use crate::graph::{StratGraph, VertexColor, VertexId, VertexKind};
use crate::trees::enum_free;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingTree {
    colors: Vec<VertexColor>,
    edges: Vec<(usize, usize)>,
    code: CanonicalCode,
}

impl GeneratingTree {
    /// Builds a generating tree, checking the coloring constraints: white
    /// vertices have degree >= 3 and only black neighbors, black vertices
    /// have degree <= 3.
    pub fn new(colors: Vec<VertexColor>, edges: Vec<(usize, usize)>) -> Option<Self> {
        let n = colors.len();
        if n == 0 || edges.len() + 1 != n {
            return None;
        }
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            if colors[a] == VertexColor::White && colors[b] == VertexColor::White {
                return None;
            }
            deg[a] += 1;
            deg[b] += 1;
        }
        let ok = (0..n).all(|v| match colors[v] {
            VertexColor::White => deg[v] >= 3,
            VertexColor::Black => deg[v] <= 3,
        });
        if !ok {
            return None;
        }
        let adj = adjacency(n, &edges);
        let symbols: Vec<String> = colors
            .iter()
            .map(|c| if *c == VertexColor::Black { "B" } else { "W" }.to_string())
            .collect();
        let code = CanonicalCode::new(canon::tree_code(&adj, &symbols));
        Some(Self {
            colors,
            edges,
            code,
        })
    }

    pub fn colors(&self) -> &[VertexColor] {
        &self.colors
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn code(&self) -> &CanonicalCode {
        &self.code
    }

    pub fn black_count(&self) -> usize {
        self.colors
            .iter()
            .filter(|c| **c == VertexColor::Black)
            .count()
    }

    pub fn white_count(&self) -> usize {
        self.colors.len() - self.black_count()
    }

    /// Short human-readable shape name.
    pub fn shape(&self) -> String {
        let mut deg = vec![0usize; self.colors.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let b = self.black_count();
        match self.white_count() {
            0 if b == 1 => "single".to_string(),
            0 if deg.iter().all(|&d| d <= 2) => "linear".to_string(),
            0 => "branched".to_string(),
            1 if deg.contains(&b) => "star".to_string(),
            w => format!("mixed-{w}w"),
        }
    }
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Adjacency {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push((b, 1));
        adj[b].push((a, 1));
    }
    adj
}

/// All generating trees with `b` black vertices, ordered by code. For `b = 0`
/// the list is empty: that case has no skeleton and is counted directly by
/// rooted trees.
pub fn enum_generating_trees(b: usize) -> Vec<GeneratingTree> {
    let mut out = BTreeMap::new();
    if b == 0 {
        return Vec::new();
    }
    // each white needs three black neighbors: 3w <= b + w - 1
    for w in 0..=(b - 1) / 2 {
        let n = b + w;
        for tree in enum_free(n).expect("n >= 1") {
            for whites in combinations(n, w) {
                let mut colors = vec![VertexColor::Black; n];
                for &x in &whites {
                    colors[x] = VertexColor::White;
                }
                if let Some(gt) = GeneratingTree::new(colors, tree.edges().to_vec()) {
                    out.entry(gt.code.clone()).or_insert(gt);
                }
            }
        }
    }
    out.into_values().collect()
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Something attachment trees can be glued onto: a base graph whose white
/// vertices are partitioned into groups. A group of `p` copies receives one
/// tree with `p` marks.
pub trait AttachmentTemplate {
    fn base(&self) -> &StratGraph;
    fn groups(&self) -> &[Vec<VertexId>];
    /// Permutations of group indices induced by automorphisms of the template.
    fn group_symmetries(&self) -> &[Vec<usize>];
    fn label(&self) -> String;
    fn is_split(&self) -> bool;
}

#[derive(Debug, Clone)]
pub struct Skeleton {
    base: StratGraph,
    slots: Vec<VertexId>,
    groups: Vec<Vec<VertexId>>,
    symmetries: Vec<Vec<usize>>,
    automorphisms: Vec<Vec<usize>>,
    shape: String,
}

impl Skeleton {
    pub fn base(&self) -> &StratGraph {
        &self.base
    }

    pub fn slots(&self) -> &[VertexId] {
        &self.slots
    }

    /// Slot permutations (`perm[i]` is the image of slot `i`).
    pub fn symmetries(&self) -> &[Vec<usize>] {
        &self.symmetries
    }

    pub fn shape(&self) -> &str {
        &self.shape
    }

    pub fn is_terminal_slot(&self, slot: usize) -> bool {
        self.base.degree(self.slots[slot]) == 1
    }
}

impl AttachmentTemplate for Skeleton {
    fn base(&self) -> &StratGraph {
        &self.base
    }

    fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }

    fn group_symmetries(&self) -> &[Vec<usize>] {
        &self.symmetries
    }

    fn label(&self) -> String {
        format!("{} connected", self.shape)
    }

    fn is_split(&self) -> bool {
        false
    }
}

pub fn skeleton_of(t: &GeneratingTree) -> Result<Skeleton> {
    let n = t.colors.len();
    let mut deg = vec![0usize; n];
    for &(a, b) in &t.edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    if let Some(v) = (0..n).find(|&v| t.colors[v] == VertexColor::Black && deg[v] > 3) {
        return Err(Error::OverfullBlack(v));
    }
    let mut base = StratGraph::new();
    let mut id = vec![VertexId(usize::MAX); n];
    for v in (0..n).filter(|&v| t.colors[v] == VertexColor::Black) {
        id[v] = base.add_black();
    }
    for v in (0..n).filter(|&v| t.colors[v] == VertexColor::White) {
        id[v] = base.add_white(0);
    }
    for &(a, b) in &t.edges {
        if t.colors[a] == VertexColor::Black && t.colors[b] == VertexColor::Black {
            let mid = base.add_white(0);
            base.add_edge(id[a], mid, 1);
            base.add_edge(mid, id[b], 1);
        } else {
            base.add_edge(id[a], id[b], 1);
        }
    }
    for v in (0..n).filter(|&v| t.colors[v] == VertexColor::Black) {
        for _ in deg[v]..3 {
            let leaf = base.add_white(0);
            base.add_edge(id[v], leaf, 1);
        }
    }
    let slots: Vec<VertexId> = base.vertex_ids().filter(|&v| base.is_white(v)).collect();
    let automorphisms = canon::automorphisms(
        &canon::labeled_adjacency(&base),
        &canon::graph_symbols(&base),
    );
    let symmetries = induced_group_perms(
        &automorphisms,
        &slots.iter().map(|&s| vec![s]).collect::<Vec<_>>(),
    );
    let groups = slots.iter().map(|&s| vec![s]).collect();
    Ok(Skeleton {
        base,
        slots,
        groups,
        symmetries,
        automorphisms,
        shape: t.shape(),
    })
}

/// Group permutations induced by vertex automorphisms; each group is sent to
/// the group containing the image of its first vertex.
fn induced_group_perms(autos: &[Vec<usize>], groups: &[Vec<VertexId>]) -> Vec<Vec<usize>> {
    let mut group_of = BTreeMap::new();
    for (i, g) in groups.iter().enumerate() {
        for v in g {
            group_of.insert(v.0, i);
        }
    }
    let perms: BTreeSet<Vec<usize>> = autos
        .iter()
        .map(|a| groups.iter().map(|g| group_of[&a[g[0].0]]).collect())
        .collect();
    perms.into_iter().collect()
}

/// A skeleton with some non-terminal slots split into copies.
#[derive(Debug, Clone)]
pub struct SplitSkeleton {
    base: StratGraph,
    groups: Vec<Vec<VertexId>>,
    symmetries: Vec<Vec<usize>>,
    split_slots: Vec<usize>,
    shape: String,
}

impl SplitSkeleton {
    /// Indices (into the skeleton's slot list) of the split slots.
    pub fn split_slots(&self) -> &[usize] {
        &self.split_slots
    }

    /// Total number of marks demanded by split groups.
    pub fn marks_required(&self) -> usize {
        self.groups
            .iter()
            .filter(|g| g.len() > 1)
            .map(Vec::len)
            .sum()
    }
}

impl AttachmentTemplate for SplitSkeleton {
    fn base(&self) -> &StratGraph {
        &self.base
    }

    fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }

    fn group_symmetries(&self) -> &[Vec<usize>] {
        &self.symmetries
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self
            .split_slots
            .iter()
            .map(|&s| format!("v{s}/{}", self.groups[s].len()))
            .collect();
        format!("{} split[{}]", self.shape, parts.join(","))
    }

    fn is_split(&self) -> bool {
        true
    }
}

/// Set partitions of `items`, trivial (single block) partition first.
fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, items: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == items.len() {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(items[i]);
            go(i + 1, items, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![items[i]]);
        go(i + 1, items, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut blocks = vec![vec![items[0]]];
    go(1, items, &mut blocks, &mut out);
    out
}

/// A choice of split: for each split slot vertex, the partition of its black
/// neighbors. Normalized so that it can be compared under automorphisms.
type SplitChoice = Vec<(usize, Vec<Vec<usize>>)>;

fn normalize(mut choice: SplitChoice) -> SplitChoice {
    for (_, blocks) in &mut choice {
        for block in blocks.iter_mut() {
            block.sort_unstable();
        }
        blocks.sort();
    }
    choice.sort();
    choice
}

/// All split variants of a skeleton, one per symmetry class.
pub fn split_variants(s: &Skeleton) -> Vec<SplitSkeleton> {
    let inc = s.base.incidence();
    let inner: Vec<(usize, Vec<Vec<Vec<usize>>>)> = s
        .slots
        .iter()
        .filter(|&&w| inc[w.0].len() >= 2)
        .map(|&w| {
            let nbrs: Vec<usize> = inc[w.0].iter().map(|&(y, _)| y.0).collect();
            (w.0, set_partitions(&nbrs))
        })
        .collect();

    let mut classes = BTreeSet::new();
    let mut pick = vec![0usize; inner.len()];
    loop {
        let choice: SplitChoice = inner
            .iter()
            .zip(&pick)
            .filter(|(_, &k)| k > 0)
            .map(|((w, parts), &k)| (*w, parts[k].clone()))
            .collect();
        if !choice.is_empty() {
            let rep = s
                .automorphisms
                .iter()
                .map(|a| {
                    normalize(
                        choice
                            .iter()
                            .map(|(w, blocks)| {
                                (
                                    a[*w],
                                    blocks
                                        .iter()
                                        .map(|bl| bl.iter().map(|&x| a[x]).collect())
                                        .collect(),
                                )
                            })
                            .collect(),
                    )
                })
                .min()
                .expect("identity automorphism");
            classes.insert(rep);
        }
        // odometer over the partition choices
        let mut i = 0;
        while i < inner.len() {
            pick[i] += 1;
            if pick[i] < inner[i].1.len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == inner.len() {
            break;
        }
    }
    classes
        .into_iter()
        .map(|choice| build_split(s, &choice))
        .collect()
}

fn build_split(s: &Skeleton, choice: &SplitChoice) -> SplitSkeleton {
    let mut base = StratGraph::new();
    for v in s.base.vertex_ids() {
        match s.base.kind(v) {
            VertexKind::Black => base.add_black(),
            VertexKind::White { genus } => base.add_white(genus),
        };
    }
    // (split vertex, black neighbor) -> replacement copy
    let mut redirect = BTreeMap::new();
    let mut copies: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (w, blocks) in choice {
        let mut group = vec![VertexId(*w)];
        // the block holding the smallest neighbor keeps the original vertex
        for block in blocks.iter().skip(1) {
            let copy = base.add_white(0);
            group.push(copy);
            for &x in block {
                redirect.insert((*w, x), copy);
            }
        }
        copies.insert(*w, group);
    }
    for e in s.base.edges() {
        let (w, x) = if s.base.is_white(e.u) {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        let w = redirect.get(&(w.0, x.0)).copied().unwrap_or(w);
        base.add_edge(w, x, e.label);
    }
    let mut groups = Vec::with_capacity(s.slots.len());
    let mut split_slots = Vec::new();
    for (i, &slot) in s.slots.iter().enumerate() {
        match copies.get(&slot.0) {
            Some(group) => {
                split_slots.push(i);
                groups.push(group.clone());
            }
            None => groups.push(vec![slot]),
        }
    }
    // rejoin each split group through a hub vertex to compute symmetries
    let mut joined = canon::labeled_adjacency(&base);
    let mut symbols = canon::graph_symbols(&base);
    for group in groups.iter().filter(|g| g.len() > 1) {
        let hub = joined.len();
        joined.push(Vec::new());
        symbols.push("h".to_string());
        for &c in group {
            joined[hub].push((c.0, 0));
            joined[c.0].push((hub, 0));
        }
    }
    let autos = canon::automorphisms(&joined, &symbols);
    let symmetries = induced_group_perms(&autos, &groups);
    SplitSkeleton {
        base,
        groups,
        symmetries,
        split_slots,
        shape: s.shape.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_tree, is_trivalent, validate};

    #[test]
    fn generating_tree_counts() {
        assert!(enum_generating_trees(0).is_empty());
        assert_eq!(enum_generating_trees(1).len(), 1);
        assert_eq!(enum_generating_trees(2).len(), 1);
        let b3 = enum_generating_trees(3);
        assert_eq!(b3.len(), 2);
        let shapes: BTreeSet<String> = b3.iter().map(|t| t.shape()).collect();
        assert_eq!(
            shapes,
            BTreeSet::from(["linear".to_string(), "star".to_string()])
        );
        assert_eq!(enum_generating_trees(4).len(), 4);
    }

    #[test]
    fn generating_tree_constraints() {
        use VertexColor::*;
        assert!(GeneratingTree::new(vec![White, Black], vec![(0, 1)]).is_none());
        assert!(GeneratingTree::new(
            vec![Black, Black, Black, Black, Black],
            vec![(0, 1), (0, 2), (0, 3), (0, 4)]
        )
        .is_none());
        assert!(GeneratingTree::new(
            vec![White, Black, Black, Black],
            vec![(0, 1), (0, 2), (0, 3)]
        )
        .is_some());
    }

    #[test]
    fn b1_skeleton_is_the_full_symmetric_star() {
        let s = skeleton_of(&enum_generating_trees(1)[0]).unwrap();
        assert_eq!(s.slots().len(), 3);
        assert_eq!(s.symmetries().len(), 6);
        assert!(split_variants(&s).is_empty());
    }

    #[test]
    fn b2_skeleton() {
        let s = skeleton_of(&enum_generating_trees(2)[0]).unwrap();
        assert_eq!(s.slots().len(), 5);
        assert!(!s.is_terminal_slot(0));
        assert!((1..5).all(|i| s.is_terminal_slot(i)));
        assert_eq!(s.symmetries().len(), 8);
        let variants = split_variants(&s);
        assert_eq!(variants.len(), 1);
        assert_eq!(variants[0].groups()[0].len(), 2);
        assert_eq!(variants[0].marks_required(), 2);
        assert_eq!(variants[0].group_symmetries().len(), 8);
        assert_eq!(variants[0].base().components().len(), 2);
    }

    #[test]
    fn b3_skeletons() {
        for t in enum_generating_trees(3) {
            let s = skeleton_of(&t).unwrap();
            assert_eq!(s.slots().len(), 7);
            let variants = split_variants(&s);
            assert_eq!(variants.len(), 2, "{}", t.shape());
        }
    }

    #[test]
    fn skeleton_invariants_up_to_b4() {
        for b in 1..=4 {
            for t in enum_generating_trees(b) {
                let s = skeleton_of(&t).unwrap();
                let base = s.base();
                assert!(validate(base).accepted);
                assert!(is_tree(base));
                assert!(is_trivalent(base));
                assert_eq!(base.degree3_blacks().len(), b);
                assert_eq!(base.black_count(), b);
                assert_eq!(s.slots().len(), 2 * b + 1);
                let k = s.slots().len();
                let factorial: usize = (1..=k).product();
                assert_eq!(factorial % s.symmetries().len(), 0);
                for p in s.symmetries() {
                    let mut sorted = p.clone();
                    sorted.sort_unstable();
                    assert_eq!(sorted, (0..k).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(&[1, 2]).len(), 2);
        assert_eq!(set_partitions(&[1, 2, 3]).len(), 5);
        assert_eq!(set_partitions(&[1, 2, 3, 4]).len(), 15);
        assert_eq!(set_partitions(&[4, 5, 6])[0], vec![vec![4, 5, 6]]);
    }
}
