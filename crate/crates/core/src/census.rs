//! Counting 1-connected trivalent graphs with `n` white vertices.
//!
//! Three engines are available: closed formulas (`b <= 1` only), a
//! constructive engine that glues attachment trees onto skeletons, and a
//! brute-force engine that runs the classifier over every candidate tree.
//! [`reconcile`] runs all three and reports any disagreement.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::canon::{self, CanonicalCode};
use crate::classify::is_simply_connected;
use crate::error::{Error, Result};
use crate::graph::{StratGraph, VertexId};
use crate::skeleton::{
    combinations, enum_generating_trees, skeleton_of, split_variants, AttachmentTemplate, Skeleton,
    SplitSkeleton,
};
use crate::trees::{
    attach_bisected, birooted_counts, enum_birooted, enum_drooted, enum_free, enum_rooted,
    rooted_counts, rooted_to_collapsible, MarkedTree,
};

/// Default cap on `n` for the exhaustive engines.
pub const DEFAULT_LIMIT: usize = 8;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc as u64
}

/// `C(n, k)` for `k <= 3` without intermediate overflow.
fn binomial_wide(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of non-increasing maps `{1..r} -> {1..m}`, i.e. `C(m + r - 1, r)`.
pub fn multiset_count(m: u64, r: u64) -> Result<u64> {
    if m == 0 || r == 0 {
        return Err(Error::BadMultiset { m, r });
    }
    Ok(binomial(m + r - 1, r))
}

/// Graphs without degree-3 black vertices: one per rooted tree.
pub fn count_b0(n: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    Ok(rooted_counts(n)?[n])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShapeClass {
    Scalene,
    Isosceles,
    Equilateral,
}

impl ShapeClass {
    /// Class of a three-part partition.
    pub fn of(parts: [usize; 3]) -> Self {
        let distinct: BTreeSet<usize> = parts.into_iter().collect();
        match distinct.len() {
            3 => ShapeClass::Scalene,
            2 => ShapeClass::Isosceles,
            _ => ShapeClass::Equilateral,
        }
    }

    pub fn letter(self) -> char {
        match self {
            ShapeClass::Scalene => 'S',
            ShapeClass::Isosceles => 'I',
            ShapeClass::Equilateral => 'E',
        }
    }
}

/// Formula count for one partition `a1 >= a2 >= a3` of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B1Row {
    pub class: ShapeClass,
    pub parts: [usize; 3],
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct B1Count {
    pub s: u64,
    pub i: u64,
    pub e: u64,
    pub rows: Vec<B1Row>,
}

impl B1Count {
    pub fn total(&self) -> u64 {
        self.s + self.i + self.e
    }
}

/// Closed-form count of graphs with one degree-3 black vertex, split into
/// scalene, isosceles and equilateral partitions. All zero for `n < 3`.
pub fn count_b1(n: usize) -> Result<B1Count> {
    let mut out = B1Count::default();
    if n < 3 {
        return Ok(out);
    }
    let r = rooted_counts(n)?;
    let mm = birooted_counts(n)?;
    let m = |k: usize| u128::from(mm[k]);
    let u = |k: usize| u128::from(mm[k] - r[k]);
    let c = |n: u128, k: u128| binomial_wide(n, k);
    for a1 in (1..=n - 2).rev() {
        for a2 in (1..=a1.min(n - a1 - 1)).rev() {
            let a3 = n - a1 - a2;
            if a3 > a2 {
                continue;
            }
            let parts = [a1, a2, a3];
            let class = ShapeClass::of(parts);
            let count = match class {
                ShapeClass::Scalene => m(a1) * m(a2) * m(a3) - u(a1) * u(a2) * u(a3),
                ShapeClass::Isosceles => {
                    let (single, a) = if a1 == a2 { (a3, a1) } else { (a1, a2) };
                    m(single) * c(m(a) + 1, 2) - u(single) * c(u(a) + 1, 2)
                }
                ShapeClass::Equilateral => c(m(a1) + 2, 3) - c(u(a1) + 2, 3),
            };
            let count = u64::try_from(count).map_err(|_| Error::Overflow(n))?;
            match class {
                ShapeClass::Scalene => out.s += count,
                ShapeClass::Isosceles => out.i += count,
                ShapeClass::Equilateral => out.e += count,
            }
            out.rows.push(B1Row {
                class,
                parts,
                count,
            });
        }
    }
    Ok(out)
}

/// A skeleton or one of its split variants.
#[derive(Debug, Clone)]
pub enum Template {
    Connected(Skeleton),
    Split(SplitSkeleton),
}

impl Template {
    fn inner(&self) -> &dyn AttachmentTemplate {
        match self {
            Template::Connected(s) => s,
            Template::Split(s) => s,
        }
    }
}

impl AttachmentTemplate for Template {
    fn base(&self) -> &StratGraph {
        self.inner().base()
    }

    fn groups(&self) -> &[Vec<VertexId>] {
        self.inner().groups()
    }

    fn group_symmetries(&self) -> &[Vec<usize>] {
        self.inner().group_symmetries()
    }

    fn label(&self) -> String {
        self.inner().label()
    }

    fn is_split(&self) -> bool {
        self.inner().is_split()
    }
}

/// Every template with `b` degree-3 black vertices: each skeleton followed
/// by its split variants.
pub fn templates(b: usize) -> Result<Vec<Template>> {
    let mut out = Vec::new();
    for t in enum_generating_trees(b) {
        let s = skeleton_of(&t)?;
        let splits = split_variants(&s);
        out.push(Template::Connected(s));
        out.extend(splits.into_iter().map(Template::Split));
    }
    Ok(out)
}

/// Glues one marked tree onto each group of `template`. The tree for a group
/// of `p` copies carries `p` marks; mark `j` is identified with copy `j`.
/// Each tree is bisected and labeled by distance parity to its root.
pub fn attach(template: &dyn AttachmentTemplate, trees: &[&MarkedTree]) -> Result<StratGraph> {
    let groups = template.groups();
    if trees.len() != groups.len() {
        return Err(Error::AssignmentMismatch(format!(
            "{} trees for {} groups",
            trees.len(),
            groups.len()
        )));
    }
    let mut g = template.base().clone();
    for (i, (group, t)) in groups.iter().zip(trees).enumerate() {
        if t.marks.len() != group.len() {
            return Err(Error::AssignmentMismatch(format!(
                "group {i} has {} copies but its tree has {} marks",
                group.len(),
                t.marks.len()
            )));
        }
        let mut whites = vec![VertexId(usize::MAX); t.len()];
        for (&m, &copy) in t.marks.iter().zip(group) {
            whites[m] = copy;
        }
        for w in whites.iter_mut().filter(|w| w.0 == usize::MAX) {
            *w = g.add_white(0);
        }
        attach_bisected(&mut g, &t.tree, t.root, &whites);
    }
    Ok(g)
}

/// Identifies a census row: the number of degree-3 black vertices, the
/// template index within [`templates`], and the orbit representative of the
/// group sizes (the lexicographically largest image under the template's
/// symmetries). For `b = 0` the template is 0 and the parts are `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowKey {
    pub b: usize,
    pub template: usize,
    pub parts: Vec<usize>,
}

impl RowKey {
    fn class(&self) -> Option<ShapeClass> {
        (self.b == 1).then(|| ShapeClass::of([self.parts[0], self.parts[1], self.parts[2]]))
    }

    /// Parts in display order. Isosceles partitions put the odd part first.
    pub fn display_parts(&self) -> Vec<usize> {
        match self.class() {
            Some(ShapeClass::Isosceles) if self.parts[0] == self.parts[1] => {
                vec![self.parts[2], self.parts[0], self.parts[1]]
            }
            _ => self.parts.clone(),
        }
    }

    fn sort_key(&self) -> (usize, usize, Option<ShapeClass>, Reverse<Vec<usize>>) {
        (
            self.b,
            self.template,
            self.class(),
            Reverse(self.display_parts()),
        )
    }
}

impl Ord for RowKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for RowKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn describe(key: &RowKey, label: &str) -> String {
    match key.class() {
        _ if key.b == 0 => "rooted".to_string(),
        Some(class) => format!("{} ({})", class.letter(), join(&key.display_parts())),
        None => format!("{label} ({})", join(&key.parts)),
    }
}

/// Compositions of `n` whose `i`-th part is at least `mins[i]`.
fn compositions(n: usize, mins: &[usize]) -> Vec<Vec<usize>> {
    fn go(rest: usize, mins: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == mins.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail: usize = mins[i + 1..].iter().sum();
        if rest < mins[i] + tail {
            return;
        }
        for part in mins[i]..=rest - tail {
            cur.push(part);
            go(rest - part, mins, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, mins, &mut Vec::new(), &mut out);
    out
}

/// Largest image of `parts` under the group permutations.
fn orbit_rep(parts: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut image = vec![0; parts.len()];
            for (i, &x) in parts.iter().enumerate() {
                image[p[i]] = x;
            }
            image
        })
        .max()
        .unwrap_or_else(|| parts.to_vec())
}

/// Code of the weighted star: the base graph plus one hub per group, tagged
/// with the group's size and joined to each copy.
fn weighted_code(base: &StratGraph, groups: &[Vec<VertexId>], sizes: &[usize]) -> CanonicalCode {
    let mut adj = canon::labeled_adjacency(base);
    let mut symbols = canon::graph_symbols(base);
    for (group, &size) in groups.iter().zip(sizes) {
        let hub = adj.len();
        adj.push(Vec::new());
        symbols.push(format!("h{size}"));
        for &c in group {
            adj[hub].push((c.0, 0));
            adj[c.0].push((hub, 0));
        }
    }
    CanonicalCode::new(canon::tree_code(&adj, &symbols))
}

/// The weighted-star code of a graph with at least one degree-3 black
/// vertex: the closed star of those vertices, with each piece of the rest of
/// the graph replaced by a hub recording its white count.
fn graph_weighted_code(g: &StratGraph) -> Option<CanonicalCode> {
    let big: BTreeSet<usize> = g.degree3_blacks().into_iter().map(|v| v.0).collect();
    if big.is_empty() || !crate::graph::is_tree(g) {
        return None;
    }
    let star_edge = |e: &crate::graph::Edge| big.contains(&e.u.0) || big.contains(&e.v.0);
    let star: Vec<VertexId> = g
        .vertex_ids()
        .filter(|v| {
            big.contains(&v.0) || g.incidence()[v.0].iter().any(|&(y, _)| big.contains(&y.0))
        })
        .collect();
    // pieces of the graph once star edges are removed
    let rest = g.subgraph(&g.vertex_ids().collect::<Vec<_>>(), |_, e| !star_edge(e));
    let mut piece_of = vec![usize::MAX; g.vertex_count()];
    for (k, comp) in rest.graph.components().into_iter().enumerate() {
        for v in comp {
            piece_of[rest.origin[v.0].0] = k;
        }
    }
    let mut index = BTreeMap::new();
    let mut base = StratGraph::new();
    for &v in &star {
        index.insert(v.0, base.add_named(g.display_name(v), g.kind(v)));
    }
    for e in g.edges().iter().filter(|e| star_edge(e)) {
        base.add_edge(index[&e.u.0], index[&e.v.0], e.label);
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for &v in star.iter().filter(|v| g.is_white(**v)) {
        groups.entry(piece_of[v.0]).or_default().push(index[&v.0]);
    }
    let mut whites_in = BTreeMap::new();
    for v in g.vertex_ids().filter(|&v| g.is_white(v)) {
        *whites_in.entry(piece_of[v.0]).or_insert(0usize) += 1;
    }
    let sizes: Vec<usize> = groups.keys().map(|k| whites_in[k]).collect();
    let groups: Vec<Vec<VertexId>> = groups.into_values().collect();
    Some(weighted_code(&base, &groups, &sizes))
}

/// Maps graphs with `n` whites to their census rows.
#[derive(Debug, Clone)]
pub struct Profiler {
    n: usize,
    labels: BTreeMap<usize, Vec<String>>,
    table: BTreeMap<CanonicalCode, RowKey>,
}

impl Profiler {
    pub fn new(n: usize) -> Result<Self> {
        Self::up_to(n, max_b(n))
    }

    /// Profiler covering rows with at most `max_b` degree-3 black vertices.
    pub fn up_to(n: usize, max_b: usize) -> Result<Self> {
        let mut labels = BTreeMap::new();
        let mut table = BTreeMap::new();
        for b in 1..=max_b {
            let temps = templates(b)?;
            for (ti, t) in temps.iter().enumerate() {
                for parts in rep_compositions(n, t) {
                    let code = weighted_code(t.base(), t.groups(), &parts);
                    table.insert(
                        code,
                        RowKey {
                            b,
                            template: ti,
                            parts,
                        },
                    );
                }
            }
            labels.insert(b, temps.iter().map(|t| t.label()).collect());
        }
        Ok(Self { n, labels, table })
    }

    /// Row of an accepted graph, or `None` if it matches no template.
    pub fn profile(&self, g: &StratGraph) -> Option<RowKey> {
        match g.degree3_blacks().len() {
            0 => Some(RowKey {
                b: 0,
                template: 0,
                parts: vec![self.n],
            }),
            _ => self.table.get(&graph_weighted_code(g)?).cloned(),
        }
    }

    pub fn describe(&self, key: &RowKey) -> String {
        let label = self
            .labels
            .get(&key.b)
            .and_then(|l| l.get(key.template))
            .map_or("", String::as_str);
        describe(key, label)
    }
}

/// Largest possible number of degree-3 black vertices with `n` whites.
pub fn max_b(n: usize) -> usize {
    n.saturating_sub(1) / 2
}

/// Group-size compositions of `n` that are their own orbit representative.
fn rep_compositions(n: usize, t: &dyn AttachmentTemplate) -> Vec<Vec<usize>> {
    let mins: Vec<usize> = t.groups().iter().map(Vec::len).collect();
    compositions(n, &mins)
        .into_iter()
        .filter(|c| &orbit_rep(c, t.group_symmetries()) == c)
        .collect()
}

/// Accepted graphs by code.
pub type GraphSet = BTreeMap<CanonicalCode, StratGraph>;

/// Constructive engine: every accepted graph with `n` whites and `b`
/// degree-3 black vertices, grouped by row.
pub fn constructive_graphs(n: usize, b: usize) -> Result<BTreeMap<RowKey, GraphSet>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    let mut rows = BTreeMap::new();
    if b == 0 {
        let mut set = GraphSet::new();
        for rt in enum_rooted(n)? {
            let g = rooted_to_collapsible(&rt);
            if is_simply_connected(&g).accepted {
                set.insert(canon::canonical_code(&g)?, g);
            }
        }
        rows.insert(
            RowKey {
                b,
                template: 0,
                parts: vec![n],
            },
            set,
        );
        return Ok(rows);
    }
    let mut pool = TreePool::default();
    let mut seen = BTreeSet::new();
    for (ti, t) in templates(b)?.iter().enumerate() {
        for parts in rep_compositions(n, t) {
            let choices: Vec<Vec<MarkedTree>> = t
                .groups()
                .iter()
                .zip(&parts)
                .map(|(group, &size)| pool.get(size, group.len()))
                .collect::<Result<_>>()?;
            let mut set = GraphSet::new();
            let mut pick = vec![0usize; choices.len()];
            loop {
                let trees: Vec<&MarkedTree> =
                    choices.iter().zip(&pick).map(|(c, &k)| &c[k]).collect();
                let g = attach(t, &trees)?;
                if is_simply_connected(&g).accepted {
                    let code = canon::canonical_code(&g)?;
                    if seen.insert(code.clone()) {
                        set.insert(code, g);
                    }
                }
                if !advance(&mut pick, &choices) {
                    break;
                }
            }
            if !set.is_empty() {
                rows.insert(
                    RowKey {
                        b,
                        template: ti,
                        parts,
                    },
                    set,
                );
            }
        }
    }
    Ok(rows)
}

/// Steps an odometer; returns false once it wraps around.
fn advance<T>(pick: &mut [usize], choices: &[Vec<T>]) -> bool {
    for (p, c) in pick.iter_mut().zip(choices) {
        *p += 1;
        if *p < c.len() {
            return true;
        }
        *p = 0;
    }
    false
}

/// Cache of attachment trees by (size, number of marks).
#[derive(Default)]
struct TreePool {
    cache: BTreeMap<(usize, usize), Vec<MarkedTree>>,
}

impl TreePool {
    fn get(&mut self, size: usize, marks: usize) -> Result<Vec<MarkedTree>> {
        if let Some(v) = self.cache.get(&(size, marks)) {
            return Ok(v.clone());
        }
        let trees: Vec<MarkedTree> = if marks == 1 {
            enum_birooted(size)?
                .into_iter()
                .map(|t| t.as_marked().clone())
                .collect()
        } else {
            enum_drooted(size, marks + 1)?
                .into_iter()
                .map(|t| t.as_marked().clone())
                .collect()
        };
        self.cache.insert((size, marks), trees.clone());
        Ok(trees)
    }
}

pub fn constructive_census(n: usize, b: usize) -> Result<BTreeSet<CanonicalCode>> {
    Ok(constructive_graphs(n, b)?
        .into_values()
        .flat_map(BTreeMap::into_keys)
        .collect())
}

/// Brute-force engine: every bipartite tree with `n` genus-0 whites whose
/// black vertices have degree 3 (labels 1,1,1) or degree 2 (labels 1,2 in
/// either orientation), filtered by the classifier. Keyed by the number of
/// degree-3 black vertices.
///
/// Candidates come from free trees on `n + b` vertices: `b` degree-3
/// vertices with only white neighbors become the degree-3 blacks, and every
/// white–white edge is subdivided by a degree-2 black.
pub fn brute_force_graphs(n: usize, limit: usize) -> Result<BTreeMap<usize, GraphSet>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > limit {
        return Err(Error::AboveLimit { n, limit });
    }
    let mut out = BTreeMap::new();
    for b in 0..=max_b(n) {
        let mut set = GraphSet::new();
        for tree in enum_free(n + b)? {
            let nbrs = tree.neighbors();
            let cubic: Vec<usize> = (0..tree.len()).filter(|&v| nbrs[v].len() == 3).collect();
            for pick in combinations(cubic.len(), b) {
                let mut is_big = vec![false; tree.len()];
                for &i in &pick {
                    is_big[cubic[i]] = true;
                }
                if tree.edges().iter().any(|&(x, y)| is_big[x] && is_big[y]) {
                    continue;
                }
                let thin: Vec<(usize, usize)> = tree
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&(x, y)| !is_big[x] && !is_big[y])
                    .collect();
                for mask in 0u64..1 << thin.len() {
                    let g = assemble(tree.edges(), &is_big, &thin, mask);
                    if is_simply_connected(&g).accepted {
                        set.insert(canon::canonical_code(&g)?, g);
                    }
                }
            }
        }
        out.insert(b, set);
    }
    Ok(out)
}

fn assemble(
    edges: &[(usize, usize)],
    is_big: &[bool],
    thin: &[(usize, usize)],
    mask: u64,
) -> StratGraph {
    let mut g = StratGraph::new();
    let ids: Vec<VertexId> = is_big
        .iter()
        .map(|&big| if big { g.add_black() } else { g.add_white(0) })
        .collect();
    for &(x, y) in edges.iter().filter(|&&(x, y)| is_big[x] || is_big[y]) {
        g.add_edge(ids[x], ids[y], 1);
    }
    for (i, &(x, y)) in thin.iter().enumerate() {
        let d = g.add_black();
        let (two, one) = if mask >> i & 1 == 1 { (x, y) } else { (y, x) };
        g.add_edge(ids[two], d, 2);
        g.add_edge(d, ids[one], 1);
    }
    g
}

pub fn brute_force_census(
    n: usize,
    limit: usize,
) -> Result<BTreeMap<usize, BTreeSet<CanonicalCode>>> {
    Ok(brute_force_graphs(n, limit)?
        .into_iter()
        .map(|(b, set)| (b, set.into_keys().collect()))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Engine {
    Formula,
    Constructive,
    Brute,
    All,
}

impl Engine {
    fn runs(self, other: Engine) -> bool {
        self == Engine::All || self == other
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Formula => "formula",
            Engine::Constructive => "constructive",
            Engine::Brute => "brute",
            Engine::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub b: usize,
    pub key: RowKey,
    pub descriptor: String,
    pub count: u64,
    pub formula: Option<u64>,
    pub constructive: Option<u64>,
    pub brute: Option<u64>,
}

/// Two engines disagree. `witness` is a graph code found by `first` but not
/// by `second`, when code sets are available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub b: usize,
    pub first: Engine,
    pub second: Engine,
    pub witness: Option<CanonicalCode>,
    pub detail: String,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "b={}: {} vs {}: {}",
            self.b, self.first, self.second, self.detail
        )?;
        if let Some(w) = &self.witness {
            write!(f, " (witness {w})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub engine: Engine,
    pub rows: Vec<CensusRow>,
    pub totals: BTreeMap<usize, u64>,
    pub grand_total: u64,
    pub disagreements: Vec<Disagreement>,
}

impl CensusReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn rows_for(&self, b: usize) -> impl Iterator<Item = &CensusRow> {
        self.rows.iter().filter(move |r| r.b == b)
    }

    pub fn total_for(&self, b: usize) -> u64 {
        self.totals.get(&b).copied().unwrap_or(0)
    }
}

/// Runs the selected engines for `n` whites. The formula engine covers
/// `b <= 1` only; the exhaustive engines are capped by `limit`.
pub fn census(n: usize, engine: Engine, limit: usize) -> Result<CensusReport> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if n > limit && engine != Engine::Formula {
        return Err(Error::AboveLimit { n, limit });
    }
    let profiler = match engine {
        Engine::Formula => Profiler::up_to(n, 1)?,
        _ => Profiler::new(n)?,
    };
    let mut formula: BTreeMap<RowKey, u64> = BTreeMap::new();
    let mut constructive: BTreeMap<RowKey, GraphSet> = BTreeMap::new();
    let mut brute: BTreeMap<RowKey, GraphSet> = BTreeMap::new();
    let mut disagreements = Vec::new();

    if engine.runs(Engine::Formula) {
        formula.insert(
            RowKey {
                b: 0,
                template: 0,
                parts: vec![n],
            },
            count_b0(n)?,
        );
        for row in count_b1(n)?.rows {
            formula.insert(
                RowKey {
                    b: 1,
                    template: 0,
                    parts: row.parts.to_vec(),
                },
                row.count,
            );
        }
    }
    if engine.runs(Engine::Constructive) {
        for b in 0..=max_b(n) {
            constructive.extend(constructive_graphs(n, b)?);
        }
    }
    if engine.runs(Engine::Brute) {
        for (b, set) in brute_force_graphs(n, limit)? {
            for (code, g) in set {
                match profiler.profile(&g) {
                    Some(key) => {
                        brute.entry(key).or_default().insert(code, g);
                    }
                    None => disagreements.push(Disagreement {
                        b,
                        first: Engine::Brute,
                        second: Engine::Constructive,
                        witness: Some(code),
                        detail: "graph matches no skeleton".to_string(),
                    }),
                }
            }
        }
    }

    if engine == Engine::All {
        for b in 0..=max_b(n) {
            let of = |rows: &BTreeMap<RowKey, GraphSet>| -> BTreeSet<CanonicalCode> {
                rows.iter()
                    .filter(|(k, _)| k.b == b)
                    .flat_map(|(_, s)| s.keys().cloned())
                    .collect()
            };
            let (c, f) = (of(&constructive), of(&brute));
            for (first, second, a, z) in [
                (Engine::Constructive, Engine::Brute, &c, &f),
                (Engine::Brute, Engine::Constructive, &f, &c),
            ] {
                if let Some(w) = a.difference(z).next() {
                    disagreements.push(Disagreement {
                        b,
                        first,
                        second,
                        witness: Some(w.clone()),
                        detail: format!("{} graphs versus {}", a.len(), z.len()),
                    });
                }
            }
        }
    }

    let keys: BTreeSet<RowKey> = formula
        .keys()
        .chain(constructive.keys())
        .chain(brute.keys())
        .cloned()
        .collect();
    let mut rows = Vec::new();
    for key in keys {
        let f = formula.get(&key).copied();
        let c = constructive.get(&key).map(|s| s.len() as u64);
        let x = brute.get(&key).map(|s| s.len() as u64);
        let descriptor = profiler.describe(&key);
        if engine == Engine::All {
            let c0 = c.unwrap_or(0);
            let x0 = x.unwrap_or(0);
            if let Some(f) = f.filter(|&f| f != c0 || f != x0) {
                disagreements.push(Disagreement {
                    b: key.b,
                    first: Engine::Formula,
                    second: if f != c0 {
                        Engine::Constructive
                    } else {
                        Engine::Brute
                    },
                    witness: None,
                    detail: format!("row {descriptor}: formula {f}, constructive {c0}, brute {x0}"),
                });
            }
        }
        let count = c.or(x).or(f).unwrap_or(0);
        if count == 0 && f.is_none() {
            continue;
        }
        rows.push(CensusRow {
            n,
            b: key.b,
            key,
            descriptor,
            count,
            formula: f,
            constructive: c,
            brute: x,
        });
    }
    let mut totals = BTreeMap::new();
    for r in &rows {
        *totals.entry(r.b).or_insert(0) += r.count;
    }
    let grand_total = totals.values().sum();
    Ok(CensusReport {
        n,
        engine,
        rows,
        totals,
        grand_total,
        disagreements,
    })
}

/// Runs all three engines and cross-checks them.
pub fn reconcile(n: usize, limit: usize) -> Result<CensusReport> {
    census(n, Engine::All, limit)
}

/// Every accepted graph with `n` whites, from the brute-force engine.
pub fn all_graphs(n: usize, limit: usize) -> Result<GraphSet> {
    Ok(brute_force_graphs(n, limit)?
        .into_values()
        .flatten()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_trivalent, validate};
    use crate::trees::BiRootedTree;

    fn non_increasing_maps(m: u64, r: u64) -> u64 {
        fn go(prev: u64, left: u64) -> u64 {
            if left == 0 {
                return 1;
            }
            (1..=prev).map(|x| go(x, left - 1)).sum()
        }
        go(m, r)
    }

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_count(7, 1), Ok(7));
        assert_eq!(multiset_count(3, 2), Ok(6));
        assert_eq!(multiset_count(8, 6), Ok(1716));
        assert!(multiset_count(0, 2).is_err());
        assert!(multiset_count(2, 0).is_err());
        for m in 1..6 {
            for r in 1..5 {
                assert_eq!(multiset_count(m, r).unwrap(), non_increasing_maps(m, r));
            }
        }
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(13, 6), 1716);
    }

    #[test]
    fn b0_counts() {
        assert_eq!(count_b0(1), Ok(1));
        assert_eq!(count_b0(6), Ok(20));
        assert_eq!(count_b0(7), Ok(48));
    }

    #[test]
    fn b1_formula_at_seven() {
        let c = count_b1(7).unwrap();
        assert_eq!((c.s, c.i, c.e), (26, 62, 0));
        let i_rows: Vec<(Vec<usize>, u64)> = c
            .rows
            .iter()
            .filter(|r| r.class == ShapeClass::Isosceles)
            .map(|r| (r.parts.to_vec(), r.count))
            .collect();
        assert_eq!(
            i_rows,
            [
                (vec![5, 1, 1], 35),
                (vec![3, 3, 1], 15),
                (vec![3, 2, 2], 12)
            ]
        );
    }

    #[test]
    fn b1_formula_small() {
        assert_eq!(count_b1(2).unwrap().total(), 0);
        let c = count_b1(3).unwrap();
        assert_eq!((c.s, c.i, c.e), (0, 0, 1));
    }

    #[test]
    fn compositions_respect_minimums() {
        assert_eq!(compositions(4, &[1, 1]).len(), 3);
        assert_eq!(compositions(4, &[2, 1]), [vec![2, 2], vec![3, 1]]);
        assert!(compositions(2, &[2, 1]).is_empty());
    }

    #[test]
    fn b1_orbit_representatives_are_partitions() {
        let t = &templates(1).unwrap()[0];
        let reps = rep_compositions(7, t);
        assert_eq!(
            reps,
            [vec![3, 2, 2], vec![3, 3, 1], vec![4, 2, 1], vec![5, 1, 1]]
        );
    }

    #[test]
    fn smallest_b1_graph() {
        let t = &templates(1).unwrap()[0];
        let unit = BiRootedTree::new(crate::trees::Tree::from_edges(1, Vec::new()), 0, 0);
        let m = unit.as_marked();
        let g = attach(t, &[m, m, m]).unwrap();
        assert_eq!(g.white_count(), 3);
        assert!(is_simply_connected(&g).accepted);
        assert!(attach(t, &[m, m]).is_err());
    }

    #[test]
    fn small_censuses() {
        assert_eq!(constructive_census(3, 1).unwrap().len(), 1);
        let r1 = reconcile(1, DEFAULT_LIMIT).unwrap();
        assert!(r1.agrees());
        assert_eq!(r1.grand_total, 1);
        let r2 = brute_force_census(2, DEFAULT_LIMIT).unwrap();
        assert_eq!(r2[&0].len(), 1);
        let r3 = reconcile(3, DEFAULT_LIMIT).unwrap();
        assert!(r3.agrees(), "{:?}", r3.disagreements);
        assert_eq!(r3.grand_total, 3);
        assert!(brute_force_census(9, DEFAULT_LIMIT).is_err());
    }

    #[test]
    fn five_whites_agree() {
        let r = reconcile(5, DEFAULT_LIMIT).unwrap();
        assert!(r.agrees(), "{:?}", r.disagreements);
        assert_eq!(r.total_for(0), 9);
        assert_eq!(r.total_for(1), count_b1(5).unwrap().total());
        assert_eq!(r.total_for(2), 1);
    }

    #[test]
    fn constructed_graphs_are_well_formed() {
        for b in 1..=2 {
            for set in constructive_graphs(6, b).unwrap().values() {
                for g in set.values() {
                    assert!(validate(g).accepted);
                    assert!(is_trivalent(g));
                    assert_eq!(g.white_count(), 6);
                    assert_eq!(g.black_count(), 6 - 1 - b);
                }
            }
        }
    }
}
