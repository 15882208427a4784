//! Simple-connectivity test for trivalent 2-stratifold graphs.
//!
//! A graph passes when it is a tree with genus-0 white vertices and white
//! terminal vertices, every black vertex is trivalent, every piece left after
//! deleting the open star of the degree-3 black vertices is (2,1)-collapsible,
//! and the reduced graph contains no horned tree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{
    is_tree, is_trivalent_black, validate, Piece, Reason, ReasonCode, StratGraph, Verdict,
    VertexId, VertexKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollapsibleVerdict {
    pub is_collapsible: bool,
    pub root: Option<VertexId>,
}

impl CollapsibleVerdict {
    const NO: Self = Self {
        is_collapsible: false,
        root: None,
    };
}

/// Decides whether `g` is a bisected rooted tree with the 2/1 distance-parity
/// labeling, and finds its root.
pub fn is_21_collapsible(g: &StratGraph) -> CollapsibleVerdict {
    if !validate(g).accepted || !is_tree(g) {
        return CollapsibleVerdict::NO;
    }
    let inc = g.incidence();
    let mut root = None;
    for v in g.vertex_ids() {
        let labels: Vec<u32> = inc[v.0].iter().map(|&(_, e)| g.edges()[e].label).collect();
        match g.kind(v) {
            VertexKind::White { genus } => {
                if genus != 0 {
                    return CollapsibleVerdict::NO;
                }
                match labels.iter().filter(|&&l| l == 1).count() {
                    0 if root.is_none() => root = Some(v),
                    0 => return CollapsibleVerdict::NO,
                    1 => {}
                    _ => return CollapsibleVerdict::NO,
                }
            }
            VertexKind::Black => {
                let mut sorted = labels;
                sorted.sort_unstable();
                if sorted != [1, 2] {
                    return CollapsibleVerdict::NO;
                }
            }
        }
    }
    let Some(root) = root else {
        return CollapsibleVerdict::NO;
    };
    // confirm the parity labeling from the root
    let mut depth = vec![usize::MAX; g.vertex_count()];
    depth[root.0] = 0;
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &(y, e) in &inc[x.0] {
            if depth[y.0] != usize::MAX {
                continue;
            }
            depth[y.0] = depth[x.0] + 1;
            let expected = if depth[x.0] % 2 == 0 { 2 } else { 1 };
            if g.edges()[e].label != expected {
                return CollapsibleVerdict::NO;
            }
            stack.push(y);
        }
    }
    CollapsibleVerdict {
        is_collapsible: true,
        root: Some(root),
    }
}

/// The closed star of the degree-3 black vertices and the pieces left after
/// removing their open star.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDecomposition {
    pub star: Piece,
    /// White vertices of the closed star, as ids of the original graph.
    pub boundary_whites: Vec<VertexId>,
    /// Components of the graph minus the open star.
    pub components: Vec<Piece>,
}

pub fn closed_star_b(g: &StratGraph) -> StarDecomposition {
    let inc = g.incidence();
    let centers: Vec<VertexId> = g
        .vertex_ids()
        .filter(|&v| g.is_black(v) && inc[v.0].len() == 3)
        .collect();
    let mut in_star = vec![false; g.vertex_count()];
    let mut is_center = vec![false; g.vertex_count()];
    for &c in &centers {
        in_star[c.0] = true;
        is_center[c.0] = true;
        for &(y, _) in &inc[c.0] {
            in_star[y.0] = true;
        }
    }
    let star_vertices: Vec<VertexId> = g.vertex_ids().filter(|v| in_star[v.0]).collect();
    let boundary_whites: Vec<VertexId> = star_vertices
        .iter()
        .copied()
        .filter(|&v| !is_center[v.0])
        .collect();
    let star = g.subgraph(&star_vertices, |_, e| is_center[e.u.0] || is_center[e.v.0]);

    let rest: Vec<VertexId> = g.vertex_ids().filter(|v| !is_center[v.0]).collect();
    let remainder = g.subgraph(&rest, |_, _| true);
    let components = remainder
        .graph
        .components()
        .into_iter()
        .map(|comp| {
            let mut piece = remainder.graph.subgraph(&comp, |_, _| true);
            piece.origin = comp.iter().map(|v| remainder.origin[v.0]).collect();
            piece
        })
        .collect();
    StarDecomposition {
        star,
        boundary_whites,
        components,
    }
}

/// Root (as an original id) of each white of the closed star that lies in a
/// collapsible component; errors on the first non-collapsible component.
fn component_roots(g: &StratGraph, dec: &StarDecomposition) -> Result<HashMap<VertexId, VertexId>> {
    let mut root_of = HashMap::new();
    for comp in &dec.components {
        let verdict = is_21_collapsible(&comp.graph);
        let Some(root) = verdict.root else {
            let names = comp.origin.iter().map(|&v| g.display_name(v)).collect();
            return Err(Error::ComponentNotCollapsible(names));
        };
        let root = comp.origin[root.0];
        for &v in &comp.origin {
            root_of.insert(v, root);
        }
    }
    Ok(root_of)
}

/// R(Γ): the closed star with a `w -1- b -2- w'` arm attached at every star
/// white that is not the root of its collapsible component.
pub fn reduced_graph(g: &StratGraph) -> Result<StratGraph> {
    if !is_tree(g) {
        return Err(Error::NotATree);
    }
    let dec = closed_star_b(g);
    let root_of = component_roots(g, &dec)?;
    let mut reduced = dec.star.graph.clone();
    for (i, &orig) in dec.star.origin.iter().enumerate() {
        if !g.is_white(orig) || root_of.get(&orig) == Some(&orig) {
            continue;
        }
        let name = g.display_name(orig);
        let b = reduced.add_named(format!("{name}.arm"), VertexKind::Black);
        let w = reduced.add_named(format!("{name}.tip"), VertexKind::White { genus: 0 });
        reduced.add_edge(VertexId(i), b, 1);
        reduced.add_edge(b, w, 2);
    }
    Ok(reduced)
}

/// Whether `g` is exactly a horned tree: a tree whose internal vertices have
/// degree 3, with terminal edges trisected into `-1- w -1- b -2- W` arms and
/// internal edges bisected by white vertices.
pub fn is_horned_tree(g: &StratGraph) -> bool {
    if !validate(g).accepted || !is_tree(g) {
        return false;
    }
    let inc = g.incidence();
    let deg = |v: VertexId| inc[v.0].len();
    let label = |e: usize| g.edges()[e].label;
    let is_inner_black = |v: VertexId| g.is_black(v) && deg(v) == 3;
    // arm black: degree 2, label-2 edge to a white leaf, label-1 edge to a white
    let is_arm_black = |v: VertexId| {
        g.is_black(v)
            && deg(v) == 2
            && inc[v.0].iter().any(|&(y, e)| label(e) == 2 && deg(y) == 1)
            && inc[v.0].iter().any(|&(_, e)| label(e) == 1)
    };
    let mut inner = 0;
    for v in g.vertex_ids() {
        let ok = match g.kind(v) {
            VertexKind::White { genus } => {
                genus == 0
                    && match deg(v) {
                        1 => {
                            let (y, e) = inc[v.0][0];
                            label(e) == 2 && is_arm_black(y)
                        }
                        2 => {
                            let all_one = inc[v.0].iter().all(|&(_, e)| label(e) == 1);
                            let inner_nbrs =
                                inc[v.0].iter().filter(|&&(y, _)| is_inner_black(y)).count();
                            let arm_nbrs =
                                inc[v.0].iter().filter(|&&(y, _)| is_arm_black(y)).count();
                            all_one && (inner_nbrs == 2 || (inner_nbrs == 1 && arm_nbrs == 1))
                        }
                        _ => false,
                    }
            }
            VertexKind::Black => match deg(v) {
                3 => {
                    inner += 1;
                    inc[v.0].iter().all(|&(y, e)| label(e) == 1 && deg(y) == 2)
                }
                2 => {
                    is_arm_black(v)
                        && inc[v.0].iter().all(|&(y, e)| {
                            label(e) == 2
                                || (deg(y) == 2
                                    && inc[y.0].iter().any(|&(z, _)| z != v && is_inner_black(z)))
                        })
                }
                _ => false,
            },
        };
        if !ok {
            return false;
        }
    }
    inner >= 1
}

/// Searches a forest for a subgraph (colors and labels inherited) that is a
/// horned tree. Returns the edge indices of one such subgraph.
///
/// The search is only defined on forests, which is what reduced graphs are;
/// graphs with cycles yield `None`.
pub fn find_horned_tree(g: &StratGraph) -> Option<Vec<usize>> {
    if !g.is_forest() {
        return None;
    }
    let search = HornSearch::new(g);
    for v in g.vertex_ids().filter(|&v| g.is_black(v)) {
        let good: Vec<usize> = search.inc[v.0]
            .iter()
            .filter(|&&(_, e)| search.direction(v, e).is_some())
            .map(|&(_, e)| e)
            .take(3)
            .collect();
        if good.len() == 3 {
            let mut edges = Vec::new();
            for e in good {
                edges.push(e);
                search.collect(v, e, &mut edges);
            }
            edges.sort_unstable();
            return Some(edges);
        }
    }
    None
}

pub fn contains_horned_tree(g: &StratGraph) -> bool {
    find_horned_tree(g).is_some()
}

/// How a horned-tree branch continues past the white end of an inner edge.
#[derive(Debug, Clone, Copy)]
enum Branch {
    /// `w -1- x -2- y` with the two edge indices.
    Arm(usize, usize),
    /// `w -1- B'` into another inner black, through this edge.
    Inner(usize),
}

struct HornSearch<'a> {
    g: &'a StratGraph,
    inc: Vec<Vec<(VertexId, usize)>>,
    memo: std::cell::RefCell<HashMap<(usize, usize), Option<Branch>>>,
}

impl<'a> HornSearch<'a> {
    fn new(g: &'a StratGraph) -> Self {
        Self {
            g,
            inc: g.incidence(),
            memo: Default::default(),
        }
    }

    fn label(&self, e: usize) -> u32 {
        self.g.edges()[e].label
    }

    fn genus_zero_white(&self, v: VertexId) -> bool {
        matches!(self.g.kind(v), VertexKind::White { genus: 0 })
    }

    /// Can inner black `b` use edge `e` (label 1, to a white) as one of its
    /// three horned-tree branches?
    fn direction(&self, b: VertexId, e: usize) -> Option<Branch> {
        if let Some(hit) = self.memo.borrow().get(&(b.0, e)) {
            return *hit;
        }
        let result = self.compute(b, e);
        self.memo.borrow_mut().insert((b.0, e), result);
        result
    }

    fn compute(&self, b: VertexId, e: usize) -> Option<Branch> {
        if self.label(e) != 1 {
            return None;
        }
        let w = self.g.edges()[e].other(b);
        if !self.genus_zero_white(w) {
            return None;
        }
        for &(x, e1) in &self.inc[w.0] {
            if e1 == e || self.label(e1) != 1 || !self.g.is_black(x) {
                continue;
            }
            for &(y, e2) in &self.inc[x.0] {
                if e2 != e1 && self.label(e2) == 2 && self.genus_zero_white(y) {
                    return Some(Branch::Arm(e1, e2));
                }
            }
        }
        for &(x, e1) in &self.inc[w.0] {
            if e1 == e || self.label(e1) != 1 || !self.g.is_black(x) {
                continue;
            }
            let onward = self.inc[x.0]
                .iter()
                .filter(|&&(_, e2)| e2 != e1 && self.direction(x, e2).is_some())
                .count();
            if onward >= 2 {
                return Some(Branch::Inner(e1));
            }
        }
        None
    }

    fn collect(&self, b: VertexId, e: usize, edges: &mut Vec<usize>) {
        match self.direction(b, e) {
            Some(Branch::Arm(e1, e2)) => edges.extend([e1, e2]),
            Some(Branch::Inner(e1)) => {
                edges.push(e1);
                let w = self.g.edges()[e].other(b);
                let x = self.g.edges()[e1].other(w);
                let onward: Vec<usize> = self.inc[x.0]
                    .iter()
                    .filter(|&&(_, e2)| e2 != e1 && self.direction(x, e2).is_some())
                    .map(|&(_, e2)| e2)
                    .take(2)
                    .collect();
                for e2 in onward {
                    edges.push(e2);
                    self.collect(x, e2, edges);
                }
            }
            None => {}
        }
    }
}

/// The subgraph of `g` spanned by the given edges.
pub fn edge_subgraph(g: &StratGraph, edges: &[usize]) -> StratGraph {
    let mut keep: Vec<VertexId> = edges
        .iter()
        .flat_map(|&e| [g.edges()[e].u, g.edges()[e].v])
        .collect();
    keep.sort();
    keep.dedup();
    g.subgraph(&keep, |i, _| edges.contains(&i)).graph
}

/// Decides simple connectivity of the 2-stratifold of `g`, listing every
/// failed condition.
pub fn is_simply_connected(g: &StratGraph) -> Verdict {
    let validity = validate(g);
    if !validity.accepted {
        return validity;
    }
    let mut reasons = Vec::new();
    let tree = is_tree(g);
    if !tree {
        reasons.push(Reason::new(ReasonCode::NotATree, "the graph is not a tree"));
    }
    let inc = g.incidence();
    for v in g.vertex_ids() {
        match g.kind(v) {
            VertexKind::White { genus } if genus != 0 => {
                reasons.push(Reason::new(
                    ReasonCode::NonzeroGenus,
                    format!("white vertex {} has genus {genus}", g.display_name(v)),
                ));
            }
            VertexKind::White { .. } => {}
            VertexKind::Black => {
                if inc[v.0].len() <= 1 {
                    reasons.push(Reason::new(
                        ReasonCode::TerminalBlack,
                        format!("black vertex {} is terminal", g.display_name(v)),
                    ));
                }
                let labels: Vec<u32> = inc[v.0].iter().map(|&(_, e)| g.edges()[e].label).collect();
                if !is_trivalent_black(&labels) {
                    reasons.push(Reason::new(
                        ReasonCode::NotTrivalent,
                        format!(
                            "black vertex {} has incident labels {labels:?}",
                            g.display_name(v)
                        ),
                    ));
                }
            }
        }
    }
    if g.black_count() == 0 && g.vertex_count() != 1 && tree {
        reasons.push(Reason::new(
            ReasonCode::NotTrivalent,
            "a graph without black vertices must be a single white vertex",
        ));
    }
    if tree {
        match reduced_graph(g) {
            Err(Error::ComponentNotCollapsible(names)) => reasons.push(Reason::new(
                ReasonCode::ComponentNotCollapsible,
                format!(
                    "component {{{}}} is not (2,1)-collapsible",
                    names.join(", ")
                ),
            )),
            Err(other) => reasons.push(Reason::new(ReasonCode::NotATree, other.to_string())),
            Ok(reduced) => {
                if let Some(edges) = find_horned_tree(&reduced) {
                    let witness = edge_subgraph(&reduced, &edges);
                    let names: Vec<String> = witness
                        .vertex_ids()
                        .map(|v| witness.display_name(v))
                        .collect();
                    reasons.push(Reason::new(
                        ReasonCode::HornedTree,
                        format!(
                            "reduced graph contains a horned tree on {{{}}}",
                            names.join(", ")
                        ),
                    ));
                }
            }
        }
    }
    Verdict::from_reasons(reasons)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::{enum_rooted, rooted_to_collapsible};

    /// Black center with three whites; each listed white gets a `-1- b -2- w` arm.
    pub(crate) fn star_with_arms(arms: usize) -> StratGraph {
        let mut g = StratGraph::new();
        let c = g.add_black();
        for i in 0..3 {
            let w = g.add_white(0);
            g.add_edge(c, w, 1);
            if i < arms {
                let b = g.add_black();
                let t = g.add_white(0);
                g.add_edge(w, b, 1);
                g.add_edge(b, t, 2);
            }
        }
        g
    }

    #[test]
    fn single_white_collapsible() {
        let mut g = StratGraph::new();
        let w = g.add_white(0);
        assert_eq!(
            is_21_collapsible(&g),
            CollapsibleVerdict {
                is_collapsible: true,
                root: Some(w)
            }
        );
        assert!(is_simply_connected(&g).accepted);
    }

    #[test]
    fn two_vertex_collapsible_root_is_label_two_end() {
        let mut g = StratGraph::new();
        let a = g.add_white(0);
        let b = g.add_black();
        let c = g.add_white(0);
        g.add_edge(c, b, 1);
        g.add_edge(b, a, 2);
        assert_eq!(is_21_collapsible(&g).root, Some(a));
    }

    #[test]
    fn star_is_not_collapsible() {
        assert!(!is_21_collapsible(&star_with_arms(0)).is_collapsible);
    }

    #[test]
    fn collapsible_root_detection() {
        let build = |l: [u32; 4]| {
            let mut g = StratGraph::new();
            let w: Vec<VertexId> = (0..3).map(|_| g.add_white(0)).collect();
            let b0 = g.add_black();
            let b1 = g.add_black();
            g.add_edge(w[0], b0, l[0]);
            g.add_edge(b0, w[1], l[1]);
            g.add_edge(w[1], b1, l[2]);
            g.add_edge(b1, w[2], l[3]);
            g
        };
        assert_eq!(
            is_21_collapsible(&build([2, 1, 2, 1])).root,
            Some(VertexId(0))
        );
        // middle white with two label-1 edges
        assert!(!is_21_collapsible(&build([2, 1, 1, 2])).is_collapsible);
        // rooted at the middle white
        assert_eq!(
            is_21_collapsible(&build([1, 2, 2, 1])).root,
            Some(VertexId(1))
        );
    }

    #[test]
    fn star_decomposition_of_b111() {
        let g = star_with_arms(0);
        let dec = closed_star_b(&g);
        assert_eq!(dec.star.graph.vertex_count(), 4);
        assert_eq!(dec.boundary_whites.len(), 3);
        assert_eq!(dec.components.len(), 3);
        assert!(dec.components.iter().all(|c| c.graph.vertex_count() == 1));
    }

    #[test]
    fn star_decomposition_without_degree3_blacks() {
        let g = rooted_to_collapsible(&enum_rooted(4).unwrap()[1]);
        let dec = closed_star_b(&g);
        assert_eq!(dec.star.graph.vertex_count(), 0);
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].graph.vertex_count(), g.vertex_count());
        assert_eq!(reduced_graph(&g).unwrap().vertex_count(), 0);
    }

    #[test]
    fn reduced_graph_of_rooted_star_is_the_star() {
        let g = star_with_arms(0);
        let r = reduced_graph(&g).unwrap();
        assert_eq!(r.vertex_count(), 4);
        assert!(!contains_horned_tree(&r));
    }

    #[test]
    fn non_rooted_attachments_give_the_smallest_horned_tree() {
        // attaching the non-root end of a 2-vertex collapsible tree at each white
        let g = star_with_arms(3);
        let r = reduced_graph(&g).unwrap();
        assert!(is_horned_tree(&r));
        assert!(is_horned_tree(&g));
        let v = is_simply_connected(&g);
        assert!(!v.accepted);
        assert!(v.has(ReasonCode::HornedTree));
    }

    #[test]
    fn horned_tree_shape_checks() {
        assert!(!is_horned_tree(&star_with_arms(0)));
        assert!(!is_horned_tree(&star_with_arms(2)));
        assert!(!is_horned_tree(&rooted_to_collapsible(
            &enum_rooted(3).unwrap()[0]
        )));
        let two_arms = star_with_arms(2);
        assert!(!contains_horned_tree(&two_arms));
        assert!(is_simply_connected(&two_arms).accepted);
    }

    #[test]
    fn two_stars_sharing_a_root_white_can_be_horned() {
        // B1 and B2 share w0; the four outer whites all carry arms
        let mut g = StratGraph::new();
        let shared = g.add_white(0);
        for _ in 0..2 {
            let c = g.add_black();
            g.add_edge(c, shared, 1);
            for _ in 0..2 {
                let w = g.add_white(0);
                g.add_edge(c, w, 1);
                let b = g.add_black();
                let t = g.add_white(0);
                g.add_edge(w, b, 1);
                g.add_edge(b, t, 2);
            }
        }
        assert!(is_horned_tree(&g));
        let witness = find_horned_tree(&reduced_graph(&g).unwrap()).unwrap();
        assert_eq!(witness.len(), g.edges().len());
        assert!(!is_simply_connected(&g).accepted);
    }

    #[test]
    fn simply_connected_rejections() {
        let mut g = StratGraph::new();
        g.add_white(-1);
        assert!(is_simply_connected(&g).has(ReasonCode::NonzeroGenus));

        let mut t = StratGraph::new();
        let w = t.add_white(0);
        let b = t.add_black();
        t.add_edge(w, b, 3);
        let v = is_simply_connected(&t);
        assert!(v.has(ReasonCode::TerminalBlack));
        assert!(!v.has(ReasonCode::NotTrivalent));

        let mut cyc = StratGraph::new();
        let w = cyc.add_white(0);
        let b = cyc.add_black();
        cyc.add_edge(w, b, 1);
        cyc.add_edge(w, b, 2);
        assert!(is_simply_connected(&cyc).has(ReasonCode::NotATree));

        let mut bad = star_with_arms(0);
        let x = bad.add_black();
        bad.add_edge(VertexId(1), x, 1);
        let w2 = bad.add_white(0);
        bad.add_edge(x, w2, 1);
        let v = is_simply_connected(&bad);
        assert!(v.has(ReasonCode::NotTrivalent));
        assert!(v.has(ReasonCode::ComponentNotCollapsible));
    }

    #[test]
    fn reduced_graph_errors_name_the_component() {
        let mut g = star_with_arms(0);
        let x = g.add_black();
        g.add_edge(VertexId(1), x, 1);
        let w = g.add_white(0);
        g.add_edge(x, w, 1);
        match reduced_graph(&g) {
            Err(Error::ComponentNotCollapsible(names)) => assert_eq!(names.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
