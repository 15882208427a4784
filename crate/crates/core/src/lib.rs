//! Simple-connectivity checks and censuses for bi-colored labeled trees of
//! trivalent 2-stratifolds.
//!
//! A graph has white vertices (surfaces, labeled by genus) and black
//! vertices (singular circles), with edges labeled by covering degree.
//! [`is_simply_connected`] decides whether such a graph describes a simply
//! connected space; [`census`] counts all of them for a given number of
//! white vertices.

pub mod canon;
pub mod census;
pub mod classify;
pub mod error;
pub mod graph;
pub mod pi1;
pub mod skeleton;
pub mod trees;

pub use canon::{are_isomorphic, canonical_code, CanonicalCode};
pub use census::{
    all_graphs, attach, brute_force_census, brute_force_graphs, census, constructive_census,
    constructive_graphs, count_b0, count_b1, multiset_count, reconcile, B1Count, CensusReport,
    CensusRow, Disagreement, Engine, RowKey, ShapeClass, DEFAULT_LIMIT,
};
pub use classify::{
    closed_star_b, contains_horned_tree, find_horned_tree, is_21_collapsible, is_horned_tree,
    is_simply_connected, reduced_graph,
};
pub use error::{Error, Result};
pub use graph::{
    is_tree, is_trivalent, validate, Edge, Reason, ReasonCode, StratGraph, Verdict, VertexColor,
    VertexId, VertexKind,
};
pub use pi1::{pi1_presentation, Pi1Presentation};
pub use skeleton::{
    enum_generating_trees, skeleton_of, split_variants, AttachmentTemplate, GeneratingTree,
    Skeleton,
};
pub use trees::{
    enum_birooted, enum_drooted, enum_free, enum_rooted, BiRootedTree, DRootedTree, MarkedTree,
    RootedTree, SequenceTable, Tree,
};
