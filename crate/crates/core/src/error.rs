use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is empty")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("white vertex {0} has nonzero genus")]
    NonzeroGenus(String),
    #[error("component not collapsible: {{{}}}", .0.join(", "))]
    ComponentNotCollapsible(Vec<String>),
    #[error("tree size must be at least 1")]
    ZeroSize,
    #[error("{marks} distinct marks do not fit on {vertices} vertices")]
    TooFewVertices { vertices: usize, marks: usize },
    #[error("d-rooted trees need d >= 3, got {0}")]
    BadArity(usize),
    #[error("multiset parameters must be positive (m = {m}, r = {r})")]
    BadMultiset { m: u64, r: u64 },
    #[error("assignment mismatch: {0}")]
    AssignmentMismatch(String),
    #[error("black vertex {0} has degree above 3")]
    OverfullBlack(usize),
    #[error("n = {n} exceeds the brute-force limit {limit}")]
    AboveLimit { n: usize, limit: usize },
    #[error("count for n = {0} does not fit in 64 bits")]
    Overflow(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
