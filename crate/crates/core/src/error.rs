use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("invalid edge lengths: {0}")]
    InvalidLengths(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("graphs are not comparable: {0}")]
    GraphMismatch(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("invalid spanning tree: {0}")]
    InvalidTree(String),

    #[error("vertex {vertex} does not carry the minimum weight")]
    NotMinimumWeight { vertex: String },

    #[error("missing vertex weight for {vertex}")]
    MissingWeight { vertex: String },

    #[error("spanning-tree enumeration guard exceeded: {edges} edges > {limit}")]
    GuardExceeded { edges: usize, limit: usize },

    #[error("subspace containment violated: {0}")]
    ContainmentViolated(String),

    #[error("not interval-decomposable by this method: {0}")]
    NotIntervalDecomposable(String),

    #[error("support is not a trapezoid or rectangle region: {0}")]
    UnsupportedRegion(String),

    #[error("inconsistent cell complex: {0}")]
    InconsistentComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
