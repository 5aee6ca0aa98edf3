use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0}-{1} has a non-positive weight")]
    NonPositiveWeight(usize, usize),
    #[error("{edges} edges but {weights} weights")]
    WeightCount { edges: usize, weights: usize },
    #[error("{0} requires a unit-weight graph")]
    Weighted(&'static str),
    #[error("graph has {vertices} vertices, the limit is {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("matrix entry ({0},{1}) is not an integer")]
    NonIntegerEntry(usize, usize),
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("graph is disconnected: eigenvalue 0 has multiplicity {zero_multiplicity}")]
    Disconnected { zero_multiplicity: usize },
    #[error("catalog line {line}: {msg}")]
    Catalog { line: usize, msg: String },
    #[error("unknown catalog id {0}")]
    UnknownId(String),
    #[error("catalog id {0} names more than one row")]
    AmbiguousId(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} has no exact eigenvector representation")]
    Inexact(String),
}

pub type Result<T> = std::result::Result<T, Error>;
