use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("colex order is only defined on distinct sets")]
    EqualSets,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("invalid edge: {0}")]
    InvalidEdge(String),
    #[error("invalid edge type set: {0}")]
    InvalidTypes(String),
    #[error("compression needs i < j, got i={i}, j={j}")]
    CompressionOrder { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no coefficient given for edge level {0}")]
    MissingAlpha(usize),
    #[error("invalid coefficient: {0}")]
    InvalidAlpha(String),
    #[error("infeasible weighting: {0}")]
    InfeasibleWeighting(String),
    #[error("exact oracle supports n <= {max}, got {n}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unknown identifier: {0}")]
    UnknownId(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
