use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyInput,

    #[error("node label {0} is not present in the graph")]
    UnknownNode(u64),

    #[error("graph is empty after preprocessing")]
    EmptyGraph,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {node} is not reachable from the root")]
    Unreachable { node: usize },

    #[error("operation needs at least {required} nodes, graph has {actual}")]
    TooFewNodes { required: usize, actual: usize },

    #[error("exact computation refused: {actual} nodes exceeds the limit of {limit}")]
    TooManyNodes { limit: usize, actual: usize },

    #[error("power iteration did not converge in {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
