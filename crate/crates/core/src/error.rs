use thiserror::Error;

/// Errors produced by the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(String),

    #[error("{n} vertices exceeds the limit of {limit} for {what}")]
    TooLarge { n: usize, limit: usize, what: &'static str },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("part {part} has {size} vertices but the embedded graph needs {needed}")]
    PartTooSmall { part: usize, size: usize, needed: usize },

    #[error("no convergence after {iterations} iterations (lambda {lambda}, residual {residual:e})")]
    NoConvergence {
        lambda: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("enumeration of n = {n} exceeds the cap {cap}; raise it explicitly")]
    EnumerationCap { n: usize, cap: usize },

    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
