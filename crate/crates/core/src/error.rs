use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("projection closure diverged after {0} iterations (threshold too small for this graph)")]
    ClosureDiverged(usize),

    #[error("instance has {n} vertices, exceeding the oracle size guard of {guard}")]
    SizeGuard { n: usize, guard: usize },

    #[error("infeasible instance: {0}")]
    Infeasible(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
