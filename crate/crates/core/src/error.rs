use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("hyperedge {edge}: node {node} out of range [1, {n}]")]
    NodeOutOfRange { edge: usize, node: usize, n: usize },

    #[error("hyperedge {edge}: weight {weight} is not strictly positive")]
    NonPositiveWeight { edge: usize, weight: f64 },

    #[error("hyperedge {edge} has no nodes")]
    EmptyHyperedge { edge: usize },

    #[error("hyperedge {edge} has degree {degree}; the degree-preserving reduction needs degree >= 2 (run preprocess first)")]
    DegenerateHyperedge { edge: usize, degree: usize },

    #[error("hypergraph is empty after removing singleton hyperedges")]
    EmptyHypergraph,

    #[error("node {node} has zero degree")]
    IsolatedNode { node: usize },

    #[error("expected {expected} weights, got {actual}")]
    WeightCountMismatch { expected: usize, actual: usize },

    #[error("requested {k} clusters but the partition only has {c}")]
    TargetExceedsClusters { k: usize, c: usize },

    #[error("partitions cover different node sets: {0}")]
    NodeSetMismatch(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dense representation of {n} nodes exceeds the limit of {limit}")]
    DenseTooLarge { n: usize, limit: usize },
}
