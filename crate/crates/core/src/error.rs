use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown facet index {index} (polytope has {facet_count} facets)")]
    UnknownFacet { index: usize, facet_count: usize },

    /// The characteristic function fails the vertex condition.
    #[error("characteristic function is not valid at {} vertex(es)", .failing_vertices.len())]
    InvalidCharacteristic { failing_vertices: Vec<Vec<usize>> },

    #[error("generator arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("ring dimension {dimension} exceeds the exact-search budget {budget}")]
    BudgetExceeded { dimension: usize, budget: usize },

    #[error("reduction to Bott form failed: {0}")]
    ReductionFailed(String),
}
