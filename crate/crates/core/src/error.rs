use thiserror::Error;

use crate::bits::MAX_VERTICES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The exact coloring solver refuses sets above its configured cap.
    #[error("exact coloring is capped at {cap} vertices, got {size}")]
    SizeLimit { size: usize, cap: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graphs are limited to {MAX_VERTICES} vertices, got {0}")]
    TooManyVertices(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("violated precondition: {0}")]
    ViolatedPrecondition(String),

    /// A construction that must succeed on its declared inputs did not.
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
