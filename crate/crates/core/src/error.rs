use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("expected {expected} distinguished vertices, found {found}")]
    Pointedness { expected: usize, found: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("weight {weight} exceeds the supported cap {cap}")]
    WeightCap { weight: usize, cap: usize },
    #[error("slot {slot} out of range ({count} distinguished vertices)")]
    SlotOutOfRange { slot: usize, count: usize },
    #[error("substituted graph sum is empty")]
    EmptySum,
    #[error("graph sum mixes distinguished-vertex counts {0} and {1}")]
    MixedPointedness(usize, usize),
    #[error("series does not start with the identity")]
    NotUnipotent,
    #[error("basis is singular or insufficient: {0}")]
    SingularBasis(String),
    #[error("graph sum is outside the span of the basis")]
    OutsideSpan,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}
