use thiserror::Error;

/// Errors raised by syncmon operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("degree must be at least 1")]
    EmptyDegree,

    #[error("image {image} out of range 1..={n} at point {point}")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        n: usize,
    },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("generator set is empty")]
    EmptyGeneratorSet,

    #[error("pair {{{v}, {w}}} is not collapsible")]
    NotCollapsible { v: usize, w: usize },

    #[error("a pair needs two distinct points, got {v} twice")]
    DegeneratePair { v: usize },

    #[error("{what} exceeded cap {cap} (partial size {partial})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        partial: u64,
    },

    #[error("{0}")]
    TooLarge(String),

    #[error("map at position {index} is not a permutation")]
    NotPermutation { index: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("certificate check failed: {0}")]
    Certificate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
