use thiserror::Error;

use crate::model::TreeViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty node set")]
    EmptyNodeSet,
    #[error("duplicate point {0} at indices {1} and {2}")]
    DuplicatePoint(crate::Point, usize, usize),
    #[error("invalid annotations: {0}")]
    InvalidAnnotations(String),
    #[error("invalid spanning tree: {0}")]
    InvalidTree(#[from] TreeViolation),
    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not reducible: {0}")]
    NotReducible(String),
    #[error("not a Hamilton path: {0}")]
    NotHamiltonian(String),
    #[error("interference {0} exceeds 3")]
    InterferenceTooHigh(usize),
    #[error("lemma violation: {0}")]
    LemmaViolation(String),
    #[error("node count {n} outside supported range {min}..={max}{hint}")]
    SizeOutOfRange {
        n: usize,
        min: usize,
        max: usize,
        hint: &'static str,
    },
    #[error("node set has no gadget annotations")]
    MissingAnnotations,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
