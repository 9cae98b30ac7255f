use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {0} is not in the commutation table")]
    UnknownGenerator(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("index set {0:?} is not strictly increasing")]
    UnsortedIndices(Vec<usize>),
    #[error("row and column sets differ in size ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("minor order {0} exceeds the supported maximum of 6")]
    OrderTooLarge(usize),
    #[error("paths are not weakly intersecting")]
    NotWeaklyIntersecting,
    #[error("couple {0} is not a couple of the matching")]
    NotACouple(String),
    #[error("element {0} is not in the ground set of the cortege")]
    NotInGroundSet(String),
    #[error("family is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("configuration cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("degenerate geometry: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
