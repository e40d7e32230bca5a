use thiserror::Error;

/// Errors surfaced by ring construction and the algebraic operations.
///
/// `NotInImage` and `UnsupportedRank` are ordinary domain answers (the input is
/// outside the map's image, or no closed description is shipped for that rank);
/// `Internal` means a proven invariant failed and indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials belong to different ring contexts")]
    ContextMismatch,
    #[error("variable `{0}` has no image under this map")]
    UnboundVariable(String),
    #[error("variable `{0}` does not exist in this ring")]
    NoSuchVariable(String),
    #[error("degree {degree} exceeds the context degree cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("rank {rank} is invalid for ring family {family}: {reason}")]
    BadRank {
        family: &'static str,
        rank: u32,
        reason: &'static str,
    },
    #[error("element is not in the image of the map")]
    NotInImage,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no generator description is available for rank {0}")]
    UnsupportedRank(u32),
    #[error("linear system dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl AlgebraError {
    pub fn internal(msg: impl Into<String>) -> Self {
        AlgebraError::Internal(msg.into())
    }
}
