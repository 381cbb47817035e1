use thiserror::Error;

/// Failures shared by every pipeline in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("matrix must have dimension at least 1")]
    Empty,

    #[error("not quasi-unipotent")]
    NotQuasiUnipotent,

    #[error("not unipotent")]
    NotUnipotent,

    #[error("Jordan profile is not of the form J + conj(J): {0}")]
    NotPseudoAnalytic(String),

    #[error("matrix is not symmetric positive definite: {0}")]
    NotSpd(String),

    #[error("dimension {0} is odd; expected an even Tate-space dimension 2g")]
    OddDimension(usize),

    #[error("cohomology degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("expected {expected} classes, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("two-form is zero")]
    ZeroForm,

    #[error("intersection polynomial vanishes identically")]
    DegenerateForm,

    #[error("index pair ({0}, {1}) is not an increasing pair inside 1..=2g")]
    BadIndexPair(usize, usize),

    #[error("internal cross-check failed: {0}")]
    InternalCrossCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
