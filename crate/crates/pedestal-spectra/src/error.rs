use thiserror::Error;

/// Errors shared across the crate. Construction errors come from bad user
/// input; `RowMismatch`, `NotTriangular`, `SpectrumMismatch` and
/// `DecompositionMismatch` signal violated theory or an implementation bug
/// and are treated as hard failures by callers.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("input relation contains a directed cycle")]
    CycleDetected,
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("duplicate label: {0}")]
    DuplicateLabel(String),
    #[error("partition shape is empty")]
    EmptyShape,
    #[error("partition parts must be weakly decreasing and positive")]
    NotWeaklyDecreasing,
    #[error("box dimensions are empty")]
    EmptyDims,
    #[error("poset has more than {cap} linear extensions")]
    SizeCapExceeded { cap: usize },
    #[error("poset counting is brute force; n must be at most 5 (got {0})")]
    TooLarge(usize),
    #[error("operands belong to different posets")]
    MismatchedPoset,
    #[error("pedestal polynomial differs between rows {0} and {1}")]
    RowMismatch(usize, usize),
    #[error("epsilon mask {0} is not realized in the pedestal matrix")]
    UnrealizedMask(String),
    #[error("inclusion-exclusion decomposition does not match B matrix for mask {0}")]
    DecompositionMismatch(String),
    #[error("conjugated matrix is not upper-triangular at ({row},{col})")]
    NotTriangular { row: usize, col: usize },
    #[error("characteristic polynomial does not match the eigenform product (seed draw {draw})")]
    SpectrumMismatch { draw: usize },
    #[error("poset was not built from a partition shape")]
    NotAPartitionShape,
    #[error("truncation {0} exceeds the supported budget")]
    TruncationTooLarge(usize),
    #[error("generating-function identity violated at t^{0}")]
    IdentityViolated(usize),
    #[error("pedestal bijection check failed: {0}")]
    BijectionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
