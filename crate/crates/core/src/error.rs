use thiserror::Error;

use crate::check::CheckReport;

/// Errors raised by the algebraic operations of this crate.
///
/// Failures of an identity are never errors: those are reported through
/// [`CheckReport`] entries. Errors signal structurally incompatible inputs.
#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("base mismatch: expected {expected} coordinates, found {found}")]
    BaseMismatch { expected: usize, found: usize },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree underflow: cannot contract degree {contractor} into degree {target}")]
    DegreeUnderflow { contractor: usize, target: usize },
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("{what} failed validation")]
    Validation {
        what: String,
        report: Box<CheckReport>,
    },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
