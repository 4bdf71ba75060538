use thiserror::Error;

/// Errors raised by ring arithmetic.
///
/// `NotDivisible` and `NonIntegral` are the "theorem violation" class: every
/// exact division and every retraction from the rational extension performed
/// by the library is backed by an integrality statement, so these surfacing
/// means invalid input or a genuine bug.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum RingError {
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("non-integral coefficient: {0}")]
    NonIntegral(String),
    #[error("ring mismatch: {0}")]
    Mismatch(String),
    #[error("invalid ring: {0}")]
    Invalid(String),
}

impl RingError {
    /// True for the integrality-violation class (CLI exit code 2).
    pub fn is_integrality(&self) -> bool {
        matches!(self, RingError::NotDivisible(_) | RingError::NonIntegral(_))
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum WittError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("truncation mismatch: {0}")]
    Truncation(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LambdaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error("invalid Frobenius lifts: {0}")]
    BadLifts(String),
    #[error("dual-path disagreement: {0}")]
    DualPath(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum KernelError {
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error("criterion inapplicable: {0}")]
    Inapplicable(String),
    #[error("not applicable: {0}")]
    NotPerfect(String),
}
