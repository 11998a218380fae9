//! Error types shared across the interval and certification layers.

use thiserror::Error;

/// Everything that can go wrong while building or evaluating enclosures.
///
/// The domain variants (`DivisionByZero`, `SqrtNegative`, `LogNonPositive`,
/// `TailDivergence`) are recoverable from the certifier's point of view: a
/// box whose evaluation hits one is split further instead of aborting the
/// whole certification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RigorError {
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("square root of an interval extending below zero")]
    SqrtNegative,
    #[error("logarithm of an interval not bounded away from zero")]
    LogNonPositive,
    #[error("series tail bound does not converge: {0}")]
    TailDivergence(String),
    #[error("interval endpoints out of order (lo > hi)")]
    EmptyInterval,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl RigorError {
    /// True for errors that stem from evaluating on a too-wide or
    /// ill-placed box and may disappear after bisection (or, for
    /// `TailDivergence`, end in an honest `Undecided` at the depth cap).
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            RigorError::DivisionByZero
                | RigorError::SqrtNegative
                | RigorError::LogNonPositive
                | RigorError::TailDivergence(_)
        )
    }
}
