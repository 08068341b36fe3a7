//! Error types shared across the crate.
//!
//! Numerical operations distinguish hard failures (bad arguments, points
//! outside the domain, singular data) from soft diagnostics. Soft conditions
//! that a caller may legitimately want to inspect (divergence heuristics,
//! infinite dilatation flags, Monte Carlo standard errors) are carried in
//! result types, not here.

use thiserror::Error;

/// Errors produced by quadrature construction, map evaluation, and checks.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// An argument is outside the documented range (dimension, exponent,
    /// radius, level, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A point lies outside the admissible domain of a map or rule.
    #[error("point outside domain: {0}")]
    OutsideDomain(String),

    /// A map evaluation produced a non-finite value.
    #[error("evaluation failed at node: {0}")]
    Evaluation(String),

    /// A refinement loop stopped without two consecutive levels agreeing
    /// within the requested tolerance.
    #[error("quadrature failed to converge: {what} (last delta {delta:.3e}, tolerance {tolerance:.3e})")]
    ConvergenceFailure {
        what: String,
        delta: f64,
        tolerance: f64,
    },

    /// A derivative or matrix needed by the operation is singular.
    #[error("singular derivative: {0}")]
    SingularDerivative(String),

    /// The requested jet scheme is not available for this map variant.
    #[error("unsupported jet scheme: {0}")]
    UnsupportedScheme(String),

    /// A finite-difference step could not be chosen without losing precision.
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
}

/// Crate-wide result alias.
pub type CoreResult<T> = Result<T, CoreError>;

impl CoreError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        CoreError::InvalidArgument(msg.into())
    }
}
