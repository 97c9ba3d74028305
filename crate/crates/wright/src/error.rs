//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by the evaluation routines.
///
/// The split mirrors how callers are expected to react:
/// domain and range errors are caller bugs (bad inputs), convergence and
/// contour errors are numerical exhaustion (retry with different settings),
/// and the Stokes variants signal a structural limitation of the requested
/// expansion rather than a failure of arithmetic.
#[derive(Debug, Clone, Error)]
pub enum WrightError {
    /// An argument lies outside the mathematical domain of validity.
    #[error("domain error: {0}")]
    Domain(String),

    /// A truncation/order request exceeds what the implementation supports.
    #[error("range error: {0}")]
    Range(String),

    /// An iterative process (series summation, precision escalation) hit its
    /// configured ceiling without meeting the requested accuracy.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// The requested expansion is invalid at sigma = 1/2, where the
    /// exponentially small and algebraic contributions merge; callers should
    /// use the exact Gaussian closed form instead.
    #[error("Stokes error: {0}")]
    Stokes(String),

    /// The complex argument lies on (or within the configured angular margin
    /// of) a Stokes line, where the plain sector expansions do not apply.
    #[error("Stokes line error: {0}")]
    StokesLine(String),

    /// Steepest-descent contour tracing failed to reach the integrand cutoff
    /// within its step budget.
    #[error("contour error: {0}")]
    Contour(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, WrightError>;
