use thiserror::Error;

/// Errors produced by form constructors, classifiers and solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested method does not apply in the detected root regime,
    /// e.g. the closed-form radical on a three-real-root cubic.
    #[error("regime refusal: {0}")]
    Regime(String),

    /// An iteration hit its cap; carries the best bracket reached.
    #[error("no convergence after {iterations} iterations, best bracket [{lo}, {hi}]")]
    Convergence { lo: f64, hi: f64, iterations: u32 },

    #[error("derivative vanished at x = {x}")]
    DerivativeVanished { x: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: f64, what: &str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidInput(format!("{what} must be finite, got {value}")))
    }
}
