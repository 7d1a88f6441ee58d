//! Error type shared by all modules.

use thiserror::Error;

/// Errors raised by parameter validation, evaluation preconditions, and
/// numerical oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The nonstaticity constraint `c1*c2 >= 1` is violated.
    #[error("c1*c2 < 1 violates the nonstaticity constraint (c1*c2 = {product})")]
    ConstraintViolated { product: f64 },

    /// `c1` and `c2` must both be strictly positive so that `f(t) > 0`.
    #[error("c1 and c2 must be strictly positive (c1 = {c1}, c2 = {c2})")]
    NonpositiveNonstaticity { c1: f64, c2: f64 },

    /// A medium or wave constant that must be strictly positive is not.
    #[error("{name} must be strictly positive (got {value})")]
    NonpositiveConstant { name: &'static str, value: f64 },

    /// A quantity that must be finite is NaN or infinite.
    #[error("{name} must be finite (got {value})")]
    NonfiniteValue { name: &'static str, value: f64 },

    /// Evaluation requested before the initial time.
    #[error("t = {t} precedes the initial time t0 = {t0}")]
    TimeBeforeStart { t: f64, t0: f64 },

    /// The operation needs the quadrature amplitude Q0, but the
    /// configuration specifies the eigenvalue modulus A0 directly.
    #[error("operation requires the quadrature amplitude Q0, but only A0 is configured")]
    QuadratureAmplitudeRequired,

    /// The eigenvalue modulus evaluated at two times disagrees beyond the
    /// contract tolerance; indicates inconsistent inputs.
    #[error("A0 evaluated at t = {t_a} and t = {t_b} differs by {deviation} (> {tolerance})")]
    AmplitudeNotConstant {
        t_a: f64,
        t_b: f64,
        deviation: f64,
        tolerance: f64,
    },

    /// Fock index exceeds the configured Hermite recurrence guard.
    #[error("Fock index n = {n} exceeds the supported maximum {max}")]
    FockIndexTooLarge { n: usize, max: usize },

    /// The adaptive integrator ran out of panels before reaching the
    /// requested tolerance.
    #[error(
        "quadrature did not converge on [{a}, {b}]: error estimate {error} > tolerance {tolerance} after {panels} panels"
    )]
    QuadratureNotConverged {
        a: f64,
        b: f64,
        error: f64,
        tolerance: f64,
        panels: usize,
    },

    /// A grid request that cannot be honored (too few points, empty span,
    /// or a perturbed time function leaving its positive domain).
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },

    /// Configuration file syntax or content error.
    #[error("config error: {reason}")]
    Config { reason: String },
}

impl Error {
    pub(crate) fn require_finite(name: &'static str, value: f64) -> Result<f64, Error> {
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonfiniteValue { name, value })
        }
    }

    pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64, Error> {
        Self::require_finite(name, value)?;
        if value > 0.0 {
            Ok(value)
        } else {
            Err(Error::NonpositiveConstant { name, value })
        }
    }

    pub(crate) fn require_from(t: f64, t0: f64) -> Result<(), Error> {
        if t >= t0 {
            Ok(())
        } else {
            Err(Error::TimeBeforeStart { t, t0 })
        }
    }
}
