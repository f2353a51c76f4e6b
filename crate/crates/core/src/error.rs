use thiserror::Error;

pub type Result<T> = std::result::Result<T, QlraError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QlraError {
    #[error("{what} must be strictly positive, got {value}")]
    NonPositive { what: String, value: f64 },

    #[error("{what} sums to {sum}, expected 1")]
    NotNormalized { what: String, sum: f64 },

    #[error("transition matrix is not doubly stochastic: row {row} sums to {sum}")]
    NotDoublyStochastic { row: usize, sum: f64 },

    #[error("interference coefficient {0} lies outside [-1, 1]")]
    OutOfRange(f64),

    #[error("context is not trigonometric: max |lambda| = {max_abs_lambda}")]
    NotTrigonometric { max_abs_lambda: f64 },

    #[error("phases ({phi1}, {phi2}) do not differ by pi modulo 2pi")]
    PhaseConstraintViolated { phi1: f64, phi2: f64 },

    #[error(
        "interference coefficients are inconsistent: lambda1 = {lambda1}, lambda2 = {lambda2}"
    )]
    InconsistentInterference { lambda1: f64, lambda2: f64 },

    #[error("Bloch point at z = {0} is a pole and has no strictly positive marginals")]
    Degenerate(f64),

    #[error("outcome labels must be distinct: {0}")]
    InvalidSpectrum(String),

    #[error("invalid counts: {0}")]
    InvalidCounts(String),

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
}
