use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rising factorial in a series denominator hit zero before the
    /// series terminated.
    #[error("series denominator vanishes: ({param})_k = 0 at k = {k}")]
    PoleInDenominator { param: f64, k: usize },

    #[error("invalid NU constants: {0}")]
    InvalidConstants(String),

    #[error("no root of the quantization condition in [{lo}, {hi}]")]
    NoRoot { lo: f64, hi: f64 },

    #[error("constraint violated: {0}")]
    ConstraintViolation(String),

    #[error("no bound state for n = {n}, J = {j}")]
    NoBoundState { n: usize, j: usize },

    #[error("supercritical coupling: g = {g} exceeds J + 1/2 = {limit}")]
    SupercriticalCoupling { g: f64, limit: f64 },

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("wavefunction is not square integrable: {0}")]
    DivergentNorm(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
