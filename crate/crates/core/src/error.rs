use thiserror::Error;

/// Errors raised by the exact analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: String,
        found: String,
    },
    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("invalid rational literal {0:?}")]
    InvalidLiteral(String),
    #[error("transfer matrix is not proper: {0}")]
    NotProper(String),
    #[error("transfer matrix is not stable: {0}")]
    NotStable(String),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
    #[error("simulation diverged at t = {t}: error norm {norm}")]
    Diverged { t: f64, norm: f64 },
    #[error("invalid system file: {0}")]
    InvalidSystem(String),
    #[error("fixed point not reached after {0} iterations")]
    NoFixedPoint(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn mismatch(
    op: &'static str,
    expected: impl ToString,
    found: impl ToString,
) -> Error {
    Error::DimensionMismatch {
        op,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
