use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("{numerator}/{denominator} is not a reduced fraction in (0, 1)")]
    NotReduced { numerator: u64, denominator: u64 },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("integrand cannot supply derivative of order {0}")]
    MissingDerivative(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
