use alloc::string::String;

use crate::arith::Rational;
use crate::poly::UPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not 2-integral")]
    NotTwoIntegral(Rational),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("inexact division")]
    InexactDivision,
    /// The modulus of a quotient ring is reducible; the payload is a proper monic factor.
    #[error("zero divisor found, modulus has the factor {0}")]
    ZeroDivisorFound(UPoly<Rational>),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("numeric precision exceeded: {0}")]
    NumericPrecisionExceeded(String),
    #[error("index {n} exceeds the memo cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("generator validation failed modulo {0}")]
    GeneratorValidationFailed(u64),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
