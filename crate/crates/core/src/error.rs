use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("function evaluated at 0 but has a negative exponent")]
    ZeroArgument,
    #[error("argument is a pole of the function")]
    PoleHit,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("Möbius transform has zero determinant")]
    SingularMobius,
    #[error("signed multiset contains a zero base point")]
    ZeroBasePoint,
    #[error("signed multiset is unbalanced: {plus} plus vs {minus} minus")]
    Unbalanced { plus: usize, minus: usize },
    #[error("invalid exponent set: {0}")]
    InvalidExponentSet(String),
    #[error("target domain does not match the exponent set")]
    TargetDomainMismatch,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("denominator of {0} is not a monomial")]
    NotLaurent(String),
    #[error("function is constant")]
    ConstantFunction,
    #[error("function is not an odd Laurent polynomial")]
    NotOdd,
    #[error("search budget exhausted: {0}")]
    SearchExhausted(String),
    #[error("{0} is not a prime")]
    InvalidPrime(u64),
    #[error("discriminant {0} is a rational square")]
    SquareDiscriminant(String),
    #[error("no suitable prime up to {0}")]
    NotFound(u64),
    #[error("expected a degree-2 rational function, got degree {0}")]
    WrongDegree(usize),
    #[error("function is not in the expected case: {0}")]
    WrongCase(String),
    #[error("target {target} is outside the representable range (bound {bound})")]
    OutOfRange { target: String, bound: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
