//! Exact representation and obstruction certificates for Waring-type
//! problems over ℚ.
//!
//! Given a rational function `f` and a target `c`, the solvers either write
//! `c` as a bounded sum `Σ f(x_i)` (or a signed sum `Σ ±f(x_i)`) with
//! rational `x_i`, or produce a witness that no such bounded representation
//! can exist. Every [`Certificate`] re-checks with exact arithmetic via
//! [`verify_certificate`].
//!
//! The algebraic layer ([`poly`], [`ratfunc`], [`mobius`], [`laurent`],
//! [`multiset`], [`roots`], [`linalg`]) is generic over an exact field
//! [`Scalar`]; the solvers work over [`Rational`].

pub mod arith;
pub mod certificate;
pub mod corpus;
pub mod deg2;
pub mod engine;
pub mod error;
pub mod foursquare;
pub mod laurent;
pub mod linalg;
pub mod mobius;
pub mod multiset;
pub mod parse;
pub mod poles;
pub mod poly;
pub mod polysolve;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
mod serde_rational;

pub use certificate::{verify_certificate, Certificate, Mode, Obstruction, ObstructionKind, Verdict};
pub use error::{Error, Result};
pub use parse::{format_function, laurent_of, parse_function, parse_rational, ParseError};
pub use scalar::{OrderedScalar, Scalar};

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

pub type Poly = poly::Polynomial<Rational>;
pub type RatFunc = ratfunc::RationalFunction<Rational>;
pub type Laurent = laurent::LaurentPolynomial<Rational>;
pub type Mobius = mobius::MobiusTransform<Rational>;
pub type Multiset = multiset::SignedMultiset<Rational>;

/// `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n / d` as a rational. Panics if `d = 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
