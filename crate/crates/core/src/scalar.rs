//! Scalar traits for the field-generic layer.
//!
//! Everything algebraic (polynomials, rational functions, Möbius maps,
//! signed multisets, ranks, Sturm counts) is written against [`Scalar`].
//! Anything that needs the integers inside the field (primes, floors,
//! four squares) is written against the concrete [`crate::Rational`].
//!
//! Only exact fields qualify: gcd-based canonical forms and zero tests
//! are meaningless over floats.

use std::fmt::Debug;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> {
    fn from_i64(n: i64) -> Self;
}

/// A scalar with a total order compatible with the field operations.
pub trait OrderedScalar: Scalar + PartialOrd + Signed {}

impl<I> Scalar for Ratio<I>
where
    I: Clone + Debug + Integer + Signed + From<i64>,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(I::from(n))
    }
}

impl<I> OrderedScalar for Ratio<I> where I: Clone + Debug + Integer + Signed + From<i64> {}
