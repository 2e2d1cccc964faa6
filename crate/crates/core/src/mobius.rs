use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;
use crate::scalar::Scalar;
use crate::poly::Polynomial;

/// `x ↦ (ax + b) / (cx + d)` with `ad - bc ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MobiusTransform<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Scalar> MobiusTransform<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det.is_zero() {
            return Err(Error::SingularMobius);
        }
        Ok(MobiusTransform { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusTransform {
            a: T::one(),
            b: T::zero(),
            c: T::zero(),
            d: T::one(),
        }
    }

    /// `x ↦ x + t`
    pub fn translation(t: T) -> Self {
        MobiusTransform {
            a: T::one(),
            b: t,
            c: T::zero(),
            d: T::one(),
        }
    }

    pub fn a(&self) -> &T {
        &self.a
    }
    pub fn b(&self) -> &T {
        &self.b
    }
    pub fn c(&self) -> &T {
        &self.c
    }
    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn determinant(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Image of a finite point; `None` when it is sent to ∞.
    pub fn apply(&self, x: &T) -> Option<T> {
        let den = self.c.clone() * x.clone() + self.d.clone();
        if den.is_zero() {
            return None;
        }
        Some((self.a.clone() * x.clone() + self.b.clone()) / den)
    }

    /// Image of ∞; `None` when ∞ is fixed.
    pub fn image_of_infinity(&self) -> Option<T> {
        if self.c.is_zero() {
            None
        } else {
            Some(self.a.clone() / self.c.clone())
        }
    }

    /// The finite point sent to ∞, if any.
    pub fn pole(&self) -> Option<T> {
        if self.c.is_zero() {
            None
        } else {
            Some(-self.d.clone() / self.c.clone())
        }
    }

    pub fn inverse(&self) -> Self {
        MobiusTransform {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    pub fn to_function(&self) -> RationalFunction<T> {
        RationalFunction::new(
            Polynomial::new(vec![self.b.clone(), self.a.clone()]),
            Polynomial::new(vec![self.d.clone(), self.c.clone()]),
        )
        .expect("cx + d is nonzero for an invertible transform")
    }
}
