//! Balanced signed multisets `Σ γ(x_i) − Σ γ(y_j)`.
//!
//! A multiset with `k` plus points and `k` minus points stands for the
//! vector of its power sums at every nonzero exponent. Addition and the
//! pairwise product below make `power_sum(·, s)` a ring homomorphism for
//! each fixed `s`, which is what the representation engine builds on.

use crate::error::{Error, Result};
use crate::laurent::int_pow;
use crate::scalar::Scalar;

/// Plus and minus base points, repetitions allowed, never auto-cancelled.
/// Equality compares as multisets.
#[derive(Clone, Debug)]
pub struct SignedMultiset<T> {
    plus: Vec<T>,
    minus: Vec<T>,
}

impl<T: Scalar> SignedMultiset<T> {
    pub fn new(plus: Vec<T>, minus: Vec<T>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::Unbalanced {
                plus: plus.len(),
                minus: minus.len(),
            });
        }
        if plus.iter().chain(&minus).any(|x| x.is_zero()) {
            return Err(Error::ZeroBasePoint);
        }
        Ok(SignedMultiset { plus, minus })
    }

    pub fn empty() -> Self {
        SignedMultiset {
            plus: Vec::new(),
            minus: Vec::new(),
        }
    }

    /// `+{u} −{v}`
    pub fn pair(u: T, v: T) -> Result<Self> {
        Self::new(vec![u], vec![v])
    }

    pub fn plus(&self) -> &[T] {
        &self.plus
    }

    pub fn minus(&self) -> &[T] {
        &self.minus
    }

    /// Points per sign (the `k` of `X_k`).
    pub fn size(&self) -> usize {
        self.plus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut plus = self.plus.clone();
        plus.extend(other.plus.iter().cloned());
        let mut minus = self.minus.clone();
        minus.extend(other.minus.iter().cloned());
        SignedMultiset { plus, minus }
    }

    /// `(Σx − Σy)(Σw − Σz) = (Σxw + Σyz) − (Σxz + Σyw)`.
    pub fn mul(&self, other: &Self) -> Self {
        let cross = |a: &[T], b: &[T]| -> Vec<T> {
            a.iter()
                .flat_map(|p| b.iter().map(move |q| p.clone() * q.clone()))
                .collect()
        };
        let mut plus = cross(&self.plus, &other.plus);
        plus.extend(cross(&self.minus, &other.minus));
        let mut minus = cross(&self.plus, &other.minus);
        minus.extend(cross(&self.minus, &other.plus));
        SignedMultiset { plus, minus }
    }

    pub fn reciprocal(&self) -> Self {
        let inv = |v: &Vec<T>| v.iter().map(|x| T::one() / x.clone()).collect();
        SignedMultiset {
            plus: inv(&self.plus),
            minus: inv(&self.minus),
        }
    }

    /// `Σ_{plus} x^s − Σ_{minus} y^s`.
    pub fn power_sum(&self, s: i32) -> T {
        let sum = |v: &[T]| v.iter().fold(T::zero(), |acc, x| acc + int_pow(x, s));
        sum(&self.plus) - sum(&self.minus)
    }

    /// Plus points followed by the negated minus points.
    pub fn signed_points(&self) -> impl Iterator<Item = (i8, &T)> {
        self.plus
            .iter()
            .map(|x| (1, x))
            .chain(self.minus.iter().map(|y| (-1, y)))
    }
}

impl<T: Scalar + Ord> PartialEq for SignedMultiset<T> {
    fn eq(&self, other: &Self) -> bool {
        let sorted = |v: &[T]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        sorted(&self.plus) == sorted(&other.plus) && sorted(&self.minus) == sorted(&other.minus)
    }
}

impl<T: Scalar + Ord> Eq for SignedMultiset<T> {}
