//! Univariate rational functions in canonical form.

use crate::error::{Error, Result};
use crate::mobius::MobiusTransform;
use crate::poly::Polynomial;
use crate::scalar::Scalar;

/// `numerator / denominator` with coprime parts and a monic denominator.
/// Equality is structural, which is sound because the form is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: Polynomial<T>,
    den: Polynomial<T>,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: Polynomial<T>, den: Polynomial<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g);
        let mut den = den.exact_div(&g);
        let lc = den.leading().cloned().expect("nonzero denominator");
        if !lc.is_one() {
            let inv = T::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn numerator(&self) -> &Polynomial<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }

    pub fn is_constant(&self) -> bool {
        self.num.deg() == 0 && self.den.deg() == 0
    }

    /// `max(deg num, deg den)`: the number of preimages of a generic value.
    pub fn degree(&self) -> usize {
        self.num.deg().max(self.den.deg())
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleHit);
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    /// Fails with [`Error::ZeroDenominator`] when `rhs` is the zero function.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, k: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        RationalFunction {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("denominator unchanged")
    }

    /// `self ∘ g`, reduced.
    pub fn compose_mobius(&self, g: &MobiusTransform<T>) -> Self {
        let n = self.degree();
        let top = Polynomial::new(vec![g.b().clone(), g.a().clone()]);
        let bottom = Polynomial::new(vec![g.d().clone(), g.c().clone()]);
        // Homogenize: P((ax+b)/(cx+d)) * (cx+d)^n, same for Q, so the
        // (cx+d)^n factors cancel in the quotient.
        let homogenize = |p: &Polynomial<T>| {
            let mut acc = Polynomial::zero();
            for (i, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &top.pow(i as u32) * &bottom.pow((n - i) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        Self::new(homogenize(&self.num), homogenize(&self.den))
            .expect("Möbius substitution keeps the denominator nonzero")
    }
}
