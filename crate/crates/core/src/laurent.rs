use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ratfunc::RationalFunction;
use crate::scalar::Scalar;

/// `a_0 + Σ_{s ∈ S} a_s x^s` with integer exponents of either sign.
///
/// No stored coefficient is zero; the constant term lives at exponent 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Scalar> LaurentPolynomial<T> {
    /// Repeated exponents are summed; zero sums are dropped.
    pub fn new(terms: impl IntoIterator<Item = (i32, T)>) -> Self {
        let mut map: BTreeMap<i32, T> = BTreeMap::new();
        for (s, c) in terms {
            let entry = map.entry(s).or_insert_with(T::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial { terms: map }
    }

    pub fn terms(&self) -> &BTreeMap<i32, T> {
        &self.terms
    }

    pub fn coeff(&self, s: i32) -> T {
        self.terms.get(&s).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(0)
    }

    /// The nonzero exponents `S`, ascending.
    pub fn support(&self) -> Vec<i32> {
        self.terms.keys().copied().filter(|&s| s != 0).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.support().is_empty()
    }

    /// Odd means `f(-x) = -f(x)`: only odd exponents, no constant term.
    pub fn is_odd(&self) -> bool {
        !self.terms.is_empty() && self.terms.keys().all(|s| s.rem_euclid(2) == 1)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn eval(&self, x: &T) -> Result<T> {
        if x.is_zero() && self.min_exponent().is_some_and(|s| s < 0) {
            return Err(Error::ZeroArgument);
        }
        let mut acc = T::zero();
        for (&s, c) in &self.terms {
            acc = acc + c.clone() * int_pow(x, s);
        }
        Ok(acc)
    }

    /// `P(x) / x^k` in canonical form.
    pub fn to_function(&self) -> RationalFunction<T> {
        let shift = self.min_exponent().map_or(0, |s| (-s).max(0)) as usize;
        let max = self.terms.keys().next_back().copied().unwrap_or(0);
        let len = (max + shift as i32).max(0) as usize + 1;
        let mut coeffs = vec![T::zero(); len];
        for (&s, c) in &self.terms {
            coeffs[(s + shift as i32) as usize] = c.clone();
        }
        RationalFunction::new(
            Polynomial::new(coeffs),
            Polynomial::monomial(T::one(), shift),
        )
        .expect("monomial denominator")
    }

    /// Inverse of [`Self::to_function`]: succeeds iff the denominator is a
    /// power of `x`.
    pub fn from_function(f: &RationalFunction<T>) -> Option<Self> {
        let den = f.denominator();
        let k = den.deg();
        if den.term_count() != 1 || !den.coeff(k).is_one() {
            return None;
        }
        Some(Self::new(
            f.numerator()
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i32 - k as i32, c.clone())),
        ))
    }
}

/// `x^s` for any integer `s`; `x` must be nonzero when `s < 0`.
pub fn int_pow<T: Scalar>(x: &T, s: i32) -> T {
    let mut base = if s < 0 {
        T::one() / x.clone()
    } else {
        x.clone()
    };
    let mut e = s.unsigned_abs();
    let mut acc = T::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}
