//! Balanced signed multisets with prescribed power sums, and the EWP/WP
//! representations of Laurent polynomials built from them.
//!
//! For a single exponent `s ≥ 2` the `(s−1)`-fold difference operator
//! linearizes `x^s`:
//!
//! ```text
//! Σ_{i=0}^{s−1} (−1)^i C(s−1, i) (x + s−1−i)^s = s!·x + (s−1)·s!/2
//! ```
//!
//! so any target is hit by solving for `x` after subtracting the value of a
//! shift pair `+u −v` (`u = v + 1`). Several exponents are handled by
//! multiplying annihilators (power sum zero at one exponent, nonzero at
//! another) and summing the results; power sums are ring homomorphisms for
//! [`SignedMultiset::mul`](crate::multiset::SignedMultiset::mul).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::certificate::{Certificate, Mode, Term};
use crate::error::{Error, Result};
use crate::{rat, Laurent, Multiset, Rational};

/// Shift pairs tried by the annihilator fallback.
pub const ANNIHILATOR_SHIFT_BUDGET: u32 = 64;
/// Largest `|s|` the engine builds (the configuration has `2^{|s|−2}` points per sign).
pub const MAX_EXPONENT: i32 = 20;
/// Largest per-sign size the engine agrees to build.
pub const MAX_POINTS: usize = 1 << 21;

/// Finite nonempty set of nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentSet(BTreeSet<i32>);

impl ExponentSet {
    pub fn new(exponents: impl IntoIterator<Item = i32>) -> Result<Self> {
        let set: BTreeSet<i32> = exponents.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidExponentSet("empty".into()));
        }
        if set.contains(&0) {
            return Err(Error::InvalidExponentSet("contains 0".into()));
        }
        Ok(ExponentSet(set))
    }

    pub fn iter(&self) -> impl Iterator<Item = i32> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: i32) -> bool {
        self.0.contains(&s)
    }
}

/// Map `s ↦ c_s` prescribing the power sum at each exponent.
pub type VectorTarget = BTreeMap<i32, Rational>;

/// Binomial coefficients `C(n, 0..=n)`.
fn binomials(n: u32) -> Vec<u64> {
    let mut row = vec![1u64];
    for k in 0..n as u64 {
        let next = row[k as usize] * (n as u64 - k) / (k + 1);
        row.push(next);
    }
    row
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k))
}

/// The shift-free `δ^{s−1}` configuration at `x`: plus points
/// `x+s−1−i` for even `i`, minus points for odd `i`, each repeated
/// `C(s−1, i)` times. `None` if some point is zero.
pub fn delta_configuration(s: u32, x: &Rational) -> Option<Multiset> {
    assert!(s >= 2, "δ configuration needs s ≥ 2");
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, &mult) in binomials(s - 1).iter().enumerate() {
        let point = x + rat((s as usize - 1 - i) as i64);
        if point.is_zero() {
            return None;
        }
        let side = if i % 2 == 0 { &mut plus } else { &mut minus };
        side.extend(std::iter::repeat_n(point, mult as usize));
    }
    Multiset::new(plus, minus).ok()
}

/// Per-sign size of `single_exponent_rep(s, ·)`.
pub fn single_exponent_size(s: i32) -> usize {
    match s.unsigned_abs() {
        0 | 1 => 1,
        k => 1 + (1usize << (k - 2)),
    }
}

/// Deterministic engine; `first_shift` is the first `v` tried for shift pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engine {
    first_shift: u32,
}

impl Default for Engine {
    fn default() -> Self {
        Engine { first_shift: 1 }
    }
}

impl Engine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `v = 0`.
    pub fn with_first_shift(v: u32) -> Self {
        assert!(v >= 1, "shift pairs start at v = 1");
        Engine { first_shift: v }
    }

    pub fn first_shift(&self) -> u32 {
        self.first_shift
    }

    /// Balanced `Z` with `power_sum(Z, s) = target`. Per-sign size is 1 for
    /// `|s| = 1` and `1 + 2^{|s|−2}` otherwise. Panics if `s = 0`.
    pub fn single_exponent_rep(&self, s: i32, target: &Rational) -> Multiset {
        assert!(s != 0, "exponent must be nonzero");
        if s < 0 {
            return self.single_exponent_rep(-s, target).reciprocal();
        }
        let mut v = self.first_shift as i64;
        if s == 1 {
            loop {
                let u = target + rat(v);
                if !u.is_zero() {
                    return Multiset::pair(u, rat(v)).expect("nonzero pair");
                }
                v += 1;
            }
        }
        let k = s as u32;
        let fact = factorial(k);
        let half_width = Rational::new((k as i64 - 1).into(), 2.into());
        loop {
            let (u, vq) = (rat(v + 1), rat(v));
            let e = num_traits::pow(u.clone(), k as usize) - num_traits::pow(vq.clone(), k as usize);
            let x = (target - e) / &fact - &half_width;
            if let Some(delta) = delta_configuration(k, &x) {
                return delta.add(&Multiset::pair(u, vq).expect("nonzero pair"));
            }
            v += 1;
        }
    }

    /// Balanced `W` with `power_sum(W, s) = 0` and `power_sum(W, t) ≠ 0`.
    pub fn annihilator(&self, s: i32, t: i32) -> Result<Multiset> {
        if s == 0 || t == 0 || s == t {
            return Err(Error::InvalidExponentSet(format!(
                "annihilator needs distinct nonzero exponents, got ({s}, {t})"
            )));
        }
        let curated: Option<([i64; 2], [i64; 2])> = match s.abs() {
            1 => Some(([1, 4], [2, 3])),
            2 => Some(([1, 7], [5, 5])),
            3 => Some(([1, 12], [9, 10])),
            _ => None,
        };
        if let Some((p, m)) = curated {
            let mut w = Multiset::new(p.map(rat).to_vec(), m.map(rat).to_vec())?;
            if s < 0 {
                w = w.reciprocal();
            }
            if !w.power_sum(t).is_zero() {
                return Ok(w);
            }
        }
        check_exponent(s)?;
        for v in self.first_shift..self.first_shift + ANNIHILATOR_SHIFT_BUDGET {
            let z = Engine::with_first_shift(v).single_exponent_rep(s, &Rational::zero());
            if !z.power_sum(t).is_zero() {
                return Ok(z);
            }
        }
        Err(Error::SearchExhausted(format!(
            "no annihilator for ({s}, {t}) within {ANNIHILATOR_SHIFT_BUDGET} shifts"
        )))
    }

    /// `E` with `power_sum(E, s) = 0` for `s ∈ S∖{t}` and `power_sum(E, t) ≠ 0`:
    /// the product of annihilators in ascending order of `s`. For `S = {t}`
    /// this is the unit `single_exponent_rep(t, 1)`.
    pub fn separator(&self, t: i32, set: &ExponentSet) -> Result<Multiset> {
        if !set.contains(t) {
            return Err(Error::InvalidExponentSet(format!("{t} is not in the set")));
        }
        if set.len() == 1 {
            check_exponent(t)?;
            return Ok(self.single_exponent_rep(t, &Rational::one()));
        }
        let mut acc: Option<Multiset> = None;
        for s in set.iter().filter(|&s| s != t) {
            let w = self.annihilator(s, t)?;
            acc = Some(match acc {
                None => w,
                Some(e) => checked_mul(&e, &w)?,
            });
        }
        Ok(acc.expect("at least one other exponent"))
    }

    /// Balanced `Z` with `power_sum(Z, s) = targets[s]` for every `s ∈ S`.
    pub fn vector_rep(&self, set: &ExponentSet, targets: &VectorTarget) -> Result<Multiset> {
        if targets.len() != set.len() || !targets.keys().all(|&s| set.contains(s)) {
            return Err(Error::TargetDomainMismatch);
        }
        for s in set.iter() {
            check_exponent(s)?;
        }
        if targets.values().all(Zero::is_zero) {
            let v = rat(self.first_shift as i64);
            return Ok(Multiset::pair(v.clone(), v).expect("nonzero pair"));
        }
        if set.len() == 1 {
            let (&s, c) = targets.iter().next().expect("one target");
            return Ok(self.single_exponent_rep(s, c));
        }
        let mut z = Multiset::empty();
        for (&t, c) in targets.iter().filter(|(_, c)| !c.is_zero()) {
            let e = self.separator(t, set)?;
            let m = self.single_exponent_rep(t, &(c / e.power_sum(t)));
            z = z.add(&checked_mul(&e, &m)?);
        }
        Ok(z)
    }

    /// Balanced `Z` with `Σ_plus f − Σ_minus f = c`. The whole target goes
    /// to the exponent of smallest `|s|` (positive on ties).
    pub fn laurent_multiset(&self, f: &Laurent, c: &Rational) -> Result<Multiset> {
        let support = f.support();
        let s0 = *support
            .iter()
            .min_by_key(|&&s| (s.unsigned_abs(), s < 0))
            .ok_or(Error::ConstantFunction)?;
        let set = ExponentSet::new(support.iter().copied())?;
        let targets: VectorTarget = support
            .iter()
            .map(|&s| {
                let cs = if s == s0 { c / f.coeff(s) } else { Rational::zero() };
                (s, cs)
            })
            .collect();
        self.vector_rep(&set, &targets)
    }

    /// Signed certificate for the EWP of a non-constant Laurent polynomial.
    pub fn ewp_represent(&self, f: &Laurent, c: &Rational) -> Result<Certificate> {
        let z = self.laurent_multiset(f, c)?;
        let terms = z
            .plus()
            .iter()
            .cloned()
            .map(Term::plus)
            .chain(z.minus().iter().cloned().map(Term::minus))
            .collect();
        Ok(Certificate::representation(
            &f.to_function(),
            Mode::Ewp,
            c.clone(),
            terms,
            z.size() as u64,
        ))
    }

    /// Points `x_i` with `Σ f(x_i) = c` for an odd Laurent polynomial:
    /// the plus points followed by the negated minus points.
    pub fn odd_points(&self, f: &Laurent, c: &Rational) -> Result<Vec<Rational>> {
        if !f.is_odd() {
            return Err(Error::NotOdd);
        }
        let z = self.laurent_multiset(f, c)?;
        Ok(z.plus().iter().cloned().chain(z.minus().iter().map(|y| -y)).collect())
    }

    /// Unsigned certificate for an odd Laurent polynomial.
    pub fn wp_represent_odd(&self, f: &Laurent, c: &Rational) -> Result<Certificate> {
        let points = self.odd_points(f, c)?;
        Ok(Certificate::unsigned(&f.to_function(), Mode::Wp, c.clone(), points))
    }
}

fn check_exponent(s: i32) -> Result<()> {
    if s.abs() > MAX_EXPONENT {
        return Err(Error::SearchExhausted(format!(
            "exponent {s} exceeds the engine limit {MAX_EXPONENT}"
        )));
    }
    Ok(())
}

fn checked_mul(a: &Multiset, b: &Multiset) -> Result<Multiset> {
    let size = 2usize.saturating_mul(a.size()).saturating_mul(b.size());
    if size > MAX_POINTS {
        return Err(Error::SearchExhausted(format!(
            "certificate would need {size} points per sign"
        )));
    }
    Ok(a.mul(b))
}

pub fn single_exponent_rep(s: i32, target: &Rational) -> Multiset {
    Engine::new().single_exponent_rep(s, target)
}

pub fn annihilator(s: i32, t: i32) -> Result<Multiset> {
    Engine::new().annihilator(s, t)
}

pub fn separator(t: i32, set: &ExponentSet) -> Result<Multiset> {
    Engine::new().separator(t, set)
}

pub fn vector_rep(set: &ExponentSet, targets: &VectorTarget) -> Result<Multiset> {
    Engine::new().vector_rep(set, targets)
}

pub fn ewp_represent(f: &Laurent, c: &Rational) -> Result<Certificate> {
    Engine::new().ewp_represent(f, c)
}

pub fn wp_represent_odd(f: &Laurent, c: &Rational) -> Result<Certificate> {
    Engine::new().wp_represent_odd(f, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, verify_certificate};

    fn ms(plus: &[Rational], minus: &[Rational]) -> Multiset {
        Multiset::new(plus.to_vec(), minus.to_vec()).unwrap()
    }

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n)).collect()
    }

    fn laurent(terms: &[(i32, Rational)]) -> Laurent {
        Laurent::new(terms.iter().cloned())
    }

    #[test]
    fn single_exponent_examples() {
        let z = single_exponent_rep(2, &rat(7));
        assert_eq!(z.plus(), &[frac(5, 2), rat(2)]);
        assert_eq!(z.minus(), &[frac(3, 2), rat(1)]);

        let z = single_exponent_rep(3, &rat(6));
        assert_eq!(z.plus(), &[frac(5, 6), frac(-7, 6), rat(2)]);
        assert_eq!(z.minus(), &[frac(-1, 6), frac(-1, 6), rat(1)]);

        assert_eq!(single_exponent_rep(1, &rat(-1)), ms(&r(&[1]), &r(&[2])));
        assert_eq!(single_exponent_rep(1, &rat(7)), ms(&r(&[8]), &r(&[1])));

        let z = single_exponent_rep(-1, &frac(5, 12));
        assert_eq!(z.power_sum(-1), frac(5, 12));
        assert_eq!(z.size(), 1);
    }

    #[test]
    fn shift_skips_excluded_points() {
        // Target 4 solves to x = 0 with v = 1 and x = -1 with v = 2.
        let z = single_exponent_rep(2, &rat(4));
        assert_eq!(z.power_sum(2), rat(4));
        assert_eq!(z.plus(), &[rat(-1), rat(4)]);
        assert_eq!(z.minus(), &[rat(-2), rat(3)]);
    }

    #[test]
    fn sizes_follow_the_difference_operator() {
        for s in 2..=8 {
            let z = single_exponent_rep(s, &frac(3, 7));
            assert_eq!(z.size(), 1 + (1 << (s - 2)));
            assert_eq!(z.power_sum(s), frac(3, 7));
            let w = single_exponent_rep(-s, &frac(3, 7));
            assert_eq!(w.power_sum(-s), frac(3, 7));
        }
    }

    #[test]
    fn annihilator_examples() {
        assert_eq!(annihilator(1, -1).unwrap(), ms(&r(&[1, 4]), &r(&[2, 3])));
        assert_eq!(annihilator(2, 1).unwrap(), ms(&r(&[1, 7]), &r(&[5, 5])));
        assert_eq!(annihilator(3, 1).unwrap(), ms(&r(&[1, 12]), &r(&[9, 10])));
        let w = annihilator(4, 1).unwrap();
        assert!(w.power_sum(4).is_zero());
        assert_eq!(w.power_sum(1), rat(1));
        assert!(annihilator(2, 2).is_err());
        // 1 + 4^2 ≠ ... but 1^{-2} etc: negative families stay valid.
        let w = annihilator(-2, 3).unwrap();
        assert!(w.power_sum(-2).is_zero());
        assert!(!w.power_sum(3).is_zero());
    }

    #[test]
    fn separator_examples() {
        let set = ExponentSet::new([1, -1]).unwrap();
        let e = separator(-1, &set).unwrap();
        assert_eq!(e, ms(&r(&[1, 4]), &r(&[2, 3])));
        assert_eq!(e.power_sum(-1), frac(5, 12));
        let set = ExponentSet::new([1, 2]).unwrap();
        let e = separator(1, &set).unwrap();
        assert_eq!(e.power_sum(1), rat(-2));
        assert!(e.power_sum(2).is_zero());
    }

    #[test]
    fn vector_rep_examples() {
        let set = ExponentSet::new([1]).unwrap();
        let t: VectorTarget = [(1, rat(7))].into();
        assert_eq!(vector_rep(&set, &t).unwrap(), ms(&r(&[8]), &r(&[1])));

        let set = ExponentSet::new([1, 2]).unwrap();
        let t: VectorTarget = [(1, rat(-2)), (2, rat(0))].into();
        let z = vector_rep(&set, &t).unwrap();
        assert_eq!(z.plus(), r(&[2, 14, 5, 5]).as_slice());
        assert_eq!(z.minus(), r(&[1, 7, 10, 10]).as_slice());

        let set = ExponentSet::new([1, -1]).unwrap();
        let t: VectorTarget = [(1, rat(0)), (-1, frac(5, 12))].into();
        let z = vector_rep(&set, &t).unwrap();
        assert!(z.power_sum(1).is_zero());
        assert_eq!(z.power_sum(-1), frac(5, 12));

        let t: VectorTarget = [(1, rat(0))].into();
        assert_eq!(vector_rep(&set, &t), Err(Error::TargetDomainMismatch));
    }

    #[test]
    fn three_exponents() {
        let set = ExponentSet::new([-2, 1, 3]).unwrap();
        let t: VectorTarget = [(-2, frac(1, 3)), (1, rat(-5)), (3, frac(7, 2))].into();
        let z = vector_rep(&set, &t).unwrap();
        for (s, c) in &t {
            assert_eq!(&z.power_sum(*s), c);
        }
    }

    #[test]
    fn ewp_examples() {
        let f = laurent(&[(1, rat(1)), (-1, rat(1))]);
        let c = ewp_represent(&f, &rat(1)).unwrap();
        let plus: Vec<_> = c.terms.iter().filter(|t| t.sign == 1).map(|t| t.x.clone()).collect();
        let minus: Vec<_> = c.terms.iter().filter(|t| t.sign == -1).map(|t| t.x.clone()).collect();
        assert_eq!(plus, vec![frac(17, 5), frac(17, 20), frac(1, 2), frac(1, 3)]);
        assert_eq!(minus, vec![rat(1), frac(1, 4), frac(17, 10), frac(17, 15)]);
        assert_eq!(c.engine_n, 4);
        assert!(verify_certificate(&c).is_verified());

        let cube = laurent(&[(3, rat(1))]);
        let c = ewp_represent(&cube, &rat(6)).unwrap();
        assert_eq!(c.engine_n, 3);
        assert!(verify_certificate(&c).is_verified());

        let g = laurent(&[(0, rat(5)), (2, rat(1))]);
        let c = ewp_represent(&g, &rat(0)).unwrap();
        assert_eq!(c.terms, vec![Term::plus(rat(1)), Term::minus(rat(1))]);
        assert!(verify_certificate(&c).is_verified());

        assert_eq!(ewp_represent(&laurent(&[(0, rat(3))]), &rat(1)), Err(Error::ConstantFunction));
    }

    #[test]
    fn odd_examples() {
        let cube = laurent(&[(3, rat(1))]);
        let c = wp_represent_odd(&cube, &rat(6)).unwrap();
        let pts: Vec<_> = c.points().cloned().collect();
        assert_eq!(pts, vec![frac(5, 6), frac(-7, 6), rat(2), frac(1, 6), frac(1, 6), rat(-1)]);
        assert!(verify_certificate(&c).is_verified());

        let f = laurent(&[(1, rat(1)), (-1, rat(1))]);
        let c = wp_represent_odd(&f, &rat(1)).unwrap();
        assert_eq!(c.terms.len(), 8);
        assert!(verify_certificate(&c).is_verified());

        let even = laurent(&[(2, rat(1)), (1, rat(1))]);
        assert_eq!(wp_represent_odd(&even, &rat(1)), Err(Error::NotOdd));
    }

    #[test]
    fn curated_pairs_separate_other_exponents() {
        let one = |t: i32| rat(1) + crate::laurent::int_pow(&rat(4), t);
        let two = |t: i32| crate::laurent::int_pow(&rat(2), t) + crate::laurent::int_pow(&rat(3), t);
        for t in -12..=12 {
            if t != 0 && t != 1 {
                assert_ne!(one(t), two(t), "t = {t}");
            }
        }
    }
}
