//! Exact real-root counting and isolation (Sturm), and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rational_sqrt, simplest_between};
use crate::poly::Polynomial;
use crate::scalar::OrderedScalar;
use crate::{Poly, Rational};

/// Sturm sequence of the squarefree part of `p`.
pub fn sturm_sequence<T: OrderedScalar>(p: &Polynomial<T>) -> Vec<Polynomial<T>> {
    let p0 = p.squarefree_part();
    if p0.deg() == 0 {
        return vec![p0];
    }
    let mut seq = vec![p0.clone(), p0.derivative()];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq
}

fn sign<T: OrderedScalar>(x: &T) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at<T: OrderedScalar>(seq: &[Polynomial<T>], x: &T) -> usize {
    variations(seq.iter().map(|p| sign(&p.eval(x))))
}

fn variations_at_infinity<T: OrderedScalar>(seq: &[Polynomial<T>], positive: bool) -> usize {
    variations(seq.iter().map(|p| {
        let lc = p.leading().map_or(0, sign);
        if positive || p.deg() % 2 == 0 {
            lc
        } else {
            -lc
        }
    }))
}

/// Number of distinct real roots.
pub fn count_real_roots<T: OrderedScalar>(p: &Polynomial<T>) -> usize {
    if p.deg() == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    variations_at_infinity(&seq, false) - variations_at_infinity(&seq, true)
}

/// Distinct real roots in the open interval `(lo, hi)`; endpoints must not
/// be roots.
pub fn count_roots_between<T: OrderedScalar>(seq: &[Polynomial<T>], lo: &T, hi: &T) -> usize {
    variations_at(seq, lo) - variations_at(seq, hi)
}

/// `1 + max |a_i / a_n|`: every real root lies strictly inside `(-B, B)`.
pub fn root_bound<T: OrderedScalar>(p: &Polynomial<T>) -> T {
    let lc = p.leading().cloned().unwrap_or_else(T::one);
    let m = p.coeffs()[..p.deg()]
        .iter()
        .map(|c| (c.clone() / lc.clone()).abs())
        .fold(T::zero(), |acc, v| if v > acc { v } else { acc });
    T::one() + m
}

/// A real root located either exactly or inside an open interval whose
/// endpoints are not roots and which contains no other root.
#[derive(Clone, Debug, PartialEq)]
pub enum RootInterval<T> {
    Exact(T),
    Open(T, T),
}

impl<T: OrderedScalar> RootInterval<T> {
    pub fn contains(&self, x: &T) -> bool {
        match self {
            RootInterval::Exact(r) => r == x,
            RootInterval::Open(lo, hi) => lo < x && x < hi,
        }
    }
}

/// Isolate every distinct real root of `p`, ascending.
pub fn isolate_real_roots<T: OrderedScalar>(p: &Polynomial<T>) -> Vec<RootInterval<T>> {
    let mut out = Vec::new();
    if p.deg() == 0 {
        return out;
    }
    let seq = sturm_sequence(p);
    let p0 = seq[0].clone();
    let b = root_bound(&p0);
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots_between(&seq, &lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RootInterval::Open(lo, hi));
            continue;
        }
        let two = T::from_i64(2);
        let mid = (lo.clone() + hi.clone()) / two;
        if p0.eval(&mid).is_zero() {
            out.push(RootInterval::Exact(mid.clone()));
            // Step off the root on both sides by a point that is not a root.
            let (left, right) = nudge_around(&p0, &lo, &mid, &hi);
            stack.push((right, hi));
            stack.push((lo, left));
        } else {
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|a, b| representative(a).partial_cmp(representative(b)).unwrap());
    out
}

fn representative<T>(r: &RootInterval<T>) -> &T {
    match r {
        RootInterval::Exact(x) | RootInterval::Open(x, _) => x,
    }
}

/// Points `left < mid < right` inside `(lo, hi)`, both non-roots, with no
/// root of `p0` in `[left, mid)` or `(mid, right]`.
fn nudge_around<T: OrderedScalar>(p0: &Polynomial<T>, lo: &T, mid: &T, hi: &T) -> (T, T) {
    let seq = sturm_sequence(p0);
    let two = T::from_i64(2);
    let mut eps = (hi.clone() - lo.clone()) / T::from_i64(4);
    loop {
        let left = mid.clone() - eps.clone();
        let right = mid.clone() + eps.clone();
        let ok = !p0.eval(&left).is_zero()
            && !p0.eval(&right).is_zero()
            && count_roots_between(&seq, &left, &right) == 1;
        if ok {
            return (left, right);
        }
        eps = eps / two.clone();
    }
}

/// Shrink an isolating interval of the squarefree `p0` below `width`.
pub fn refine<T: OrderedScalar>(p0: &Polynomial<T>, root: RootInterval<T>, width: &T) -> RootInterval<T> {
    let (mut lo, mut hi) = match root {
        RootInterval::Exact(_) => return root,
        RootInterval::Open(lo, hi) => (lo, hi),
    };
    let two = T::from_i64(2);
    let lo_sign = sign(&p0.eval(&lo));
    while hi.clone() - lo.clone() >= *width {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let s = sign(&p0.eval(&mid));
        if s == 0 {
            return RootInterval::Exact(mid);
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    RootInterval::Open(lo, hi)
}

/// Scale a rational polynomial to a primitive integer polynomial.
pub fn primitive_integer_coeffs(p: &Poly) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Distinct rational roots, ascending.
pub fn rational_roots(p: &Poly) -> Vec<Rational> {
    if p.deg() == 0 {
        return Vec::new();
    }
    let p0 = p.squarefree_part();
    match p0.deg() {
        1 => return vec![-p0.coeff(0)],
        2 => {
            let (b, c) = (p0.coeff(1), p0.coeff(0));
            let disc = &b * &b - Rational::from_integer(4.into()) * &c;
            return match rational_sqrt(&disc) {
                None => Vec::new(),
                Some(r) => {
                    let two = Rational::from_integer(2.into());
                    let mut v = vec![(-&b - &r) / &two, (-&b + &r) / &two];
                    v.dedup();
                    v
                }
            };
        }
        _ => {}
    }
    // A root p/q in lowest terms has q | A, and distinct such fractions are
    // at least 1/A^2 apart, so an interval narrower than that holds at most
    // one candidate: the simplest fraction in it.
    let ints = primitive_integer_coeffs(&p0);
    let a = ints.last().expect("nonzero polynomial").abs();
    let width = Rational::new(BigInt::one(), &a * &a);
    let mut out = Vec::new();
    for root in isolate_real_roots(&p0) {
        match refine(&p0, root, &width) {
            RootInterval::Exact(r) => out.push(r),
            RootInterval::Open(lo, hi) => {
                let c = simplest_between(&lo, &hi);
                if c.denom() <= &a && p0.eval(&c).is_zero() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Rational roots with multiplicity.
pub fn rational_roots_with_multiplicity(p: &Poly) -> Vec<(Rational, u32)> {
    rational_roots(p)
        .into_iter()
        .map(|r| {
            let lin = Poly::linear_root(r.clone());
            let mut q = p.clone();
            let mut m = 0;
            loop {
                let (quot, rem) = q.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                q = quot;
                m += 1;
            }
            (r, m)
        })
        .collect()
}

/// All roots with multiplicity if `p` splits into linear factors over ℚ.
pub fn split_over_rationals(p: &Poly) -> Option<Vec<Rational>> {
    let roots = rational_roots_with_multiplicity(p);
    let total: u32 = roots.iter().map(|(_, m)| m).sum();
    if total as usize != p.deg() {
        return None;
    }
    Some(
        roots
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m as usize))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| q(v, 1)).collect())
    }

    fn from_roots(rs: &[Rational]) -> Poly {
        rs.iter()
            .fold(Poly::one(), |acc, r| &acc * &Poly::linear_root(r.clone()))
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(count_real_roots(&poly(&[1, 0, 1])), 0);
        assert_eq!(count_real_roots(&poly(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&poly(&[0, 0, 0, 1])), 1);
        // (x-1)^2 (x+2) has two distinct real roots.
        assert_eq!(count_real_roots(&(&poly(&[-1, 1]).pow(2) * &poly(&[2, 1]))), 2);
        assert_eq!(count_real_roots(&poly(&[5])), 0);
    }

    #[test]
    fn isolation_separates_close_roots() {
        let rs = [q(1, 1000), q(2, 1000), q(-7, 3), q(0, 1)];
        let f = from_roots(&rs);
        let iso = isolate_real_roots(&f);
        assert_eq!(iso.len(), 4);
        let mut sorted = rs.to_vec();
        sorted.sort();
        for (r, i) in sorted.iter().zip(&iso) {
            assert!(i.contains(r), "{r} not in {i:?}");
        }
    }

    #[test]
    fn rational_roots_of_mixed_polynomial() {
        // (3x - 2)(x + 5)^2 (x^2 - 2)(x^3 - 7)
        let f = &(&(&poly(&[-2, 3]) * &poly(&[5, 1]).pow(2)) * &poly(&[-2, 0, 1]))
            * &poly(&[-7, 0, 0, 1]);
        assert_eq!(rational_roots(&f), vec![q(-5, 1), q(2, 3)]);
        assert_eq!(
            rational_roots_with_multiplicity(&f),
            vec![(q(-5, 1), 2), (q(2, 3), 1)]
        );
        assert_eq!(split_over_rationals(&f), None);
    }

    #[test]
    fn splitting_recovers_multiset() {
        let rs = [q(1, 2), q(1, 2), q(-3, 7), q(5, 1), q(-11, 4)];
        let f = from_roots(&rs).scale(&q(-6, 5));
        let mut got = split_over_rationals(&f).unwrap();
        got.sort();
        let mut want = rs.to_vec();
        want.sort();
        assert_eq!(got, want);
    }
}
