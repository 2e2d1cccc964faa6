//! Four-square decompositions of non-negative integers and rationals.
//!
//! The integer decomposition is the lexicographically largest quadruple
//! `w ≥ x ≥ y ≥ z`: pick the largest `w` leaving a sum of three squares
//! (Legendre: not `4^a(8b+7)`), then the largest `x` leaving a sum of two
//! squares (every prime `≡ 3 mod 4` to an even power), then the largest
//! two-square split, read off the Gaussian-integer factorization.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factor;
use crate::Rational;

/// Sum of three squares iff not of the form `4^a(8b+7)`.
pub fn is_sum_of_three_squares(n: &BigUint) -> bool {
    if n.is_zero() {
        return true;
    }
    let tz = n.trailing_zeros().unwrap_or(0);
    let m = n >> (tz - tz % 2);
    (&m % 8u32) != BigUint::from(7u32)
}

/// Largest `(y, z)`, `y ≥ z ≥ 0`, with `y² + z² = n`, or `None` if there is
/// none (or `n` could not be factored).
pub fn two_squares(n: &BigUint) -> Option<(BigUint, BigUint)> {
    if n.is_zero() {
        return Some((BigUint::zero(), BigUint::zero()));
    }
    // Residue 3 mod 4 forces a prime ≡ 3 (mod 4) to an odd power.
    if (n % 4u32) == BigUint::from(3u32) {
        return None;
    }
    let factors = factor(n)?;
    let mut reps: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero())];
    for (p, e) in &factors {
        match (p % 4u32).to_u32().expect("residue") {
            2 => {
                let g = gaussian_pow(&(BigInt::one(), BigInt::one()), *e);
                reps = reps.iter().map(|r| gaussian_mul(r, &g)).collect();
            }
            3 => {
                if e % 2 == 1 {
                    return None;
                }
                let q = BigInt::from_biguint(Sign::Plus, p.pow(e / 2));
                reps = reps.iter().map(|(a, b)| (a * &q, b * &q)).collect();
            }
            _ => {
                let pi = gaussian_prime(p);
                let conj = (pi.0.clone(), -&pi.1);
                let options: Vec<_> = (0..=*e)
                    .map(|j| gaussian_mul(&gaussian_pow(&pi, j), &gaussian_pow(&conj, e - j)))
                    .collect();
                let mut next: Vec<(BigInt, BigInt)> = Vec::new();
                for r in &reps {
                    for o in &options {
                        let c = normalize(gaussian_mul(r, o));
                        if !next.contains(&c) {
                            next.push(c);
                        }
                    }
                }
                reps = next;
            }
        }
    }
    reps.into_iter()
        .map(normalize)
        .max()
        .map(|(a, b)| (a.magnitude().clone(), b.magnitude().clone()))
}

fn normalize((a, b): (BigInt, BigInt)) -> (BigInt, BigInt) {
    let (a, b) = (a.abs(), b.abs());
    if a >= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn gaussian_mul(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gaussian_pow(a: &(BigInt, BigInt), k: u32) -> (BigInt, BigInt) {
    (0..k).fold((BigInt::one(), BigInt::zero()), |acc, _| gaussian_mul(&acc, a))
}

/// `a + bi` with `a² + b² = p` for a prime `p ≡ 1 (mod 4)`: a square root of
/// −1 modulo `p`, then Euclid until the remainder drops below `√p`.
fn gaussian_prime(p: &BigUint) -> (BigInt, BigInt) {
    let p1 = p - 1u32;
    let quarter = &p1 >> 2;
    let half = &p1 >> 1;
    let mut c = BigUint::from(2u32);
    let root = loop {
        if c.modpow(&half, p) == p1 {
            break c.modpow(&quarter, p);
        }
        c += 1u32;
    };
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let r = &a % &b;
        a = b;
        b = r;
    }
    let rest = (p - &b * &b).sqrt();
    (BigInt::from_biguint(Sign::Plus, b), BigInt::from_biguint(Sign::Plus, rest))
}

/// Lexicographically largest `(w, x, y, z)`, `w ≥ x ≥ y ≥ z ≥ 0`, with
/// `w² + x² + y² + z² = n`.
pub fn four_squares_int(n: &BigUint) -> [BigUint; 4] {
    let mut w = n.sqrt();
    loop {
        let r = n - &w * &w;
        if is_sum_of_three_squares(&r) {
            if let Some([x, y, z]) = three_squares(&r) {
                return [w, x, y, z];
            }
        }
        assert!(!w.is_zero(), "no four-square decomposition of {n}");
        w -= 1u32;
    }
}

fn three_squares(r: &BigUint) -> Option<[BigUint; 3]> {
    let mut x = r.sqrt();
    loop {
        if let Some((y, z)) = two_squares(&(r - &x * &x)) {
            return Some([x, y, z]);
        }
        if x.is_zero() {
            return None;
        }
        x -= 1u32;
    }
}

/// Four rationals, non-increasing, whose squares sum to `t ≥ 0`: decompose
/// `p·q` for `t = p/q` and divide by `q`. Panics if `t < 0`.
pub fn four_squares_rat(t: &Rational) -> [Rational; 4] {
    assert!(!t.is_negative(), "four squares of a negative number");
    let n = (t.numer() * t.denom()).to_biguint().expect("non-negative");
    let q = t.denom().clone();
    four_squares_int(&n).map(|c| Rational::new(BigInt::from_biguint(Sign::Plus, c), q.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, rat};

    fn ints(n: u64) -> [u64; 4] {
        four_squares_int(&BigUint::from(n)).map(|c| c.to_u64().unwrap())
    }

    #[test]
    fn integer_examples() {
        assert_eq!(ints(7), [2, 1, 1, 1]);
        assert_eq!(ints(0), [0, 0, 0, 0]);
        assert_eq!(ints(26), [5, 1, 0, 0]);
        assert_eq!(ints(5), [2, 1, 0, 0]);
    }

    #[test]
    fn rational_examples() {
        assert_eq!(four_squares_rat(&frac(13, 2)), [frac(5, 2), frac(1, 2), rat(0), rat(0)]);
        assert_eq!(four_squares_rat(&frac(7, 3)), [frac(4, 3), frac(2, 3), frac(1, 3), rat(0)]);
        assert_eq!(four_squares_rat(&rat(0)), [rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn two_square_splits() {
        let two = |n: u64| two_squares(&BigUint::from(n)).map(|(a, b)| (a.to_u64().unwrap(), b.to_u64().unwrap()));
        assert_eq!(two(25), Some((5, 0)));
        assert_eq!(two(65), Some((8, 1)));
        assert_eq!(two(21), None);
        assert_eq!(two(18), Some((3, 3)));
        assert_eq!(two(9 * 13), Some((9, 6)));
        assert_eq!(two(1), Some((1, 0)));
    }

    #[test]
    fn large_input() {
        let n = BigUint::from(999_999_937_000_000_063u64);
        let q = four_squares_int(&n);
        let sum: BigUint = q.iter().map(|c| c * c).sum();
        assert_eq!(sum, n);
        assert!(q.windows(2).all(|w| w[0] >= w[1]));
    }
}
