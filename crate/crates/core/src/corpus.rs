//! Seeded random functions and targets for property tests and `scan`.

use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use crate::{frac, Laurent, Poly, RatFunc, Rational};

/// `p/q` with `|p| ≤ height`, `1 ≤ q ≤ height`.
pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    frac(rng.random_range(-height..=height), rng.random_range(1..=height))
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, height: i64) -> Rational {
    loop {
        let q = random_rational(rng, height);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Non-constant Laurent polynomial: support of 1 to `max_support` exponents
/// in `{−5..5}∖{0}`, optional constant, coefficient heights `≤ height`.
pub fn random_laurent<R: Rng>(rng: &mut R, max_support: usize, height: i64) -> Laurent {
    let pool: Vec<i32> = (-5..=5).filter(|&s| s != 0).collect();
    let k = rng.random_range(1..=max_support.min(pool.len()));
    let mut terms: Vec<(i32, Rational)> = sample(rng, pool.len(), k)
        .into_iter()
        .map(|i| (pool[i], random_nonzero_rational(rng, height)))
        .collect();
    if rng.random_bool(0.5) {
        terms.push((0, random_rational(rng, height)));
    }
    Laurent::new(terms)
}

/// Odd Laurent polynomial: odd exponents in `{−5..5}`, no constant.
pub fn random_odd_laurent<R: Rng>(rng: &mut R, max_support: usize, height: i64) -> Laurent {
    let pool = [-5, -3, -1, 1, 3, 5];
    let k = rng.random_range(1..=max_support.min(pool.len()));
    Laurent::new(
        sample(rng, pool.len(), k)
            .into_iter()
            .map(|i| (pool[i], random_nonzero_rational(rng, height))),
    )
}

fn random_poly<R: Rng>(rng: &mut R, degree: usize, height: i64) -> Poly {
    let mut c: Vec<Rational> = (0..degree).map(|_| random_rational(rng, height)).collect();
    c.push(random_nonzero_rational(rng, height));
    Poly::new(c)
}

/// Degree-2 rational function `P/Q` with `max(deg P, deg Q) = 2`. Shapes are
/// mixed so that all three pole cases occur: a polynomial, a quadratic over
/// a product of rational linear factors, or over a random quadratic.
pub fn random_deg2<R: Rng>(rng: &mut R, height: i64) -> RatFunc {
    loop {
        let den = match rng.random_range(0..4) {
            0 => Poly::one(),
            1 => {
                let r1 = random_rational(rng, height);
                let r2 = random_rational(rng, height);
                &Poly::linear_root(r1) * &Poly::linear_root(r2)
            }
            2 => Poly::linear_root(random_rational(rng, height)),
            _ => random_poly(rng, 2, height),
        };
        let num_degree = if den.deg() == 2 { rng.random_range(0..=2) } else { 2 };
        let num = random_poly(rng, num_degree, height);
        if let Ok(f) = RatFunc::new(num, den) {
            if f.degree() == 2 {
                return f;
            }
        }
    }
}
