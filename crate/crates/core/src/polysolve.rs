//! Power-sum systems and best-effort WP search for polynomials of degree ≥ 3.
//!
//! Nothing here proves that a search must succeed: a miss within budget is
//! reported as "not found", never as an obstruction.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, Mode};
use crate::error::{Error, Result};
use crate::laurent::int_pow;
use crate::linalg::rank;
use crate::roots::{rational_roots, split_over_rationals};
use crate::{frac, rat, Poly, RatFunc, Rational};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_BUDGET: u64 = 50_000;
/// Free-coordinate trials per height in [`power_sum_point_search`].
pub const TRIALS_PER_ROUND: u64 = 32;
const MAX_TERMS: usize = 5;
const MAX_TABLE_HEIGHT: i64 = 4;

/// Elementary symmetric values `e_1..e_d` from power sums `c_1..c_d`.
pub fn newton_ps_to_elem(c: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::one()];
    for k in 1..=c.len() {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &c[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / rat(k as i64));
    }
    e.remove(0);
    e
}

/// `Π (x − r_i) = x^d − e_1 x^{d−1} + e_2 x^{d−2} − …`
pub fn companion_polynomial(e: &[Rational]) -> Poly {
    let d = e.len();
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[d] = Rational::one();
    for (k, ek) in e.iter().enumerate() {
        let k = k + 1;
        coeffs[d - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    Poly::new(coeffs)
}

/// Power sums `Σ x_i^j`, `j = 1..=d`.
pub fn power_sums(xs: &[Rational], d: usize) -> Vec<Rational> {
    (1..=d as i32)
        .map(|j| xs.iter().fold(Rational::zero(), |acc, x| acc + int_pow(x, j)))
        .collect()
}

/// Find `x ∈ ℚ^m` with `Σ x_i^j = c_j` for `j = 1..=d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumTarget {
    pub d: usize,
    pub c: Vec<Rational>,
    pub m: usize,
}

impl PowerSumTarget {
    pub fn new(c: Vec<Rational>, m: usize) -> Result<Self> {
        let d = c.len();
        if d == 0 || m < d {
            return Err(Error::DimensionMismatch(format!("need m ≥ d ≥ 1, got d = {d}, m = {m}")));
        }
        Ok(PowerSumTarget { d, c, m })
    }
}

fn random_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    frac(rng.random_range(-height..=height), rng.random_range(1..=height))
}

fn height_for_trial(trial: u64) -> i64 {
    1i64 << (1 + trial / TRIALS_PER_ROUND).min(40)
}

/// Fix `m − d` coordinates from a seeded stream (height `2^round`, doubling
/// every [`TRIALS_PER_ROUND`] trials), and accept when the residual power
/// sums come from `d` rational numbers. Output: free coordinates, then the
/// solved ones in descending order.
pub fn power_sum_point_search(target: &PowerSumTarget, budget: u64, seed: u64) -> Option<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = target.m - target.d;
    let trials = if free == 0 { 1 } else { budget.max(1) };
    for trial in 0..trials {
        let height = height_for_trial(trial);
        let mut xs: Vec<Rational> = (0..free).map(|_| random_rational(&mut rng, height)).collect();
        let taken = power_sums(&xs, target.d);
        let residual: Vec<Rational> = target.c.iter().zip(&taken).map(|(c, t)| c - t).collect();
        let poly = companion_polynomial(&newton_ps_to_elem(&residual));
        if let Some(mut roots) = split_over_rationals(&poly) {
            roots.sort_by(|a, b| b.cmp(a));
            xs.extend(roots);
            debug_assert_eq!(power_sums(&xs, target.d), target.c);
            return Some(xs);
        }
    }
    None
}

/// `r` linear forms on `ℚ^m` (rows) with offsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearFormSet {
    pub forms: Vec<Vec<Rational>>,
    pub offsets: Vec<Rational>,
}

impl LinearFormSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }
}

/// Rank of the rows `(a_i^j)_i` for `j = 0..d−1` stacked over the form rows.
pub fn jacobian_rank(a: &[Rational], d: usize, forms: &LinearFormSet) -> Result<usize> {
    let m = a.len();
    let r = forms.len();
    if m < d + r {
        return Err(Error::DimensionMismatch(format!("m = {m} < d + r = {}", d + r)));
    }
    if let Some(row) = forms.forms.iter().find(|row| row.len() != m) {
        return Err(Error::DimensionMismatch(format!("form of length {} on ℚ^{m}", row.len())));
    }
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|j| a.iter().map(|x| num_traits::pow(x.clone(), j)).collect())
        .collect();
    rows.extend(forms.forms.iter().cloned());
    Ok(rank(&rows))
}

/// Rationals of height `≤ h`, ordered by height, then size, positive first.
fn candidates(h: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    for p in -h..=h {
        for q in 1..=h {
            let x = frac(p, q);
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out.sort_by_key(|x| {
        let height = x.numer().magnitude().max(x.denom().magnitude()).clone();
        (height, x.abs(), x < &Rational::zero())
    });
    out
}

/// Multisets of size `k` over `0..n` as non-decreasing index vectors.
fn next_multiset(idx: &mut [usize], n: usize) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] + 1 < n {
            idx[i] += 1;
            let v = idx[i];
            idx[i + 1..].iter_mut().for_each(|x| *x = v);
            return true;
        }
    }
    false
}

/// Best-effort unsigned certificate `Σ f(x_i) = target` for a polynomial of
/// degree ≥ 3. Small-height points are enumerated first (fewest terms
/// first), the last term either looked up or solved exactly; then the
/// power-sum route with `m = d + 2` free power sums runs on what is left of
/// the budget. `Ok(None)` means not found within budget.
pub fn wp_search_poly(f: &Poly, target: &Rational, budget: u64, seed: u64) -> Result<Option<Certificate>> {
    let d = f.deg();
    if d < 3 {
        return Err(Error::WrongDegree(d));
    }
    let func = RatFunc::from_poly(f.clone());
    let done = |mut xs: Vec<Rational>| {
        xs.sort_by(|a, b| b.cmp(a));
        Some(Certificate::unsigned(&func, Mode::Wp, target.clone(), xs))
    };
    let mut spent = 0u64;

    for k in 1..=MAX_TERMS {
        for h in 1..=MAX_TABLE_HEIGHT {
            let cands = candidates(h);
            let values: Vec<Rational> = cands.iter().map(|x| f.eval(x)).collect();
            let mut table: HashMap<&Rational, &Rational> = HashMap::new();
            for (v, x) in values.iter().zip(&cands) {
                table.entry(v).or_insert(x);
            }
            let mut idx = vec![0usize; k - 1];
            loop {
                spent += 1;
                if spent > budget {
                    return Ok(None);
                }
                let partial = idx.iter().fold(Rational::zero(), |acc, &i| acc + &values[i]);
                let rest = target - partial;
                let last = match table.get(&rest) {
                    Some(&x) => Some(x.clone()),
                    // Solving exactly is costlier; only for short sums.
                    None if k <= 2 => rational_roots(&(f - &Poly::constant(rest))).into_iter().next(),
                    None => None,
                };
                if let Some(x) = last {
                    let mut xs: Vec<Rational> = idx.iter().map(|&i| cands[i].clone()).collect();
                    xs.push(x);
                    return Ok(done(xs));
                }
                if !next_multiset(&mut idx, cands.len()) {
                    break;
                }
            }
        }
    }

    // a_0·m + Σ a_j c_j = target, with c_1..c_{d−1} drawn at random.
    let m = d + 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lead = f.coeff(d);
    let mut round = 0u64;
    while spent < budget {
        let height = height_for_trial(round);
        let mut c: Vec<Rational> = (1..d).map(|_| random_rational(&mut rng, height)).collect();
        let partial = (1..d).fold(f.coeff(0) * rat(m as i64), |acc, j| acc + f.coeff(j) * &c[j - 1]);
        c.push((target - partial) / &lead);
        let trials = TRIALS_PER_ROUND.min(budget - spent);
        spent += trials;
        let sub_seed = seed.wrapping_add(round.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        if let Some(xs) = power_sum_point_search(&PowerSumTarget { d, c, m }, trials, sub_seed) {
            return Ok(done(xs));
        }
        round += 1;
    }
    Ok(None)
}
