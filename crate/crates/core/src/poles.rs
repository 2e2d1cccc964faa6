//! Poles over ℚP¹, ℝP¹ and ℚ_pP¹, and the necessary conditions they impose.
//!
//! A set of values bounded in some completion cannot be a virtual base, and
//! a base needs either two distinct real poles or a real pole of odd order.
//! `∞` is a pole of order `deg P − deg Q` whenever that is positive.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_prime, is_rational_square, is_square_in_qp, legendre_rational, primes_up_to, valuation};
use crate::certificate::{quadratic_discriminant, real_pole_summary, Certificate, Obstruction, ObstructionKind};
use crate::error::{Error, Result};
use crate::roots::{primitive_integer_coeffs, rational_roots, rational_roots_with_multiplicity};
use crate::{Poly, RatFunc, Rational};

pub const DEFAULT_PRIME_BOUND: u64 = 10_000;
/// Odd primes up to this bound are always tested by [`obstruction_report`].
pub const TESTED_PRIME_BOUND: u64 = 100;

const HENSEL_MAX_PRECISION: u32 = 64;
const HENSEL_MAX_CANDIDATES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleLocation {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for PoleLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoleLocation::Finite(r) => write!(f, "{r}"),
            PoleLocation::Infinity => write!(f, "∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pole {
    pub location: PoleLocation,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleProfile {
    /// Rational poles ascending, `∞` last.
    pub rational_poles: Vec<Pole>,
    /// Distinct poles on ℝP¹, `∞` included.
    pub real_pole_count: usize,
    pub has_odd_order_real_pole: bool,
    /// Sturm counts are exact, so this is always true.
    pub real_analysis_exact: bool,
}

fn infinity_order(f: &RatFunc) -> Option<u32> {
    let (p, q) = (f.numerator().deg(), f.denominator().deg());
    (p > q).then(|| (p - q) as u32)
}

/// Rational roots of the denominator with multiplicity, then `∞`.
pub fn rational_pole_profile(f: &RatFunc) -> Vec<Pole> {
    let mut poles: Vec<Pole> = rational_roots_with_multiplicity(f.denominator())
        .into_iter()
        .map(|(r, m)| Pole {
            location: PoleLocation::Finite(r),
            order: m,
        })
        .collect();
    if let Some(order) = infinity_order(f) {
        poles.push(Pole {
            location: PoleLocation::Infinity,
            order,
        });
    }
    poles
}

/// Distinct real poles (Sturm counts on each squarefree factor) and whether
/// one has odd order.
pub fn real_pole_profile(f: &RatFunc) -> (usize, bool) {
    real_pole_summary(f)
}

pub fn pole_profile(f: &RatFunc) -> PoleProfile {
    let (real_pole_count, has_odd_order_real_pole) = real_pole_profile(f);
    PoleProfile {
        rational_poles: rational_pole_profile(f),
        real_pole_count,
        has_odd_order_real_pole,
        real_analysis_exact: true,
    }
}

/// Why a pole exists in `ℚ_pP¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleWitness {
    Infinity,
    RationalRoot(Rational),
    /// `F(root) ≡ 0 (mod p^precision)` with `precision > 2·v_p(F'(root))`,
    /// so Hensel's lemma lifts `root` to a root in ℤ_p. `F` is the primitive
    /// integer form of a denominator factor, or its reversal (root `1/x`).
    Hensel {
        factor: Vec<BigInt>,
        reversed: bool,
        root: BigInt,
        precision: u32,
    },
    /// The discriminant of a quadratic factor is a square in ℚ_p.
    SquareDiscriminant(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PadicPole {
    Yes(PoleWitness),
    No,
    Unknown,
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative_int(f: &[BigInt]) -> Vec<BigInt> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Exact re-check of a Hensel witness.
pub fn check_hensel(f: &[BigInt], p: u64, root: &BigInt, precision: u32) -> bool {
    let fr = eval_int(f, root);
    let dr = eval_int(&derivative_int(f), root);
    if dr.is_zero() {
        return false;
    }
    let vd = valuation(&dr, p);
    (fr.is_zero() || valuation(&fr, p) >= precision) && precision > 2 * vd
}

/// Residues `r mod p^k` with `p^k | F(r)`, lifted level by level until one
/// meets the Hensel condition.
fn hensel_search(f: &[BigInt], p: u64) -> Option<(BigInt, u32)> {
    let d = derivative_int(f);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut level: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|r| (eval_int(f, r) % &pb).is_zero())
        .collect();
    for k in 1..=HENSEL_MAX_PRECISION {
        for r in &level {
            let fr = eval_int(f, r);
            let dr = eval_int(&d, r);
            if dr.is_zero() {
                continue;
            }
            let vd = valuation(&dr, p);
            let vf = if fr.is_zero() { u32::MAX } else { valuation(&fr, p) };
            if vf > 2 * vd {
                return Some((r.clone(), (2 * vd + 1).max(k)));
            }
        }
        let next_modulus = &modulus * &pb;
        let mut next = Vec::new();
        for r in &level {
            for j in 0..p {
                let c = r + &modulus * BigInt::from(j);
                if (eval_int(f, &c) % &next_modulus).is_zero() {
                    next.push(c);
                }
            }
            if next.len() > HENSEL_MAX_CANDIDATES {
                return None;
            }
        }
        if next.is_empty() {
            return None;
        }
        level = next;
        modulus = next_modulus;
    }
    None
}

fn hensel_witness(factor: &Poly, p: u64) -> Option<PoleWitness> {
    for reversed in [false, true] {
        let g = if reversed { factor.reversed() } else { factor.clone() };
        let ints = primitive_integer_coeffs(&g);
        if let Some((root, precision)) = hensel_search(&ints, p) {
            return Some(PoleWitness::Hensel {
                factor: ints,
                reversed,
                root,
                precision,
            });
        }
    }
    None
}

/// Squarefree factors of the denominator with their rational roots divided out.
fn irrational_parts(den: &Poly) -> Vec<Poly> {
    den.squarefree_decomposition()
        .into_iter()
        .map(|(mut a, _)| {
            for r in rational_roots(&a) {
                a = a.exact_div(&Poly::linear_root(r));
            }
            a
        })
        .filter(|a| a.deg() > 0)
        .collect()
}

/// Whether `f` has a pole in `ℚ_pP¹`. Decided when every irrational factor
/// of the denominator is quadratic; otherwise a Hensel search either finds a
/// root or the answer is `Unknown`.
pub fn padic_pole_exists(f: &RatFunc, p: u64) -> Result<PadicPole> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if infinity_order(f).is_some() {
        return Ok(PadicPole::Yes(PoleWitness::Infinity));
    }
    if let Some(r) = rational_roots(f.denominator()).into_iter().next() {
        return Ok(PadicPole::Yes(PoleWitness::RationalRoot(r)));
    }
    let mut unknown = false;
    for a in irrational_parts(f.denominator()) {
        if a.deg() == 2 {
            let disc = quadratic_discriminant(&a);
            if is_square_in_qp(&disc, p) {
                let w = hensel_witness(&a, p).unwrap_or(PoleWitness::SquareDiscriminant(disc));
                return Ok(PadicPole::Yes(w));
            }
        } else if let Some(w) = hensel_witness(&a, p) {
            return Ok(PadicPole::Yes(w));
        } else {
            unknown = true;
        }
    }
    Ok(if unknown { PadicPole::Unknown } else { PadicPole::No })
}

/// Smallest odd prime `p ≤ bound`, prime to `D`, with `(D | p) = −1`.
pub fn inert_prime_witness(d: &Rational, bound: u64) -> Result<u64> {
    if d.is_zero() || is_rational_square(d) {
        return Err(Error::SquareDiscriminant(d.to_string()));
    }
    primes_up_to(bound)
        .into_iter()
        .skip(1)
        .filter(|&p| {
            let pb = BigInt::from(p);
            !(d.numer() % &pb).is_zero() && !(d.denom() % &pb).is_zero()
        })
        .find(|&p| legendre_rational(d, p) == -1)
        .ok_or(Error::NotFound(bound))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Impossible,
    NecessaryConditionsPass,
    Unknown,
}

impl fmt::Display for Feasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Feasibility::Impossible => "Impossible",
            Feasibility::NecessaryConditionsPass => "NecessaryConditionsPass",
            Feasibility::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    pub wp_verdict: Feasibility,
    pub ewp_verdict: Feasibility,
    /// Every obstruction found; [`ObstructionKind::refutes_ewp`] tells which
    /// verdict each one supports (all of them refute WP).
    pub witnesses: Vec<Obstruction>,
    pub profile: PoleProfile,
    /// Primes at which the p-adic analysis ran, in order.
    pub primes_tested: Vec<u64>,
}

impl ObstructionReport {
    pub fn wp_witnesses(&self) -> impl Iterator<Item = &Obstruction> {
        self.witnesses.iter()
    }

    pub fn ewp_witnesses(&self) -> impl Iterator<Item = &Obstruction> {
        self.witnesses.iter().filter(|w| w.kind.refutes_ewp())
    }

    fn line<'a>(verdict: Feasibility, witnesses: impl Iterator<Item = &'a Obstruction>) -> String {
        let reasons: Vec<String> = witnesses.map(Obstruction::describe).collect();
        if verdict == Feasibility::Impossible && !reasons.is_empty() {
            format!("{verdict} ({})", reasons.join("; "))
        } else {
            verdict.to_string()
        }
    }

    pub fn describe_wp(&self) -> String {
        Self::line(self.wp_verdict, self.wp_witnesses())
    }

    pub fn describe_ewp(&self) -> String {
        Self::line(self.ewp_verdict, self.ewp_witnesses())
    }

    /// One obstruction certificate per witness.
    pub fn certificates(&self, f: &RatFunc) -> Vec<Certificate> {
        self.witnesses
            .iter()
            .map(|w| Certificate::obstruction(f, w.clone()))
            .collect()
    }
}

/// Primes for the p-adic test: odd primes up to 100, then 2, then the inert
/// prime of each quadratic factor when it lies beyond that range.
fn primes_to_test(f: &RatFunc) -> Vec<u64> {
    let mut primes: Vec<u64> = primes_up_to(TESTED_PRIME_BOUND).into_iter().skip(1).collect();
    primes.push(2);
    for a in irrational_parts(f.denominator()) {
        if a.deg() == 2 {
            if let Ok(p) = inert_prime_witness(&quadratic_discriminant(&a), DEFAULT_PRIME_BOUND) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes
}

pub fn obstruction_report(f: &RatFunc) -> ObstructionReport {
    let profile = pole_profile(f);
    let mut witnesses = Vec::new();
    let mut wp = Feasibility::NecessaryConditionsPass;
    let mut ewp = Feasibility::NecessaryConditionsPass;

    if profile.real_pole_count < 2 && !profile.has_odd_order_real_pole {
        wp = Feasibility::Impossible;
        witnesses.push(Obstruction::new(ObstructionKind::PoleProfile));
    }
    if profile.real_pole_count == 0 {
        ewp = Feasibility::Impossible;
        witnesses.push(Obstruction::new(ObstructionKind::NoRealPole));
    }

    let primes = primes_to_test(f);
    let mut primes_tested = Vec::new();
    let mut padic_unknown = false;
    for &p in &primes {
        primes_tested.push(p);
        match padic_pole_exists(f, p).expect("tested primes are prime") {
            PadicPole::Yes(_) => {}
            PadicPole::Unknown => padic_unknown = true,
            PadicPole::No => {
                let disc = irrational_parts(f.denominator())
                    .first()
                    .map(quadratic_discriminant);
                if let Some(d) = disc {
                    ewp = Feasibility::Impossible;
                    witnesses.push(Obstruction::padic(p, d));
                }
                break;
            }
        }
    }

    if ewp == Feasibility::Impossible {
        wp = Feasibility::Impossible;
    } else if padic_unknown {
        ewp = Feasibility::Unknown;
        if wp != Feasibility::Impossible {
            wp = Feasibility::Unknown;
        }
    }
    ObstructionReport {
        wp_verdict: wp,
        ewp_verdict: ewp,
        witnesses,
        profile,
        primes_tested,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_function, rat, verify_certificate};

    fn f(s: &str) -> RatFunc {
        parse_function(s).unwrap()
    }

    #[test]
    fn rational_profiles() {
        let poles = rational_pole_profile(&f("(x^2+1)/(x^2-4)"));
        let locs: Vec<_> = poles.iter().map(|p| (p.location.clone(), p.order)).collect();
        assert_eq!(
            locs,
            vec![(PoleLocation::Finite(rat(-2)), 1), (PoleLocation::Finite(rat(2)), 1)]
        );
        assert_eq!(
            rational_pole_profile(&f("x^3")),
            vec![Pole { location: PoleLocation::Infinity, order: 3 }]
        );
        assert_eq!(
            rational_pole_profile(&f("1/x^2")),
            vec![Pole { location: PoleLocation::Finite(rat(0)), order: 2 }]
        );
    }

    #[test]
    fn real_profiles() {
        assert_eq!(real_pole_profile(&f("1/(x^2+1)")), (0, false));
        assert_eq!(real_pole_profile(&f("1/(x^2-2)")), (2, true));
        assert_eq!(real_pole_profile(&f("x^3")), (1, true));
        assert_eq!(real_pole_profile(&f("x^2")), (1, false));
        assert_eq!(real_pole_profile(&f("1/(x^2-2)^2")), (2, false));
    }

    #[test]
    fn padic_examples() {
        let g = f("1/(x^2+1)");
        assert_eq!(padic_pole_exists(&g, 3).unwrap(), PadicPole::No);
        match padic_pole_exists(&g, 5).unwrap() {
            PadicPole::Yes(PoleWitness::Hensel { factor, root, precision, .. }) => {
                assert!(check_hensel(&factor, 5, &root, precision));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(padic_pole_exists(&f("x^3"), 7).unwrap(), PadicPole::Yes(PoleWitness::Infinity));
        assert_eq!(padic_pole_exists(&g, 4), Err(Error::InvalidPrime(4)));
        // 2 is a square in Q_7 (3^2 = 9 ≡ 2) but not in Q_3 or Q_5.
        let h = f("1/(x^2-2)");
        assert!(matches!(padic_pole_exists(&h, 7).unwrap(), PadicPole::Yes(_)));
        assert_eq!(padic_pole_exists(&h, 5).unwrap(), PadicPole::No);
        // -7 is a square in Q_2, with the root of non-unit valuation data.
        assert!(matches!(padic_pole_exists(&f("1/(x^2+7)"), 2).unwrap(), PadicPole::Yes(_)));
        // x^2 + 1/9: root 1/(3i) needs the reversed factor at p = 5.
        assert!(matches!(padic_pole_exists(&f("1/(9*x^2+1)"), 5).unwrap(), PadicPole::Yes(_)));
        // Irreducible cubic: x^3 - 2 has a root mod 5 that lifts.
        assert!(matches!(padic_pole_exists(&f("1/(x^3-2)"), 5).unwrap(), PadicPole::Yes(_)));
        assert_eq!(padic_pole_exists(&f("1/(x^3-2)"), 7).unwrap(), PadicPole::Unknown);
    }

    #[test]
    fn inert_primes() {
        assert_eq!(inert_prime_witness(&rat(-4), DEFAULT_PRIME_BOUND), Ok(3));
        assert_eq!(inert_prime_witness(&rat(8), DEFAULT_PRIME_BOUND), Ok(3));
        assert!(matches!(inert_prime_witness(&rat(9), DEFAULT_PRIME_BOUND), Err(Error::SquareDiscriminant(_))));
        assert_eq!(inert_prime_witness(&rat(-3), DEFAULT_PRIME_BOUND), Ok(5));
        assert_eq!(inert_prime_witness(&rat(-4), 2), Err(Error::NotFound(2)));
    }

    #[test]
    fn reports() {
        let r = obstruction_report(&f("x^2"));
        assert_eq!(r.wp_verdict, Feasibility::Impossible);
        assert_eq!(r.ewp_verdict, Feasibility::NecessaryConditionsPass);

        let g = f("1/(x^2+1)");
        let r = obstruction_report(&g);
        assert_eq!(r.ewp_verdict, Feasibility::Impossible);
        assert_eq!(r.describe_ewp(), "Impossible (no real pole; p=3 inert)");
        for c in r.certificates(&g) {
            assert!(verify_certificate(&c).is_verified(), "{c:?}");
        }

        let r = obstruction_report(&f("x^3"));
        assert_eq!(r.wp_verdict, Feasibility::NecessaryConditionsPass);
        assert_eq!(r.ewp_verdict, Feasibility::NecessaryConditionsPass);

        let h = f("1/(x^2-2)");
        let r = obstruction_report(&h);
        assert_eq!(r.ewp_verdict, Feasibility::Impossible);
        assert_eq!(r.wp_verdict, Feasibility::Impossible);
        assert!(r.witnesses.iter().any(|w| w.prime == Some(3)));
        for c in r.certificates(&h) {
            assert!(verify_certificate(&c).is_verified(), "{c:?}");
        }

        // x^3 = 2 has no root in Q_3 and the cubic is not decided.
        let r = obstruction_report(&f("1/(x^3-2)"));
        assert_eq!(r.ewp_verdict, Feasibility::Unknown);
        let r = obstruction_report(&f("x/(x^2-4)"));
        assert_eq!(r.ewp_verdict, Feasibility::NecessaryConditionsPass);
    }
}
