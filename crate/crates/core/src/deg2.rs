//! Degree-2 rational functions: classification by rational poles and the
//! matching certificate for each case.
//!
//! * Two rational poles: a Möbius `g` moves them to 0 and ∞, giving
//!   `f∘g = ax + b + c/x`; the odd part `ax + c/x` is handled by sign
//!   absorption, so WP holds.
//! * One rational double pole: `f∘g = ax² + bx + c`, one-sided with extreme
//!   value `d0 = c − b²/4a`. Positive (or negative) representations use four
//!   squares; signed ones a two-term difference.
//! * No rational pole: the denominator's discriminant `D` is not a square,
//!   and a prime where `D` is a non-residue bounds `f(ℚ_p)`.

use num_traits::{Signed, Zero};

use crate::certificate::{quadratic_discriminant, Certificate, Mode, Obstruction, ObstructionKind, Term};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::foursquare::four_squares_rat;
use crate::poles::{inert_prime_witness, rational_pole_profile, PoleLocation, DEFAULT_PRIME_BOUND};
use crate::roots::count_real_roots;
use crate::{rat, Laurent, Mobius, RatFunc, Rational};

/// Engine restarts allowed when a point lands on an excluded value.
pub const COLLISION_RETRIES: u32 = 64;
const FIXPOINT_ITERATIONS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Deg2Case {
    TwoRationalPoles,
    OneRationalDoublePole,
    NoRationalPole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `f∘g = ax + b + c/x`
    TwoPoles { a: Rational, b: Rational, c: Rational },
    /// `f∘g = ax² + bx + c`, extreme value `d0`.
    DoublePole {
        a: Rational,
        b: Rational,
        c: Rational,
        d0: Rational,
    },
    /// Discriminant of the (monic) denominator.
    NoPole { discriminant: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deg2Class {
    pub case: Deg2Case,
    /// Identity in the no-pole case.
    pub normalization: Mobius,
    pub normal_form: NormalForm,
}

pub fn classify_deg2(f: &RatFunc) -> Result<Deg2Class> {
    if f.degree() != 2 {
        return Err(Error::WrongDegree(f.degree()));
    }
    let poles = rational_pole_profile(f);
    match poles.len() {
        2 => {
            let (g, a, b, c) = two_pole_form(f, &poles[0].location, &poles[1].location)?;
            Ok(Deg2Class {
                case: Deg2Case::TwoRationalPoles,
                normalization: g,
                normal_form: NormalForm::TwoPoles { a, b, c },
            })
        }
        1 => {
            let (g, a, b, c) = double_pole_form(f, &poles[0].location)?;
            let d0 = &c - &b * &b / (rat(4) * &a);
            Ok(Deg2Class {
                case: Deg2Case::OneRationalDoublePole,
                normalization: g,
                normal_form: NormalForm::DoublePole { a, b, c, d0 },
            })
        }
        _ => Ok(Deg2Class {
            case: Deg2Case::NoRationalPole,
            normalization: Mobius::identity(),
            normal_form: NormalForm::NoPole {
                discriminant: quadratic_discriminant(f.denominator()),
            },
        }),
    }
}

fn wrong_case(expected: &str) -> Error {
    Error::WrongCase(format!("expected {expected}"))
}

/// `g` with `g(0) = first`, `g(∞) = second`, and the coefficients of `f∘g`.
fn two_pole_form(
    f: &RatFunc,
    first: &PoleLocation,
    second: &PoleLocation,
) -> Result<(Mobius, Rational, Rational, Rational)> {
    let g = match (first, second) {
        (PoleLocation::Finite(p1), PoleLocation::Finite(p2)) => {
            Mobius::new(p2.clone(), p1.clone(), rat(1), rat(1))?
        }
        (PoleLocation::Finite(p1), PoleLocation::Infinity) => Mobius::translation(p1.clone()),
        _ => return Err(wrong_case("two distinct poles")),
    };
    let h = f.compose_mobius(&g);
    let (num, den) = (h.numerator(), h.denominator());
    if den != &crate::Poly::x() || num.deg() > 2 {
        return Err(wrong_case("a form ax + b + c/x after normalization"));
    }
    let (a, b, c) = (num.coeff(2), num.coeff(1), num.coeff(0));
    if a.is_zero() || c.is_zero() {
        return Err(wrong_case("two simple poles"));
    }
    Ok((g, a, b, c))
}

/// `g` sending ∞ to the double pole, and the coefficients of `f∘g`.
fn double_pole_form(f: &RatFunc, pole: &PoleLocation) -> Result<(Mobius, Rational, Rational, Rational)> {
    let g = match pole {
        PoleLocation::Infinity => Mobius::identity(),
        PoleLocation::Finite(p) => Mobius::new(p.clone(), rat(1), rat(1), rat(0))?,
    };
    let h = f.compose_mobius(&g);
    let num = h.numerator();
    if !h.denominator().is_one() || num.deg() != 2 {
        return Err(wrong_case("a double pole"));
    }
    Ok((g, num.coeff(2), num.coeff(1), num.coeff(0)))
}

/// Normalizing transform and `(a, b, c)` with `f∘g = ax + b + c/x`.
pub fn normalize_two_poles(f: &RatFunc) -> Result<(Mobius, Rational, Rational, Rational)> {
    let class = classify_deg2(f)?;
    match class.normal_form {
        NormalForm::TwoPoles { a, b, c } => Ok((class.normalization, a, b, c)),
        _ => Err(wrong_case("two rational poles")),
    }
}

fn double_pole_class(f: &RatFunc) -> Result<(Mobius, Rational, Rational, Rational, Rational)> {
    let class = classify_deg2(f)?;
    match class.normal_form {
        NormalForm::DoublePole { a, b, c, d0 } => Ok((class.normalization, a, b, c, d0)),
        _ => Err(wrong_case("one rational double pole")),
    }
}

/// Unsigned certificate for a function with two rational poles.
///
/// The engine writes `target − N·b` with `ax + c/x`; `N` (the term count)
/// is found by iterating from a dry run, padding with pairs `w, −w` when
/// the engine returns fewer points than assumed.
pub fn case_a_wp_rep(f: &RatFunc, target: &Rational) -> Result<Certificate> {
    let (g, a, b, c) = normalize_two_poles(f)?;
    let h = Laurent::new([(1, a), (-1, c)]);
    'shift: for shift in 1..=COLLISION_RETRIES {
        let engine = Engine::with_first_shift(shift);
        let mut n = engine.odd_points(&h, &Rational::zero())?.len();
        for _ in 0..FIXPOINT_ITERATIONS {
            let mut xs = engine.odd_points(&h, &(target - rat(n as i64) * &b))?;
            if xs.len() > n {
                n = xs.len();
                continue;
            }
            let mut w = 2;
            while xs.len() < n {
                xs.push(rat(w));
                xs.push(rat(-w));
                w += 1;
            }
            let mut ys = Vec::with_capacity(xs.len());
            for x in &xs {
                match g.apply(x) {
                    Some(y) if f.eval(&y).is_ok() => ys.push(y),
                    _ => continue 'shift,
                }
            }
            return Ok(Certificate::unsigned(f, Mode::Wp, target.clone(), ys));
        }
    }
    Err(Error::SearchExhausted("no collision-free engine run".into()))
}

/// Balanced certificate for a function with two rational poles; the
/// constant `b` cancels between the two signs.
pub fn case_a_ewp_rep(f: &RatFunc, target: &Rational) -> Result<Certificate> {
    let (g, a, _, c) = normalize_two_poles(f)?;
    let h = Laurent::new([(1, a), (-1, c)]);
    let image = |xs: &[Rational]| -> Option<Vec<Rational>> {
        xs.iter().map(|x| g.apply(x).filter(|y| f.eval(y).is_ok())).collect()
    };
    for shift in 1..=COLLISION_RETRIES {
        let z = Engine::with_first_shift(shift).laurent_multiset(&h, target)?;
        if let (Some(plus), Some(minus)) = (image(z.plus()), image(z.minus())) {
            let n = plus.len() as u64;
            let terms = plus.into_iter().map(Term::plus).chain(minus.into_iter().map(Term::minus)).collect();
            return Ok(Certificate::representation(f, Mode::Ewp, target.clone(), terms, n));
        }
    }
    Err(Error::SearchExhausted("no collision-free engine run".into()))
}

/// Exactly four unsigned terms for a function with a rational double pole,
/// when `(target − 4·d0)/a ≥ 0`.
pub fn case_b_positive_rep(f: &RatFunc, target: &Rational) -> Result<Certificate> {
    let (g, a, b, _, d0) = double_pole_class(f)?;
    let four_d0 = rat(4) * &d0;
    let out_of_range = || Error::OutOfRange {
        target: target.to_string(),
        bound: four_d0.to_string(),
    };
    let t = (target - &four_d0) / &a;
    if t.is_negative() {
        return Err(out_of_range());
    }
    let vertex = -&b / (rat(2) * &a);
    // Scaling t by m² and dividing back gives other decompositions, used
    // when a component must avoid the point g sends to ∞.
    for m in 1..=COLLISION_RETRIES as i64 {
        let scaled = &t * rat(m * m);
        let us = four_squares_rat(&scaled).map(|u| u / rat(m));
        let mut ys = Vec::with_capacity(4);
        for u in &us {
            let y = [&vertex + u, &vertex - u]
                .iter()
                .find_map(|x| g.apply(x).filter(|y| f.eval(y).is_ok()));
            match y {
                Some(y) => ys.push(y),
                None => break,
            }
        }
        if ys.len() == 4 {
            return Ok(Certificate::unsigned(f, Mode::Positive, target.clone(), ys));
        }
    }
    Err(out_of_range())
}

/// Two-term signed certificate `f(y₁) − f(y₂) = target`.
pub fn case_b_ewp_rep(f: &RatFunc, target: &Rational) -> Result<Certificate> {
    let (g, a, b, _, _) = double_pole_class(f)?;
    for delta in 1..=COLLISION_RETRIES as i64 {
        let delta = rat(delta);
        // a(u² − v²) + b(u − v) = δ(a(u + v) + b)
        let sum = (target / &delta - &b) / &a;
        let u = (&sum + &delta) / rat(2);
        let v = (&sum - &delta) / rat(2);
        if let (Some(yu), Some(yv)) = (g.apply(&u), g.apply(&v)) {
            if f.eval(&yu).is_ok() && f.eval(&yv).is_ok() {
                let terms = vec![Term::plus(yu), Term::minus(yv)];
                return Ok(Certificate::representation(f, Mode::Ewp, target.clone(), terms, 1));
            }
        }
    }
    Err(Error::SearchExhausted("no collision-free difference".into()))
}

/// `f ≥ d0` (leading coefficient positive) or `f ≤ d0` on the reals.
pub fn case_b_obstruction(f: &RatFunc) -> Result<Certificate> {
    let (_, a, _, _, d0) = double_pole_class(f)?;
    let kind = if a.is_positive() {
        ObstructionKind::RealBoundedBelow
    } else {
        ObstructionKind::RealBoundedAbove
    };
    Ok(Certificate::obstruction(f, Obstruction::bounded(kind, d0)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseCWitnesses {
    pub padic: Certificate,
    /// Present when the denominator has no real root.
    pub real: Option<Certificate>,
}

impl CaseCWitnesses {
    pub fn certificates(&self) -> Vec<Certificate> {
        std::iter::once(self.padic.clone()).chain(self.real.clone()).collect()
    }
}

/// Inert-prime witness for a function without rational poles, plus a
/// real-boundedness witness when it has no real poles either.
pub fn case_c_obstruction(f: &RatFunc) -> Result<CaseCWitnesses> {
    let class = classify_deg2(f)?;
    let NormalForm::NoPole { discriminant } = class.normal_form else {
        return Err(wrong_case("no rational pole"));
    };
    let p = inert_prime_witness(&discriminant, DEFAULT_PRIME_BOUND)?;
    let padic = Certificate::obstruction(f, Obstruction::padic(p, discriminant));
    let real = (count_real_roots(f.denominator()) == 0)
        .then(|| Certificate::obstruction(f, Obstruction::new(ObstructionKind::RealBounded)));
    Ok(CaseCWitnesses { padic, real })
}

/// Whether `target` lies in the range covered by [`case_b_positive_rep`].
pub fn case_b_in_range(f: &RatFunc, target: &Rational) -> bool {
    match double_pole_class(f) {
        Ok((_, a, _, _, d0)) => !((target - rat(4) * d0) / a).is_negative(),
        Err(_) => false,
    }
}
