//! Certificates and the independent verifier.
//!
//! A certificate is either a representation (`wp`, `positive`, `ewp`) listing
//! signed evaluation points, or an `obstruction` carrying one witness. The
//! verifier re-derives everything from the function text with exact
//! arithmetic; it never trusts a number it could recompute.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{euler_criterion, is_prime, is_square_in_qp};
use crate::parse::{format_function, parse_function};
use crate::roots::{count_real_roots, rational_roots};
use crate::{Poly, RatFunc, Rational};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Unsigned sum: evidence towards `f(ℚ)` being a base.
    Wp,
    /// Balanced signed sum: evidence towards a virtual base.
    Ewp,
    /// Unsigned sum in the one-sided (positive/negative base) regime.
    Positive,
    Obstruction,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Wp => "wp",
            Mode::Ewp => "ewp",
            Mode::Positive => "positive",
            Mode::Obstruction => "obstruction",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    /// `f ≥ bound` on ℝ; rules out WP.
    RealBoundedBelow,
    /// `f ≤ bound` on ℝ; rules out WP.
    RealBoundedAbove,
    /// No pole on ℝP¹, so `f(ℝ)` is bounded; rules out EWP.
    RealBounded,
    /// Same check as `RealBounded`, reported by the analyzer.
    NoRealPole,
    /// No pole on `ℚ_p P¹`, so `f(ℚ_p)` is bounded; rules out EWP.
    PadicBounded,
    /// Neither two distinct real poles nor an odd-order real pole; rules out WP.
    PoleProfile,
}

impl ObstructionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionKind::RealBoundedBelow => "real-bounded-below",
            ObstructionKind::RealBoundedAbove => "real-bounded-above",
            ObstructionKind::RealBounded => "real-bounded",
            ObstructionKind::NoRealPole => "no-real-pole",
            ObstructionKind::PadicBounded => "padic-bounded",
            ObstructionKind::PoleProfile => "pole-profile",
        }
    }

    /// Whether the witness refutes the signed (EWP) problem as well as WP.
    pub fn refutes_ewp(&self) -> bool {
        matches!(
            self,
            ObstructionKind::RealBounded | ObstructionKind::NoRealPole | ObstructionKind::PadicBounded
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::serde_rational::option"
    )]
    pub discriminant: Option<Rational>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::serde_rational::option"
    )]
    pub bound: Option<Rational>,
}

impl Obstruction {
    pub fn new(kind: ObstructionKind) -> Self {
        Obstruction {
            kind,
            prime: None,
            discriminant: None,
            bound: None,
        }
    }

    pub fn padic(prime: u64, discriminant: Rational) -> Self {
        Obstruction {
            prime: Some(prime),
            discriminant: Some(discriminant),
            ..Self::new(ObstructionKind::PadicBounded)
        }
    }

    pub fn bounded(kind: ObstructionKind, bound: Rational) -> Self {
        Obstruction {
            bound: Some(bound),
            ..Self::new(kind)
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self.kind {
            ObstructionKind::RealBoundedBelow => {
                format!("bounded below by {}", opt(&self.bound))
            }
            ObstructionKind::RealBoundedAbove => {
                format!("bounded above by {}", opt(&self.bound))
            }
            ObstructionKind::RealBounded => "bounded on the reals".to_string(),
            ObstructionKind::NoRealPole => "no real pole".to_string(),
            ObstructionKind::PadicBounded => match self.prime {
                Some(p) => format!("p={p} inert"),
                None => "p-adically bounded".to_string(),
            },
            ObstructionKind::PoleProfile => {
                "no two distinct real poles and no odd-order real pole".to_string()
            }
        }
    }
}

fn opt(q: &Option<Rational>) -> String {
    q.as_ref().map_or_else(|| "?".to_string(), |q| q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub sign: i8,
    #[serde(with = "crate::serde_rational")]
    pub x: Rational,
}

impl Term {
    pub fn plus(x: Rational) -> Self {
        Term { sign: 1, x }
    }

    pub fn minus(x: Rational) -> Self {
        Term { sign: -1, x }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub function: String,
    pub mode: Mode,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::serde_rational::option"
    )]
    pub target: Option<Rational>,
    #[serde(default)]
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
    pub engine_n: u64,
}

impl Certificate {
    pub fn representation(
        f: &RatFunc,
        mode: Mode,
        target: Rational,
        terms: Vec<Term>,
        engine_n: u64,
    ) -> Self {
        Certificate {
            version: CERTIFICATE_VERSION,
            function: format_function(f),
            mode,
            target: Some(target),
            terms,
            obstruction: None,
            engine_n,
        }
    }

    /// Unsigned representation over the given points.
    pub fn unsigned(f: &RatFunc, mode: Mode, target: Rational, points: Vec<Rational>) -> Self {
        let n = points.len() as u64;
        Self::representation(f, mode, target, points.into_iter().map(Term::plus).collect(), n)
    }

    pub fn obstruction(f: &RatFunc, obstruction: Obstruction) -> Self {
        Certificate {
            version: CERTIFICATE_VERSION,
            function: format_function(f),
            mode: Mode::Obstruction,
            target: None,
            terms: Vec::new(),
            obstruction: Some(obstruction),
            engine_n: 0,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = &Rational> {
        self.terms.iter().map(|t| &t.x)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    /// The first failing check.
    Refuted(String),
    MalformedCertificate(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified)
    }
}

/// Parse-and-verify for raw JSON; undecodable input is malformed.
pub fn verify_json(s: &str) -> Verdict {
    match Certificate::from_json(s) {
        Ok(c) => verify_certificate(&c),
        Err(e) => Verdict::MalformedCertificate(e.to_string()),
    }
}

pub fn verify_certificate(cert: &Certificate) -> Verdict {
    if cert.version != CERTIFICATE_VERSION {
        return Verdict::MalformedCertificate(format!("unsupported version {}", cert.version));
    }
    let f = match parse_function(&cert.function) {
        Ok(f) => f,
        Err(e) => return Verdict::MalformedCertificate(format!("function: {e}")),
    };
    let outcome = match cert.mode {
        Mode::Obstruction => check_obstruction(cert, &f),
        _ => check_representation(cert, &f),
    };
    match outcome {
        Ok(()) => Verdict::Verified,
        Err(v) => v,
    }
}

fn refuted<T>(msg: impl Into<String>) -> Result<T, Verdict> {
    Err(Verdict::Refuted(msg.into()))
}

fn malformed<T>(msg: impl Into<String>) -> Result<T, Verdict> {
    Err(Verdict::MalformedCertificate(msg.into()))
}

fn check_representation(cert: &Certificate, f: &RatFunc) -> Result<(), Verdict> {
    let Some(target) = &cert.target else {
        return malformed("representation without a target");
    };
    if cert.obstruction.is_some() {
        return malformed("representation carries an obstruction");
    }
    if cert.terms.is_empty() {
        return malformed("representation has no terms");
    }
    if let Some(t) = cert.terms.iter().find(|t| t.sign != 1 && t.sign != -1) {
        return malformed(format!("sign {} is not ±1", t.sign));
    }
    let plus = cert.terms.iter().filter(|t| t.sign == 1).count();
    let minus = cert.terms.len() - plus;
    match cert.mode {
        Mode::Wp | Mode::Positive => {
            if minus > 0 {
                return refuted(format!("{} mode has {minus} negative terms", cert.mode.as_str()));
            }
            if cert.engine_n != cert.terms.len() as u64 {
                return refuted(format!(
                    "engine_n {} does not match {} terms",
                    cert.engine_n,
                    cert.terms.len()
                ));
            }
        }
        Mode::Ewp => {
            if plus != minus {
                return refuted(format!("unbalanced: {plus} plus vs {minus} minus terms"));
            }
            if cert.engine_n != plus as u64 {
                return refuted(format!(
                    "engine_n {} does not match {plus} terms per sign",
                    cert.engine_n
                ));
            }
        }
        Mode::Obstruction => unreachable!(),
    }
    let mut sum = Rational::zero();
    for (i, t) in cert.terms.iter().enumerate() {
        let Ok(v) = f.eval(&t.x) else {
            return refuted(format!("term {i}: x = {} is a pole", t.x));
        };
        if t.sign == 1 {
            sum += v;
        } else {
            sum -= v;
        }
    }
    if &sum != target {
        return refuted(format!("terms sum to {sum}, not {target}"));
    }
    Ok(())
}

fn check_obstruction(cert: &Certificate, f: &RatFunc) -> Result<(), Verdict> {
    if cert.target.is_some() {
        return malformed("obstruction with a target");
    }
    if !cert.terms.is_empty() {
        return malformed("obstruction with terms");
    }
    let Some(ob) = &cert.obstruction else {
        return malformed("obstruction mode without a witness");
    };
    if cert.engine_n != 0 {
        return refuted("obstruction certificates have engine_n 0");
    }
    let (num, den) = (f.numerator(), f.denominator());
    match ob.kind {
        ObstructionKind::RealBoundedBelow | ObstructionKind::RealBoundedAbove => {
            let Some(b) = &ob.bound else {
                return malformed("bounded witness without a bound");
            };
            // f - b = (P - bQ)/Q has the sign of (P - bQ)·Q wherever defined.
            let mut r = &(num - &den.scale(b)) * den;
            if ob.kind == ObstructionKind::RealBoundedAbove {
                r = -&r;
            }
            if !nonnegative_on_reals(&r) {
                return refuted(format!("{} fails", ob.describe()));
            }
        }
        ObstructionKind::RealBounded | ObstructionKind::NoRealPole => {
            if num.deg() > den.deg() {
                return refuted("pole at infinity");
            }
            if count_real_roots(den) > 0 {
                return refuted("denominator has a real root");
            }
        }
        ObstructionKind::PadicBounded => check_padic(ob, f)?,
        ObstructionKind::PoleProfile => {
            let (distinct, odd) = real_pole_summary(f);
            if distinct >= 2 || odd {
                return refuted(format!(
                    "{distinct} distinct real poles, odd-order pole present: {odd}"
                ));
            }
        }
    }
    Ok(())
}

fn check_padic(ob: &Obstruction, f: &RatFunc) -> Result<(), Verdict> {
    let (Some(p), Some(d)) = (ob.prime, &ob.discriminant) else {
        return malformed("p-adic witness needs a prime and a discriminant");
    };
    if !is_prime(p) {
        return refuted(format!("{p} is not prime"));
    }
    let (num, den) = (f.numerator(), f.denominator());
    if num.deg() > den.deg() {
        return refuted("pole at infinity");
    }
    if !rational_roots(den).is_empty() {
        return refuted("denominator has a rational root");
    }
    let mut matched = false;
    for (factor, _) in den.squarefree_decomposition() {
        if factor.deg() != 2 {
            return refuted(format!("cannot certify a factor of degree {}", factor.deg()));
        }
        let disc = quadratic_discriminant(&factor);
        if !nonsquare_in_qp(&disc, p) {
            return refuted(format!("discriminant {disc} is a square in Q_{p}"));
        }
        matched |= &disc == d;
    }
    if !matched {
        return refuted(format!("{d} is not the discriminant of a denominator factor"));
    }
    Ok(())
}

/// Euler's criterion when `p` is odd and prime to `d`; the valuation test
/// otherwise.
fn nonsquare_in_qp(d: &Rational, p: u64) -> bool {
    let unit = d.numer() * d.denom();
    if p != 2 && euler_criterion(&unit, p) != 0 {
        return euler_criterion(&unit, p) == -1;
    }
    !is_square_in_qp(d, p)
}

/// `b² − 4ac` of a quadratic.
pub fn quadratic_discriminant(q: &Poly) -> Rational {
    let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
    &b * &b - Rational::from_integer(4.into()) * a * c
}

/// Distinct real poles on ℝP¹ and whether one of them has odd order.
pub(crate) fn real_pole_summary(f: &RatFunc) -> (usize, bool) {
    let (num, den) = (f.numerator(), f.denominator());
    let mut distinct = count_real_roots(den);
    let mut odd = den
        .squarefree_decomposition()
        .iter()
        .any(|(a, m)| m % 2 == 1 && count_real_roots(a) > 0);
    if num.deg() > den.deg() {
        distinct += 1;
        odd |= (num.deg() - den.deg()) % 2 == 1;
    }
    (distinct, odd)
}

/// `r(x) ≥ 0` for every real `x`.
fn nonnegative_on_reals(r: &Poly) -> bool {
    let Some(lc) = r.leading() else {
        return true;
    };
    if lc.is_negative() {
        return false;
    }
    // No sign change iff every real root has even multiplicity.
    r.squarefree_decomposition()
        .iter()
        .all(|(a, m)| m % 2 == 0 || count_real_roots(a) == 0)
}
