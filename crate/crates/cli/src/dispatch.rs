//! Choosing a solver for `represent`.

use waring::deg2::{self, Deg2Case};
use waring::engine::Engine;
use waring::poles::{obstruction_report, Feasibility, ObstructionReport};
use waring::polysolve::wp_search_poly;
use waring::{laurent_of, Certificate, Error, Laurent, Mode, RatFunc, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    Auto,
    Wp,
    Ewp,
    Positive,
}

pub struct Request<'a> {
    pub f: &'a RatFunc,
    pub target: &'a Rational,
    pub seed: u64,
    pub budget: u64,
}

pub enum Outcome {
    Represented(Certificate),
    /// No representation; the certificates witness why.
    Obstructed(Vec<Certificate>),
    NotFound(String),
}

fn laurent(f: &RatFunc) -> Option<Laurent> {
    laurent_of(f).ok().filter(|l| !l.is_constant())
}

fn deg2_case(f: &RatFunc) -> Option<Deg2Case> {
    deg2::classify_deg2(f).ok().map(|c| c.case)
}

fn poly_degree(f: &RatFunc) -> Option<usize> {
    f.is_polynomial().then(|| f.numerator().deg())
}

fn poly_search(req: &Request, mode: Mode) -> Result<Option<Certificate>, Error> {
    let found = wp_search_poly(req.f.numerator(), req.target, req.budget, req.seed)?;
    Ok(found.map(|mut c| {
        c.mode = mode;
        c
    }))
}

/// `Ok(None)` when no method applies to this function in this mode.
fn try_mode(req: &Request, mode: ModeArg) -> Result<Option<Certificate>, Error> {
    let f = req.f;
    let t = req.target;
    match mode {
        ModeArg::Wp => {
            if let Some(l) = laurent(f).filter(Laurent::is_odd) {
                return Engine::new().wp_represent_odd(&l, t).map(Some);
            }
            if deg2_case(f) == Some(Deg2Case::TwoRationalPoles) {
                return deg2::case_a_wp_rep(f, t).map(Some);
            }
            match poly_degree(f) {
                Some(d) if d >= 3 && d % 2 == 1 => poly_search(req, Mode::Wp),
                _ => Ok(None),
            }
        }
        ModeArg::Positive => {
            if deg2_case(f) == Some(Deg2Case::OneRationalDoublePole) {
                return match deg2::case_b_positive_rep(f, t) {
                    Err(Error::OutOfRange { .. }) => Ok(None),
                    other => other.map(Some),
                };
            }
            match poly_degree(f) {
                Some(d) if d >= 3 && d % 2 == 0 => poly_search(req, Mode::Positive),
                _ => Ok(None),
            }
        }
        ModeArg::Ewp => {
            if let Some(l) = laurent(f) {
                return Engine::new().ewp_represent(&l, t).map(Some);
            }
            match deg2_case(f) {
                Some(Deg2Case::TwoRationalPoles) => deg2::case_a_ewp_rep(f, t).map(Some),
                Some(Deg2Case::OneRationalDoublePole) => deg2::case_b_ewp_rep(f, t).map(Some),
                _ => Ok(None),
            }
        }
        ModeArg::Auto => unreachable!("auto is expanded by the caller"),
    }
}

/// The analyzer says nothing about positive bases, so that mode is never
/// ruled out in advance.
fn ruled_out(report: &ObstructionReport, mode: ModeArg) -> bool {
    match mode {
        ModeArg::Ewp => report.ewp_verdict == Feasibility::Impossible,
        ModeArg::Wp => report.wp_verdict == Feasibility::Impossible,
        _ => false,
    }
}

/// Obstruction certificates relevant to `mode`, degree-2 witnesses first.
fn obstructions(f: &RatFunc, report: &ObstructionReport, mode: ModeArg) -> Vec<Certificate> {
    let mut certs = Vec::new();
    match deg2_case(f) {
        Some(Deg2Case::OneRationalDoublePole) if mode != ModeArg::Ewp => {
            certs.extend(deg2::case_b_obstruction(f));
        }
        Some(Deg2Case::NoRationalPole) => {
            if let Ok(w) = deg2::case_c_obstruction(f) {
                certs.extend(w.certificates());
            }
        }
        _ => {}
    }
    if certs.is_empty() {
        certs = report
            .witnesses
            .iter()
            .filter(|w| mode != ModeArg::Ewp || w.kind.refutes_ewp())
            .map(|w| Certificate::obstruction(f, w.clone()))
            .collect();
    }
    certs
}

pub fn represent(req: &Request, mode: ModeArg) -> Result<Outcome, Error> {
    let report = obstruction_report(req.f);
    let order: &[ModeArg] = match mode {
        ModeArg::Auto => &[ModeArg::Wp, ModeArg::Positive, ModeArg::Ewp],
        ModeArg::Wp => &[ModeArg::Wp],
        ModeArg::Positive => &[ModeArg::Positive],
        ModeArg::Ewp => &[ModeArg::Ewp],
    };
    let mut exhausted = None;
    for &m in order {
        if ruled_out(&report, m) {
            continue;
        }
        match try_mode(req, m) {
            Ok(Some(cert)) => return Ok(Outcome::Represented(cert)),
            Ok(None) => {}
            Err(e @ Error::SearchExhausted(_)) => exhausted = Some(e),
            Err(e) => return Err(e),
        }
    }
    let last = *order.last().expect("nonempty");
    if ruled_out(&report, last) {
        let certs = obstructions(req.f, &report, last);
        if !certs.is_empty() {
            return Ok(Outcome::Obstructed(certs));
        }
    }
    if let Some(e) = exhausted {
        return Err(e);
    }
    if mode == ModeArg::Positive && deg2_case(req.f) == Some(Deg2Case::OneRationalDoublePole) {
        // Out of range: the one-sided bound explains why.
        return Ok(Outcome::Obstructed(deg2::case_b_obstruction(req.f).into_iter().collect()));
    }
    Ok(Outcome::NotFound(match poly_degree(req.f) {
        Some(d) if d >= 3 => "not found within budget".to_string(),
        _ => "no applicable method for this function and mode".to_string(),
    }))
}
