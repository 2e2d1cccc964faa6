mod dispatch;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use dispatch::{ModeArg, Outcome, Request};
use waring::certificate::verify_json;
use waring::corpus::{random_deg2, random_rational};
use waring::deg2::{self, Deg2Case, NormalForm};
use waring::foursquare::four_squares_rat;
use waring::poles::obstruction_report;
use waring::polysolve::{DEFAULT_BUDGET, DEFAULT_SEED};
use waring::{
    format_function, parse_function, parse_rational, verify_certificate, Certificate, Error, RatFunc,
    Rational, Verdict,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "waring", version, about = "Exact Waring-type certificates over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pole profile and necessary-condition verdicts.
    Analyze {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Write `target` as a sum of values of the function, or explain why not.
    Represent {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-check a certificate file.
    Verify { file: PathBuf },
    /// Classify and certify a random corpus.
    Scan {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Four rational squares summing to a non-negative rational.
    Foursquares {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
}

/// A failure with its exit code; the message goes to stderr.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchExhausted(_) => EXIT_INTERNAL,
            Error::Parse(_) | Error::WrongDegree(_) | Error::ConstantFunction => EXIT_USAGE,
            _ => EXIT_NEGATIVE,
        };
        Failure(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn parse_expr(text: &str) -> Result<RatFunc, Failure> {
    parse_function(text).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

fn parse_value(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| usage(format!("cannot parse {text:?}: {e}")))
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure(EXIT_INTERNAL, format!("cannot write {}: {e}", path.display()))),
        // A closed pipe (`| head`) is not an error worth reporting.
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(Failure(EXIT_INTERNAL, format!("cannot write output: {e}")))
            }
            _ => Ok(()),
        },
    }
}

fn case_name(case: Deg2Case) -> &'static str {
    match case {
        Deg2Case::TwoRationalPoles => "two rational poles",
        Deg2Case::OneRationalDoublePole => "one rational double pole",
        Deg2Case::NoRationalPole => "no rational pole",
    }
}

fn analyze(expr: &str, as_json: bool) -> Result<u8, Failure> {
    let f = parse_expr(expr)?;
    let report = obstruction_report(&f);
    let class = deg2::classify_deg2(&f).ok();
    let poles: Vec<String> = report
        .profile
        .rational_poles
        .iter()
        .map(|p| format!("{}:{}", p.location, p.order))
        .collect();
    if as_json {
        let witnesses: Vec<_> = report
            .witnesses
            .iter()
            .map(|w| serde_json::to_value(w).expect("obstructions serialize"))
            .collect();
        let value = json!({
            "function": format_function(&f),
            "wp": report.wp_verdict.to_string(),
            "ewp": report.ewp_verdict.to_string(),
            "witnesses": witnesses,
            "rational_poles": poles,
            "real_pole_count": report.profile.real_pole_count,
            "has_odd_order_real_pole": report.profile.has_odd_order_real_pole,
            "primes_tested": report.primes_tested,
            "degree2_case": class.as_ref().map(|c| case_name(c.case)),
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("json"));
        return Ok(EXIT_OK);
    }
    println!("function: {}", format_function(&f));
    println!("rational poles: {{{}}}", poles.join(", "));
    println!(
        "real poles: {} (odd order: {})",
        report.profile.real_pole_count,
        if report.profile.has_odd_order_real_pole { "yes" } else { "no" }
    );
    if let Some(c) = &class {
        let detail = match &c.normal_form {
            NormalForm::TwoPoles { a, b, c } => format!("f∘g = ({a})x + {b} + ({c})/x"),
            NormalForm::DoublePole { a, b, c, d0 } => {
                format!("f∘g = ({a})x² + ({b})x + {c}, d0 = {d0}")
            }
            NormalForm::NoPole { discriminant } => format!("D = {discriminant}"),
        };
        println!("degree 2: {} ({detail})", case_name(c.case));
    }
    println!("WP: {}", report.describe_wp());
    println!("EWP: {}", report.describe_ewp());
    Ok(EXIT_OK)
}

fn represent(
    expr: &str,
    target: &str,
    mode: ModeArg,
    seed: u64,
    budget: u64,
    output: Option<&PathBuf>,
) -> Result<u8, Failure> {
    let f = parse_expr(expr)?;
    let target = parse_value(target)?;
    let req = Request {
        f: &f,
        target: &target,
        seed,
        budget,
    };
    let (cert, code) = match dispatch::represent(&req, mode)? {
        Outcome::Represented(c) => (c, EXIT_OK),
        Outcome::Obstructed(mut certs) => {
            for extra in certs.iter().skip(1) {
                if let Some(o) = &extra.obstruction {
                    eprintln!("also: {}", o.describe());
                }
            }
            let first = certs.swap_remove(0);
            if let Some(o) = &first.obstruction {
                eprintln!("no representation: {}", o.describe());
            }
            (first, EXIT_NEGATIVE)
        }
        Outcome::NotFound(why) => return Err(Failure(EXIT_NEGATIVE, why)),
    };
    self_check(&cert)?;
    emit(&cert.to_json(), output)?;
    Ok(code)
}

/// Certificates are re-verified, also after a serialization round trip,
/// before anything is written.
fn self_check(cert: &Certificate) -> Result<(), Failure> {
    let direct = verify_certificate(cert);
    let round_trip = verify_json(&cert.to_json());
    match (direct, round_trip) {
        (Verdict::Verified, Verdict::Verified) => Ok(()),
        (v, w) => Err(Failure(
            EXIT_INTERNAL,
            format!("internal error: produced certificate failed verification: {v:?} / {w:?}"),
        )),
    }
}

fn verify(file: &PathBuf) -> Result<u8, Failure> {
    let text = fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    match verify_json(&text) {
        Verdict::Verified => {
            println!("Verified");
            Ok(EXIT_OK)
        }
        Verdict::Refuted(why) => {
            println!("Refuted");
            eprintln!("{why}");
            Ok(EXIT_NEGATIVE)
        }
        Verdict::MalformedCertificate(why) => {
            println!("MalformedCertificate");
            eprintln!("{why}");
            Ok(EXIT_USAGE)
        }
    }
}

#[derive(Default)]
struct Tally {
    functions: usize,
    certificates: usize,
    verified: usize,
}

fn scan(degree: usize, count: usize, seed: u64) -> Result<u8, Failure> {
    if degree != 2 {
        return Err(usage("scan supports --degree 2 only"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies = [Tally::default(), Tally::default(), Tally::default()];
    let mut failures = 0usize;
    for _ in 0..count {
        let f = random_deg2(&mut rng, 6);
        let target = random_rational(&mut rng, 20);
        let class = deg2::classify_deg2(&f)?;
        let certs: Vec<Result<Certificate, Error>> = match class.case {
            Deg2Case::TwoRationalPoles => vec![deg2::case_a_wp_rep(&f, &target)],
            Deg2Case::OneRationalDoublePole => {
                let mut v = vec![deg2::case_b_ewp_rep(&f, &target), deg2::case_b_obstruction(&f)];
                if deg2::case_b_in_range(&f, &target) {
                    v.push(deg2::case_b_positive_rep(&f, &target));
                }
                v
            }
            Deg2Case::NoRationalPole => match deg2::case_c_obstruction(&f) {
                Ok(w) => w.certificates().into_iter().map(Ok).collect(),
                Err(e) => vec![Err(e)],
            },
        };
        let slot = &mut tallies[class.case as usize];
        slot.functions += 1;
        for c in certs {
            slot.certificates += 1;
            match c {
                Ok(c) if verify_certificate(&c).is_verified() => slot.verified += 1,
                Ok(_) => {
                    failures += 1;
                    eprintln!("unverified certificate for {}", format_function(&f));
                }
                Err(e) => {
                    failures += 1;
                    eprintln!("{}: {e}", format_function(&f));
                }
            }
        }
    }
    let mut out = std::io::stdout().lock();
    let cases = [
        Deg2Case::TwoRationalPoles,
        Deg2Case::OneRationalDoublePole,
        Deg2Case::NoRationalPole,
    ];
    for (case, t) in cases.iter().zip(&tallies) {
        writeln!(
            out,
            "{:<26} {:>5} functions, {}/{} certificates verified",
            case_name(*case),
            t.functions,
            t.verified,
            t.certificates
        )
        .ok();
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_NEGATIVE })
}

fn foursquares(value: &str) -> Result<u8, Failure> {
    let t = parse_value(value)?;
    if t < Rational::from_integer(0.into()) {
        return Err(usage(format!("{t} is negative")));
    }
    let [w, x, y, z] = four_squares_rat(&t);
    println!("({w}, {x}, {y}, {z})");
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { expr, json } => analyze(expr, *json),
        Command::Represent {
            expr,
            target,
            mode,
            seed,
            budget,
            output,
        } => represent(expr, target, *mode, *seed, *budget, output.as_ref()),
        Command::Verify { file } => verify(file),
        Command::Scan {
            degree,
            count,
            seed,
        } => scan(*degree, *count, *seed),
        Command::Foursquares { value } => foursquares(value),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("waring: {msg}");
            ExitCode::from(code)
        }
    }
}
