//! The `coverkit` command line.
//!
//! Exit codes: 0 for PASS or NOT-APPLICABLE, 1 for FAIL, 2 for usage,
//! input and computation errors.

pub mod files;
mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::Rational;
use crate::construct::{build_unsplittable, check_unsplittable, sharpness_example, UnsplittableSpec};
use crate::cover::CoverSystem;
use crate::error::Error;
use crate::field::{
    check_theorem12, nf_coverage_scan, nf_spectrum, nf_spectrum_bruteforce, vanishing_witness_check, DEFAULT_COSET_CAP,
};
use crate::report::Verdict;
use crate::spectrum::{
    check_corollary11, check_theorem11, lemma21_witness, spectrum_bruteforce, spectrum_dp, verify_corollary12,
    verify_remark13, SpectrumReport, DEFAULT_BRUTE_FORCE_CAP,
};

pub use files::{parse_cover_file, parse_nf_file, InputError};

pub const BRUTE_CAP_ENV: &str = "COVERKIT_BRUTE_CAP";
pub const COSET_CAP_ENV: &str = "COVERKIT_COSET_CAP";

#[derive(Debug, Parser)]
#[command(name = "coverkit", version, about = "Exact checks of subset-sum bounds for m-covers")]
struct Cli {
    /// Emit a machine-readable JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// System file (JSON).
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Compute the spectrum by explicit subset enumeration.
    #[arg(long)]
    brute_force: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Covering multiplicity and m-cover check.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Required multiplicity.
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Subset counts per fractional part.
    Spectrum(SpectrumArgs),
    /// Every nonempty fractional-part class has at least 2^m subsets.
    Theorem11(SpectrumArgs),
    /// At most 2^(k-m) distinct fractional parts.
    Corollary11(SpectrumArgs),
    /// Last-class refinement with integer-part diversity.
    Corollary12(InputArgs),
    /// Binomial refinement for exact m-covers.
    Remark13(InputArgs),
    /// Class whose removal keeps theta and its shift reachable.
    Lemma21 {
        #[command(flatten)]
        input: InputArgs,
        /// Fractional part, as p/q.
        #[arg(long)]
        theta: String,
    },
    /// Build the m-cover from distinct primes that is not a union of two covers.
    ConstructExample11 {
        #[arg(long)]
        m: u64,
        /// Comma-separated distinct primes.
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        check_unsplittable: bool,
        /// Also write the system as a cover file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// m copies of 0(1) and their spectrum.
    Sharpness {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Covering multiplicity of a number-field system.
    NfVerify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        m: u64,
    },
    /// Subset-class counts over K/O_K against the 2^m bound.
    NfTheorem12 {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        brute_force: bool,
    },
    /// Integral-exponent witness for every coset representative.
    NfVanishing(InputArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Spectrum(_) => "spectrum",
            Command::Theorem11(_) => "theorem11",
            Command::Corollary11(_) => "corollary11",
            Command::Corollary12(_) => "corollary12",
            Command::Remark13(_) => "remark13",
            Command::Lemma21 { .. } => "lemma21",
            Command::ConstructExample11 { .. } => "construct-example11",
            Command::Sharpness { .. } => "sharpness",
            Command::NfVerify { .. } => "nf-verify",
            Command::NfTheorem12 { .. } => "nf-theorem12",
            Command::NfVanishing(_) => "nf-vanishing",
        }
    }
}

/// Serialized result of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub verdict: String,
    pub details: Value,
}

#[derive(Debug)]
enum Failure {
    Input(InputError),
    Compute(Error),
    Usage(String),
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Input(e) => e.code(),
            Failure::Compute(e) => e.code(),
            Failure::Usage(_) => "usage",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Input(e) => e.to_string(),
            Failure::Compute(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

#[derive(Debug, Clone, Copy)]
struct Limits {
    brute_cap: usize,
    coset_cap: u64,
}

fn env_number<T: std::str::FromStr>(name: &str, default: T) -> Result<T, Failure> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{name} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn limits() -> Result<Limits, Failure> {
    Ok(Limits {
        brute_cap: env_number(BRUTE_CAP_ENV, DEFAULT_BRUTE_FORCE_CAP)?,
        coset_cap: env_number(COSET_CAP_ENV, DEFAULT_COSET_CAP)?,
    })
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_command_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_command_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 2;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let name = cli.command.name();
    let result = limits().and_then(|l| execute(&cli.command, l));
    match result {
        Ok(report) => {
            let code = match report.verdict.as_str() {
                "FAIL" => 1,
                _ => 0,
            };
            let text = if cli.json {
                render::json_line(&report)
            } else {
                render::table(&report)
            };
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(failure) => {
            if cli.json {
                let report = RunReport {
                    command: name.to_string(),
                    verdict: "ERROR".to_string(),
                    details: json!({ "code": failure.code(), "message": failure.message() }),
                };
                let _ = out.write_all(render::json_line(&report).as_bytes());
            }
            let _ = writeln!(err, "error[{}]: {}", failure.code(), failure.message());
            2
        }
    }
}

fn report(command: &Command, verdict: Verdict, details: Value) -> RunReport {
    RunReport {
        command: command.name().to_string(),
        verdict: verdict.as_str().to_string(),
        details,
    }
}

fn spectrum_for(sys: &CoverSystem, brute_force: bool, limits: Limits) -> Result<SpectrumReport, Failure> {
    Ok(if brute_force {
        spectrum_bruteforce(sys, limits.brute_cap)?
    } else {
        spectrum_dp(sys)?
    })
}

fn parse_theta(text: &str) -> Result<Rational, Failure> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| Failure::Usage(format!("theta must be an integer or p/q, got {text:?}")))
}

fn write_system(path: &PathBuf, sys: &CoverSystem) -> Result<(), Failure> {
    std::fs::write(path, files::write_cover_string(sys)).map_err(|e| {
        Failure::Input(InputError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    })
}

fn execute(command: &Command, limits: Limits) -> Result<RunReport, Failure> {
    use render::*;
    match command {
        Command::Verify { input, m } => {
            let sys = parse_cover_file(&input.input)?;
            let (multiplicity, point) = sys.coverage_minimum_point()?;
            let ok = multiplicity >= *m;
            let mut details = json!({
                "k": sys.len().to_string(),
                "period": sys.period()?.to_string(),
                "multiplicity": multiplicity.to_string(),
                "required_m": m.to_string(),
                "exact": sys.is_exact_cover()?.is_some(),
            });
            if !ok {
                details["uncovered_point"] = json!(point.to_string());
            }
            Ok(report(command, Verdict::from_check(ok), details))
        }
        Command::Spectrum(args) => {
            let sys = parse_cover_file(&args.input.input)?;
            let spectrum = spectrum_for(&sys, args.brute_force, limits)?;
            Ok(report(
                command,
                Verdict::Pass,
                spectrum_details(&spectrum, args.brute_force),
            ))
        }
        Command::Theorem11(args) => {
            let sys = parse_cover_file(&args.input.input)?;
            let spectrum = spectrum_for(&sys, args.brute_force, limits)?;
            let r = check_theorem11(sys.covering_multiplicity()?, &spectrum)?;
            Ok(report(command, r.verdict, theorem11_details(&r, &spectrum)))
        }
        Command::Corollary11(args) => {
            let sys = parse_cover_file(&args.input.input)?;
            let spectrum = spectrum_for(&sys, args.brute_force, limits)?;
            let r = check_corollary11(sys.covering_multiplicity()?, &spectrum)?;
            Ok(report(command, r.verdict, corollary11_details(&r)))
        }
        Command::Corollary12(input) => {
            let r = verify_corollary12(&parse_cover_file(&input.input)?)?;
            Ok(report(command, r.verdict, corollary12_details(&r)))
        }
        Command::Remark13(input) => {
            let r = verify_remark13(&parse_cover_file(&input.input)?)?;
            Ok(report(command, r.verdict, remark13_details(&r)))
        }
        Command::Lemma21 { input, theta } => {
            let sys = parse_cover_file(&input.input)?;
            let theta = parse_theta(theta)?;
            let w = lemma21_witness(&sys, &theta)?;
            let class = sys.classes()[w.index];
            Ok(report(
                command,
                Verdict::Pass,
                json!({
                    "theta": w.theta.to_string(),
                    "t": (w.index + 1).to_string(),
                    "class": class.to_string(),
                    "weight": sys.weight(w.index).to_string(),
                    "shifted_theta": w.shifted.to_string(),
                }),
            ))
        }
        Command::ConstructExample11 {
            m,
            primes,
            check_unsplittable: check,
            output,
        } => {
            let spec = UnsplittableSpec::new(*m, primes.clone())?;
            let out = build_unsplittable(&spec)?;
            if let Some(path) = output {
                write_system(path, &out.system)?;
            }
            let certificate = check.then(|| check_unsplittable(&out));
            let verdict = match &certificate {
                Some(c) => Verdict::from_check(c.passed() && out.multiplicity >= *m),
                None => Verdict::from_check(out.multiplicity >= *m),
            };
            Ok(report(command, verdict, example11_details(&out, certificate.as_ref())))
        }
        Command::Sharpness { m, output } => {
            let sys = sharpness_example(*m)?;
            if let Some(path) = output {
                write_system(path, &sys)?;
            }
            let spectrum = spectrum_dp(&sys)?;
            let r = check_theorem11(sys.covering_multiplicity()?, &spectrum)?;
            let equality = r.min_nonzero.as_ref().is_some_and(|(_, c)| *c == r.bound);
            let mut details = theorem11_details(&r, &spectrum);
            details["equality"] = json!(equality);
            details["system"] = system_value(&sys);
            Ok(report(
                command,
                Verdict::from_check(r.verdict == Verdict::Pass && equality),
                details,
            ))
        }
        Command::NfVerify { input, m } => {
            let parsed = parse_nf_file(&input.input)?;
            let scan = nf_coverage_scan(&parsed.system, limits.coset_cap)?;
            let ok = scan.multiplicity >= *m;
            let mut details = json!({
                "k": parsed.system.len().to_string(),
                "degree": parsed.system.field().degree().to_string(),
                "representatives": scan.representatives.to_string(),
                "multiplicity": scan.multiplicity.to_string(),
                "required_m": m.to_string(),
            });
            if !ok {
                details["uncovered_point"] = element_value(&scan.minimizer);
            }
            Ok(report(command, Verdict::from_check(ok), details))
        }
        Command::NfTheorem12 { input, brute_force } => {
            let parsed = parse_nf_file(&input.input)?;
            let mu = parsed.mu.clone().unwrap_or_else(|| parsed.system.field().zero());
            let spectrum = if *brute_force {
                nf_spectrum_bruteforce(&parsed.system, Some(&mu), limits.brute_cap)?
            } else {
                nf_spectrum(&parsed.system, Some(&mu))?
            };
            let r = check_theorem12(&parsed.system, &mu, spectrum, limits.coset_cap)?;
            Ok(report(command, r.verdict, theorem12_details(&r, *brute_force)))
        }
        Command::NfVanishing(input) => {
            let parsed = parse_nf_file(&input.input)?;
            let r = vanishing_witness_check(&parsed.system, limits.coset_cap)?;
            Ok(report(command, r.verdict, vanishing_details(&r)))
        }
    }
}
