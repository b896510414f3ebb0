//! Command-line front end. Exit codes: 0 all checks pass, 1 some check failed,
//! 2 usage or configuration error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{parse_rational, Mode, Scalar};
use crate::hypersurface::TubeParam;
use crate::verifier::{self, CheckReport, Status, SuiteConfig, SuiteResult, Summary};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Version of the structured report layout.
pub const DOCUMENT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "quadric-jacobi", version, about = "Check Jacobi-operator identities for real hypersurfaces in the complex quadric")]
struct Args {
    /// Quadric dimensions (each at least 3)
    #[arg(long, value_delimiter = ',', default_values_t = [3usize, 4, 5])]
    m: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    mode: ModeArg,
    /// Tube parameters u = tan(√2 r) as p/q
    #[arg(long, value_delimiter = ',')]
    u: Vec<String>,
    /// Tube radii (float mode only)
    #[arg(long, value_delimiter = ',')]
    r: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [42u64])]
    seed: Vec<u64>,
    /// Float tolerance override
    #[arg(long)]
    tol: Option<f64>,
    /// Check-name globs, e.g. 'tube*'
    #[arg(long, value_delimiter = ',')]
    suite: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Trials per randomized configuration
    #[arg(long, default_value_t = verifier::DEFAULT_TRIALS)]
    trials: usize,
    /// Add this amount to λ of every tube
    #[arg(long, allow_hyphen_values = true)]
    perturb_lambda: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub suite: SuiteConfig,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// A usage problem, or a help/version request that clap already formatted.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Display(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CliError::Display(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    })?;
    let modes = match args.mode {
        ModeArg::Exact => vec![Mode::Exact],
        ModeArg::Float => vec![Mode::Float],
        ModeArg::Both => vec![Mode::Exact, Mode::Float],
    };
    if args.mode == ModeArg::Exact && !args.r.is_empty() {
        return Err(CliError::Usage("exact mode takes tube parameters as rationals via --u, not radii via --r".into()));
    }
    let mut tube_params = Vec::new();
    for u in &args.u {
        tube_params.push(TubeParam::TanRatio(parse_rational(u)?));
    }
    tube_params.extend(args.r.iter().map(|&r| TubeParam::Radius(r)));
    for p in &tube_params {
        // m does not affect parameter validity
        verifier_spec_check(p)?;
    }
    let defaults = SuiteConfig::default();
    let suite = SuiteConfig {
        m_values: args.m,
        modes,
        tube_params: if tube_params.is_empty() { defaults.tube_params } else { tube_params },
        seeds: args.seed,
        tolerance: args.tol,
        trials: args.trials,
        filter: args.suite,
        perturb_lambda: args.perturb_lambda,
    };
    suite.validate().map_err(|e| match e {
        Error::DimensionTooSmall(m) => {
            CliError::Usage(format!("m = {m} is not allowed: the complex quadric Q^m is only considered for m >= 3"))
        }
        e => e.into(),
    })?;
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    Ok(RunConfig { suite, format: args.format, out: args.out })
}

fn verifier_spec_check(p: &TubeParam) -> Result<()> {
    crate::hypersurface::TubeSpec { m: 3, param: p.clone() }.validate()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub m: Vec<usize>,
    pub modes: Vec<Mode>,
    pub tube_params: Vec<String>,
    pub seeds: Vec<u64>,
    pub tolerance: f64,
    pub trials: usize,
    pub suite: Vec<String>,
    pub perturb_lambda: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub name: String,
    pub anchor: String,
    pub mode: Mode,
    /// Lossless string form of the residual.
    pub residual: String,
    pub tolerance: f64,
    pub status: Status,
    pub passed: bool,
    pub seed: Option<u64>,
    pub parameters: Vec<(String, String)>,
    pub detail: String,
    pub elapsed_ns: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub version: u32,
    pub config: ConfigEcho,
    pub reports: Vec<ReportDoc>,
    pub summary: Summary,
}

impl ReportDoc {
    fn from_report(r: &CheckReport) -> Self {
        Self {
            name: r.name.clone(),
            anchor: r.anchor.clone(),
            mode: r.mode,
            residual: r.residual.encode(),
            tolerance: r.tolerance,
            status: r.status,
            passed: r.passed(),
            seed: r.seed,
            parameters: r.parameters.clone(),
            detail: r.detail.clone(),
            elapsed_ns: r.elapsed.as_nanos().min(u64::MAX as u128) as u64,
        }
    }

    fn to_report(&self) -> Result<CheckReport> {
        Ok(CheckReport {
            name: self.name.clone(),
            anchor: self.anchor.clone(),
            mode: self.mode,
            residual: Scalar::decode(self.mode, &self.residual)?,
            tolerance: self.tolerance,
            status: self.status,
            seed: self.seed,
            parameters: self.parameters.clone(),
            detail: self.detail.clone(),
            elapsed: Duration::from_nanos(self.elapsed_ns),
        })
    }
}

impl Document {
    pub fn new(result: &SuiteResult, cfg: &SuiteConfig) -> Self {
        let config = ConfigEcho {
            m: cfg.m_values.clone(),
            modes: cfg.modes.clone(),
            tube_params: cfg.tube_params.iter().map(TubeParam::label).collect(),
            seeds: cfg.seeds.clone(),
            tolerance: cfg.float_tol(),
            trials: cfg.trials,
            suite: cfg.filter.clone(),
            perturb_lambda: cfg.perturb_lambda,
        };
        Self {
            version: DOCUMENT_VERSION,
            config,
            reports: result.reports.iter().map(ReportDoc::from_report).collect(),
            summary: result.summary.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rebuilds the suite result; residuals decode to the values that were emitted.
    pub fn to_result(&self) -> Result<SuiteResult> {
        let reports = self.reports.iter().map(ReportDoc::to_report).collect::<Result<Vec<_>>>()?;
        Ok(SuiteResult::new(reports))
    }
}

fn format_params(r: &CheckReport) -> String {
    let mut parts: Vec<String> = vec![format!("mode={}", r.mode)];
    parts.extend(r.parameters.iter().map(|(k, v)| format!("{k}={v}")));
    if let Some(s) = r.seed {
        parts.push(format!("seed={s}"));
    }
    parts.join(" ")
}

pub fn write_text(result: &SuiteResult, w: &mut impl Write) -> io::Result<()> {
    for r in &result.reports {
        write!(w, "{:<5} {:<32} [{}] {} residual={}", r.status.label(), r.name, r.anchor, format_params(r), r.residual)?;
        if r.mode == Mode::Float {
            write!(w, " tol={:e}", r.tolerance)?;
        }
        if !r.passed() && !r.detail.is_empty() {
            write!(w, " :: {}", r.detail)?;
        }
        writeln!(w)?;
    }
    let t = &result.summary.total;
    writeln!(w, "\nsummary: {} pass, {} fail, {} skip, {} error", t.pass, t.fail, t.skip, t.setup_error)?;
    for (cat, c) in &result.summary.by_category {
        writeln!(w, "  {cat:<12} {} pass, {} fail, {} skip, {} error", c.pass, c.fail, c.skip, c.setup_error)?;
    }
    if !result.summary.failing.is_empty() {
        writeln!(w, "failing: {}", result.summary.failing.join(", "))?;
    }
    Ok(())
}

pub fn exit_code(result: &SuiteResult) -> i32 {
    if result.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Writes the report to `--out` or stdout and returns the exit code.
pub fn emit_report(result: &SuiteResult, cfg: &RunConfig) -> i32 {
    let written = match &cfg.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            emit_to(result, cfg, &mut w)?;
            w.flush()
        }),
        None => emit_to(result, cfg, &mut io::stdout().lock()),
    };
    match written {
        Ok(()) => exit_code(result),
        Err(e) => {
            let target = cfg.out.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "stdout".into());
            eprintln!("error: cannot write report to {target}: {e}");
            EXIT_USAGE
        }
    }
}

fn emit_to(result: &SuiteResult, cfg: &RunConfig, w: &mut impl Write) -> io::Result<()> {
    match cfg.format {
        Format::Text => write_text(result, w),
        Format::Json => writeln!(w, "{}", Document::new(result, &cfg.suite).to_json()),
    }
}

/// Full command: parse, run, emit.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Display(s)) => {
            print!("{s}");
            return EXIT_PASS;
        }
        Err(CliError::Usage(s)) => {
            eprintln!("{}", s.trim_end());
            return EXIT_USAGE;
        }
    };
    match verifier::run_suite(&cfg.suite) {
        Ok(result) => emit_report(&result, &cfg),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<RunConfig, CliError> {
        parse_args(std::iter::once("quadric-jacobi").chain(args.iter().copied()))
    }

    #[test]
    fn defaults() {
        let c = parse(&[]).unwrap();
        assert_eq!(c.suite, SuiteConfig::default());
        assert_eq!(c.format, Format::Text);
        assert!(c.out.is_none());
    }

    #[test]
    fn maps_flags() {
        let c = parse(&["--m", "3", "--mode", "exact", "--u", "1", "--suite", "tube*"]).unwrap();
        assert_eq!(c.suite.m_values, vec![3]);
        assert_eq!(c.suite.modes, vec![Mode::Exact]);
        assert_eq!(c.suite.tube_params.len(), 1);
        assert_eq!(c.suite.tube_params[0].label(), "u=1");
        assert_eq!(c.suite.filter, vec!["tube*".to_string()]);
        let c = parse(&["--u", "3/2,2", "--r", "0.5", "--perturb-lambda", "-1e-3"]).unwrap();
        assert_eq!(c.suite.tube_params.len(), 3);
        assert_eq!(c.suite.perturb_lambda, Some(-1e-3));
    }

    #[test]
    fn usage_errors() {
        for bad in [
            &["--m", "2"][..],
            &["--bogus"],
            &["--mode", "exact", "--r", "0.3"],
            &["--u", "x/2"],
            &["--u", "0"],
            &["--tol", "-1"],
            &["--trials", "0"],
            &["--suite", "[oops"],
        ] {
            assert!(matches!(parse(bad), Err(CliError::Usage(_))), "{bad:?}");
        }
        match parse(&["--m", "2"]) {
            Err(CliError::Usage(msg)) => assert!(msg.contains("m >= 3"), "{msg}"),
            _ => unreachable!(),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["quadric-jacobi", "--m", "2"]), EXIT_USAGE);
        assert_eq!(run(["quadric-jacobi", "--help"]), EXIT_PASS);
    }
}
