//! Named, seeded, reproducible checks over the quadric and hypersurface models.

mod ambient;
mod branches;
mod residual;
mod tube;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use residual::{check_commutator, normalized_commutator, Tally};

use crate::error::{Error, Result};
use crate::field::{Mode, Scalar};
use crate::hypersurface::TubeParam;

pub const DEFAULT_FLOAT_TOL: f64 = 1e-10;
pub const DEFAULT_TRIALS: usize = 50;
/// Lower bound a commutator must exceed for a non-commuting probe to count.
pub const NONCOMMUTING_FLOOR: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub m_values: Vec<usize>,
    pub modes: Vec<Mode>,
    pub tube_params: Vec<TubeParam>,
    pub seeds: Vec<u64>,
    pub tolerance: Option<f64>,
    /// Trials per randomized configuration.
    pub trials: usize,
    /// Name globs; empty runs everything.
    pub filter: Vec<String>,
    /// Added to `λ` of every tube, to produce a deliberately broken model.
    pub perturb_lambda: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let u = |p: i64, q: i64| TubeParam::TanRatio(BigRational::new(BigInt::from(p), BigInt::from(q)));
        Self {
            m_values: vec![3, 4, 5],
            modes: vec![Mode::Exact, Mode::Float],
            tube_params: vec![u(1, 2), u(1, 1), u(2, 1)],
            seeds: vec![42],
            tolerance: None,
            trials: DEFAULT_TRIALS,
            filter: Vec::new(),
            perturb_lambda: None,
        }
    }
}

impl SuiteConfig {
    pub fn float_tol(&self) -> f64 {
        self.tolerance.unwrap_or(DEFAULT_FLOAT_TOL)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_values.is_empty() {
            return Err(Error::InvalidArgument("at least one m is required".into()));
        }
        if let Some(&m) = self.m_values.iter().find(|&&m| m < 3) {
            return Err(Error::DimensionTooSmall(m));
        }
        if self.modes.is_empty() {
            return Err(Error::InvalidArgument("at least one mode is required".into()));
        }
        for p in &self.filter {
            glob::Pattern::new(p).map_err(|e| Error::InvalidArgument(format!("bad suite glob {p:?}: {e}")))?;
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance {t} must be finite and non-negative")));
            }
        }
        Ok(())
    }

    pub fn selects(&self, name: &str) -> bool {
        self.filter.is_empty()
            || self.filter.iter().any(|p| glob::Pattern::new(p).map(|g| g.matches(name)).unwrap_or(false))
    }

    pub fn has_mode(&self, mode: Mode) -> bool {
        self.modes.contains(&mode)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    SetupError,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
            Status::SetupError => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub mode: Mode,
    /// Exact: squared norm in ℚ(√2). Float: relative norm.
    pub residual: Scalar,
    pub tolerance: f64,
    pub status: Status,
    pub seed: Option<u64>,
    pub parameters: Vec<(String, String)>,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        matches!(self.status, Status::Fail | Status::SetupError)
    }

    pub fn category(&self) -> &str {
        self.name.split('.').next().unwrap_or(&self.name)
    }

    pub fn parameter(&self, key: &str) -> Option<&str> {
        self.parameters.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub setup_error: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Skip => self.skip += 1,
            Status::SetupError => self.setup_error += 1,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: Counts,
    pub by_category: BTreeMap<String, Counts>,
    /// Distinct names of failing checks, in report order.
    pub failing: Vec<String>,
}

impl Summary {
    pub fn tally(reports: &[CheckReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            s.total.add(r.status);
            s.by_category.entry(r.category().to_string()).or_default().add(r.status);
            if r.failed() && !s.failing.contains(&r.name) {
                s.failing.push(r.name.clone());
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub reports: Vec<CheckReport>,
    pub summary: Summary,
}

impl SuiteResult {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        let summary = Summary::tally(&reports);
        Self { reports, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.total.fail == 0 && self.summary.total.setup_error == 0
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckReport> + 'a {
        self.reports.iter().filter(move |r| r.name == name)
    }
}

/// What a single instance body returns besides the tally.
pub(crate) enum Note {
    Done(String),
    Skip(String),
}

/// Collects the reports of one registered check.
pub(crate) struct Recorder<'a> {
    pub cfg: &'a SuiteConfig,
    def: &'a CheckDef,
    out: Vec<CheckReport>,
}

impl<'a> Recorder<'a> {
    pub fn record(
        &mut self,
        mode: Mode,
        seed: Option<u64>,
        parameters: Vec<(String, String)>,
        body: impl FnOnce(&mut Tally) -> Result<Note>,
    ) {
        let tol = self.cfg.float_tol();
        self.record_with_tol(mode, tol, seed, parameters, body)
    }

    pub fn record_with_tol(
        &mut self,
        mode: Mode,
        tol: f64,
        seed: Option<u64>,
        parameters: Vec<(String, String)>,
        body: impl FnOnce(&mut Tally) -> Result<Note>,
    ) {
        let tol = if mode == Mode::Exact { 0.0 } else { tol };
        let start = Instant::now();
        let mut tally = Tally::new(mode, tol);
        let outcome = body(&mut tally);
        let residual = tally.residual();
        let (status, detail) = match outcome {
            Err(e) => (Status::SetupError, e.to_string()),
            Ok(Note::Skip(why)) => (Status::Skip, why),
            Ok(Note::Done(detail)) => {
                let ok = match &residual {
                    Scalar::Exact(q) => q.is_zero(),
                    Scalar::Float(x) => *x <= tol,
                };
                let detail = match (ok, tally.offender()) {
                    (false, Some(o)) if detail.is_empty() => o.to_string(),
                    (false, Some(o)) => format!("{detail}; first defect: {o}"),
                    _ => detail,
                };
                (if ok { Status::Pass } else { Status::Fail }, detail)
            }
        };
        self.out.push(CheckReport {
            name: self.def.name.to_string(),
            anchor: self.def.anchors.join("; "),
            mode,
            residual,
            tolerance: tol,
            status,
            seed,
            parameters,
            detail,
            elapsed: start.elapsed(),
        });
    }
}

pub(crate) fn params<const N: usize>(kv: [(&str, String); N]) -> Vec<(String, String)> {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// A registered check: a name (category prefix before the first `.`), the
/// statements it exercises, and its body.
pub struct CheckDef {
    pub name: &'static str,
    pub anchors: &'static [&'static str],
    run: fn(&mut Recorder<'_>),
}

/// Every pointwise statement the suite is expected to exercise.
pub const ANCHORS: &[&str] = &[
    anchor::AMBIENT_CURVATURE,
    anchor::GAUSS_EQUATION,
    anchor::SINGULAR_DECOMPOSITION,
    anchor::CONJUGATION_SPLIT,
    anchor::NORMAL_FRAME,
    anchor::HOPF_IDENTITY,
    anchor::PHI_PARTNER,
    anchor::ISOTROPIC_CONSTRAINTS,
    anchor::NORMAL_JACOBI,
    anchor::STRUCTURE_JACOBI,
    anchor::REEB_SLOT,
    anchor::ISOTROPIC_EQUIVALENCE,
    anchor::PRINCIPAL_OPERATORS,
    anchor::PRINCIPAL_COMMUTING_SHAPE,
    anchor::HORIZONTAL_SHAPE_RELATION,
    anchor::DIAGONAL_FORM,
    anchor::SHAPE_TRACE,
    anchor::TUBE_TABLE,
    anchor::TUBE_CONTACT,
    anchor::HORIZONTAL_JACOBI,
    anchor::TUBE_JACOBI_TABLES,
    anchor::TUBE_COMMUTATOR_TABLE,
    anchor::B_SQUARED,
    anchor::REEB_PARTNER,
];

pub mod anchor {
    pub const AMBIENT_CURVATURE: &str = "ambient curvature tensor";
    pub const GAUSS_EQUATION: &str = "tangential Gauss equation";
    pub const SINGULAR_DECOMPOSITION: &str = "singular decomposition N = cos t Z1 + sin t JZ2";
    pub const CONJUGATION_SPLIT: &str = "AX = BX + rho(X)N";
    pub const NORMAL_FRAME: &str = "frame formulas for xi, AN, Axi and beta = -cos 2t";
    pub const HOPF_IDENTITY: &str = "Hopf pointwise identity";
    pub const PHI_PARTNER: &str = "phi-partner principal curvature (a*l + 2)/(2l - a)";
    pub const ISOTROPIC_CONSTRAINTS: &str = "isotropic Hopf constraints SAxi = SAN = 0";
    pub const NORMAL_JACOBI: &str = "normal Jacobi operator on TM";
    pub const STRUCTURE_JACOBI: &str = "structure Jacobi operator";
    pub const REEB_SLOT: &str = "commuting condition in the xi slot: 2ab(ab xi - SAxi)";
    pub const ISOTROPIC_EQUIVALENCE: &str = "isotropic branch: commuting iff aSY = -6a^2 eta(Y)xi";
    pub const PRINCIPAL_OPERATORS: &str = "principal branch operators R_N Y = Y + 2eta(Y)xi + AY";
    pub const PRINCIPAL_COMMUTING_SHAPE: &str = "principal branch: ASY = SY - 2a eta(Y)xi";
    pub const HORIZONTAL_SHAPE_RELATION: &str = "aSX = -X - AX on C";
    pub const DIAGONAL_FORM: &str = "diagonal shape operator form";
    pub const SHAPE_TRACE: &str = "Tr S = a - (m-1)(2/a)";
    pub const TUBE_TABLE: &str = "tube principal curvature table";
    pub const TUBE_CONTACT: &str = "tube contact identity S phi + phi S = 2 delta phi";
    pub const HORIZONTAL_JACOBI: &str = "Jacobi operator R_X for X in C";
    pub const TUBE_JACOBI_TABLES: &str = "tube eigen-tables of R_N, R_xi, R_X";
    pub const TUBE_COMMUTATOR_TABLE: &str = "tube table R_N R_X Y = R_X R_N Y";
    pub const B_SQUARED: &str = "B^2 Y = Y + g(AN,Y) phi A xi";
    pub const REEB_PARTNER: &str = "SAxi = ab xi forces S phi A xi = sigma phi A xi";
}

pub fn registry() -> Vec<CheckDef> {
    let mut defs = ambient::checks();
    defs.extend(tube::checks());
    defs.extend(branches::checks());
    defs
}

/// Anchors with no registered check.
pub fn coverage_gaps() -> Vec<&'static str> {
    let defs = registry();
    ANCHORS.iter().copied().filter(|a| !defs.iter().any(|d| d.anchors.contains(a))).collect()
}

/// Runs every selected check. Order follows the registry regardless of
/// completion order; a panicking check becomes a setup error.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteResult> {
    cfg.validate()?;
    let defs: Vec<CheckDef> = registry().into_iter().filter(|d| cfg.selects(d.name)).collect();
    let reports: Vec<Vec<CheckReport>> = defs.par_iter().map(|def| run_check(cfg, def)).collect();
    Ok(SuiteResult::new(reports.into_iter().flatten().collect()))
}

pub fn run_check(cfg: &SuiteConfig, def: &CheckDef) -> Vec<CheckReport> {
    let start = Instant::now();
    let mut rec = Recorder { cfg, def, out: Vec::new() };
    match catch_unwind(AssertUnwindSafe(|| (def.run)(&mut rec))) {
        Ok(()) => rec.out,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "check panicked".into());
            let mut out = rec.out;
            out.push(CheckReport {
                name: def.name.to_string(),
                anchor: def.anchors.join("; "),
                mode: cfg.modes[0],
                residual: Scalar::Float(f64::NAN),
                tolerance: cfg.float_tol(),
                status: Status::SetupError,
                seed: None,
                parameters: Vec::new(),
                detail: format!("panic: {msg}"),
                elapsed: start.elapsed(),
            });
            out
        }
    }
}

/// Runs a single registered check by exact name.
pub fn run_named(cfg: &SuiteConfig, name: &str) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let def = registry()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("no check named {name:?}")))?;
    Ok(run_check(cfg, &def))
}

/// Dispatches a generic body on the runtime mode.
macro_rules! by_mode {
    ($mode:expr, $f:ident ( $($arg:expr),* $(,)? )) => {
        match $mode {
            $crate::field::Mode::Exact => $f::<$crate::field::QSqrt2>($($arg),*),
            $crate::field::Mode::Float => $f::<f64>($($arg),*),
        }
    };
}
pub(crate) use by_mode;
