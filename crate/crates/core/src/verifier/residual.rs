use crate::error::Result;
use crate::field::{Field, Matrix, Mode, QSqrt2, Scalar, Vector};

/// `‖PQ − QP‖_F` in float mode, the exact squared norm in exact mode.
pub fn check_commutator<F: Field>(p: &Matrix<F>, q: &Matrix<F>) -> Result<Scalar> {
    Ok(p.commutator(q)?.frobenius_norm())
}

/// `‖PQ − QP‖_F / (1 + ‖P‖_F ‖Q‖_F)`.
pub fn normalized_commutator(p: &Matrix<f64>, q: &Matrix<f64>) -> Result<f64> {
    let c = p.commutator(q)?.frobenius_norm_f64();
    Ok(c / (1.0 + p.frobenius_norm_f64() * q.frobenius_norm_f64()))
}

/// Accumulates defects of one check. Exact mode sums squared norms; float mode keeps
/// the largest relative norm. The first offending instance is remembered for the report.
#[derive(Clone, Debug)]
pub struct Tally {
    mode: Mode,
    tol: f64,
    exact: QSqrt2,
    float: f64,
    count: usize,
    offender: Option<String>,
}

impl Tally {
    pub fn new(mode: Mode, tol: f64) -> Self {
        Self { mode, tol, exact: num_traits::Zero::zero(), float: 0.0, count: 0, offender: None }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    fn note(&mut self, label: impl FnOnce() -> String, sq: Scalar, norm: f64, scale: f64) {
        self.count += 1;
        let bad = match sq {
            Scalar::Exact(q) => {
                let bad = !q.is_zero();
                self.exact = &self.exact + &q;
                bad
            }
            Scalar::Float(_) => {
                let rel = norm / (1.0 + scale);
                self.float = self.float.max(rel);
                !(rel <= self.tol)
            }
        };
        if bad && self.offender.is_none() {
            self.offender = Some(label());
        }
    }

    /// Relative defect `‖d‖ / (1 + scale)` (float), `‖d‖²` (exact).
    pub fn matrix<F: Field>(&mut self, label: impl FnOnce() -> String, d: &Matrix<F>, scale: f64) {
        let entry = first_nonzero(d.rows() * d.cols(), |k| d[(k / d.cols(), k % d.cols())].clone());
        let label = || match entry {
            Some(k) => format!("{} at basis pair (e{}, e{})", label(), k / d.cols(), k % d.cols()),
            None => label(),
        };
        self.note(label, d.frobenius_norm_sq().to_scalar(), d.frobenius_norm_f64(), scale);
    }

    pub fn vector<F: Field>(&mut self, label: impl FnOnce() -> String, d: &Vector<F>, scale: f64) {
        let n = d.norm_sq().to_f64().sqrt();
        self.note(label, d.norm_sq().to_scalar(), n, scale);
    }

    pub fn scalar<F: Field>(&mut self, label: impl FnOnce() -> String, d: &F, scale: f64) {
        let sq = d.clone() * d.clone();
        self.note(label, sq.to_scalar(), d.to_f64().abs(), scale);
    }

    /// A boolean condition, counted as residual 1 when violated.
    pub fn require(&mut self, label: impl FnOnce() -> String, ok: bool) {
        let r = if ok { 0 } else { 1 };
        let sq = match self.mode {
            Mode::Exact => Scalar::Exact(QSqrt2::from_parts(r, 1, 0, 1)),
            Mode::Float => Scalar::Float(r as f64),
        };
        self.note(label, sq, r as f64, 0.0);
    }

    pub fn residual(&self) -> Scalar {
        match self.mode {
            Mode::Exact => Scalar::Exact(self.exact.clone()),
            Mode::Float => Scalar::Float(self.float),
        }
    }

    pub fn offender(&self) -> Option<&str> {
        self.offender.as_deref()
    }
}

fn first_nonzero<F: Field>(len: usize, at: impl Fn(usize) -> F) -> Option<usize> {
    if F::MODE == Mode::Float {
        return None;
    }
    (0..len).find(|&k| !at(k).is_zero())
}
