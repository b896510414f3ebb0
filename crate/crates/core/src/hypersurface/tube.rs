//! Tube of radius `r` around the totally real sphere, at a point with principal normal.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::HypersurfacePoint;
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Mode, Vector};
use crate::quadric::QuadricPoint;

#[derive(Clone, Debug, PartialEq)]
pub enum TubeParam {
    /// `r ∈ (0, π/(2√2))`, float mode only.
    Radius(f64),
    /// `u = tan(√2 r) > 0`.
    TanRatio(BigRational),
}

impl TubeParam {
    pub fn label(&self) -> String {
        match self {
            TubeParam::Radius(r) => format!("r={r}"),
            TubeParam::TanRatio(u) => format!("u={u}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TubeSpec {
    pub m: usize,
    pub param: TubeParam,
}

impl TubeSpec {
    pub fn radius(m: usize, r: f64) -> Result<Self> {
        let spec = Self { m, param: TubeParam::Radius(r) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn tan_ratio(m: usize, u: BigRational) -> Result<Self> {
        let spec = Self { m, param: TubeParam::TanRatio(u) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 3 {
            return Err(Error::DimensionTooSmall(self.m));
        }
        match &self.param {
            TubeParam::Radius(r) => {
                let limit = FRAC_PI_2 / SQRT_2;
                if !(r.is_finite() && *r > 0.0 && *r < limit) {
                    return Err(Error::InvalidArgument(format!("radius {r} outside (0, π/(2√2))")));
                }
            }
            TubeParam::TanRatio(u) => {
                if !u.is_positive() {
                    return Err(Error::InvalidArgument(format!("tan ratio {u} must be positive")));
                }
            }
        }
        Ok(())
    }

    /// `u = tan(√2 r)` in the requested field.
    pub fn tan_value<F: Field>(&self) -> Result<F> {
        self.validate()?;
        match &self.param {
            TubeParam::TanRatio(u) => Ok(F::from_rational(u)),
            TubeParam::Radius(r) => F::from_f64((SQRT_2 * r).tan()).ok_or_else(|| {
                Error::InvalidArgument("exact mode needs a rational tan ratio u, not a radius".into())
            }),
        }
    }

    /// Short label for reports, e.g. `u=1/2` or `r=0.3`.
    pub fn label(&self) -> String {
        self.param.label()
    }

    pub fn tan_f64(&self) -> f64 {
        match &self.param {
            TubeParam::Radius(r) => (SQRT_2 * r).tan(),
            TubeParam::TanRatio(u) => u.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn supports(&self, mode: Mode) -> bool {
        mode == Mode::Float || matches!(self.param, TubeParam::TanRatio(_))
    }
}

/// The tube together with its principal curvatures and eigenbases.
#[derive(Clone, Debug)]
pub struct Tube<F> {
    pub point: HypersurfacePoint<F>,
    pub alpha: F,
    pub lambda: F,
    pub mu: F,
    /// `[ξ]`.
    pub t_alpha: Vec<Vector<F>>,
    /// `e_1, …, e_{m−1}`: `V(A) ∩ 𝒞`.
    pub t_lambda: Vec<Vector<F>>,
    /// `Je_1, …, Je_{m−1}`: `JV(A) ∩ 𝒞`.
    pub t_mu: Vec<Vector<F>>,
}

pub fn build_tube<F: Field>(spec: &TubeSpec) -> Result<Tube<F>> {
    let u = spec.tan_value::<F>()?;
    let alpha = -F::sqrt2().div(&u)?;
    let lambda = F::sqrt2() * u;
    Tube::with_curvatures(spec.m, alpha, lambda)
}

impl<F: Field> Tube<F> {
    /// Shape operator `αξ⊗ξ + λ Σ e_i⊗e_i` at `N = e_0`; arbitrary `(α, λ)` so that
    /// corrupted tubes can be built for negative controls.
    pub fn with_curvatures(m: usize, alpha: F, lambda: F) -> Result<Self> {
        let q = QuadricPoint::<F>::new(m)?;
        let a = q.base_conjugation();
        let n = q.e(0);
        let xi = -&q.apply_j(&n);
        let t_lambda: Vec<_> = (1..m).map(|i| q.e(i)).collect();
        let t_mu: Vec<_> = (1..m).map(|i| q.je(i)).collect();
        let mut s = Matrix::outer(&xi, &xi).scale(&alpha);
        for v in &t_lambda {
            s = &s + &Matrix::outer(v, v).scale(&lambda);
        }
        let point = HypersurfacePoint::new(q, a, n, s)?;
        Ok(Self { point, alpha, lambda, mu: F::zero(), t_alpha: vec![xi], t_lambda, t_mu })
    }

    pub fn m(&self) -> usize {
        self.point.quadric().m()
    }

    /// Basis of `𝒞`: `T_λ` then `T_μ`.
    pub fn horizontal_basis(&self) -> Vec<Vector<F>> {
        self.t_lambda.iter().chain(&self.t_mu).cloned().collect()
    }

    /// Eigenbasis of `TM` in the order `ξ`, `T_λ`, `T_μ`.
    pub fn tangent_basis(&self) -> Vec<Vector<F>> {
        self.t_alpha.iter().chain(&self.t_lambda).chain(&self.t_mu).cloned().collect()
    }

    /// `δ = −1/α`.
    pub fn delta(&self) -> Result<F> {
        F::one().div(&self.alpha).map(|x| -x)
    }

    /// `α − (m−1)·2/α`.
    pub fn expected_trace(&self) -> Result<F> {
        let two_over_alpha = F::from_i64(2).div(&self.alpha)?;
        Ok(self.alpha.clone() - F::from_i64(self.m() as i64 - 1) * two_over_alpha)
    }

    /// `(α, 1), (λ, m−1), (μ, m−1)`.
    pub fn expected_table(&self) -> Vec<(F, usize)> {
        let k = self.m() - 1;
        vec![(self.alpha.clone(), 1), (self.lambda.clone(), k), (self.mu.clone(), k)]
    }
}
