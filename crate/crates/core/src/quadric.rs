//! Pointwise model of a tangent space of the complex quadric `Q^m`.
//!
//! The tangent space is `ℝ^{2m}` with the dot product. Basis convention:
//! `e_0..e_{m-1}` span `V(A₀)` and `e_m..e_{2m-1}` are their images under `J`,
//! so `J e_i = e_{m+i}`, `J e_{m+i} = −e_i`, and `A₀ = diag(I_m, −I_m)`.

use std::f64::consts::FRAC_PI_4;

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Vector};

/// Float tolerance for unit-length and orthonormality preconditions.
pub const UNIT_TOL: f64 = 1e-12;
/// Width of the principal and isotropic bands on `cos 2t`.
pub const SINGULAR_BAND: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct QuadricPoint<F> {
    m: usize,
    j: Matrix<F>,
    a0: Matrix<F>,
}

/// A real structure `A_θ = (cos θ·I + sin θ·J)·A₀` from the circle of conjugations.
#[derive(Clone, Debug)]
pub struct Conjugation<F> {
    cos: F,
    sin: F,
    matrix: Matrix<F>,
}

impl<F: Field> Conjugation<F> {
    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn cos(&self) -> &F {
        &self.cos
    }

    pub fn sin(&self) -> &F {
        &self.sin
    }

    pub fn apply(&self, v: &Vector<F>) -> Vector<F> {
        self.matrix.apply(v)
    }

    /// Dimension of the `+1` eigenspace `V(A)`.
    pub fn fixed_dim(&self, tol: f64) -> usize {
        let n = self.matrix.rows();
        n - (&self.matrix - &Matrix::identity(n)).rank(tol)
    }

    pub fn fixes(&self, v: &Vector<F>, tol: f64) -> bool {
        (&self.apply(v) - v).is_negligible(tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularType {
    Principal,
    Isotropic,
    /// `0 < t < π/4`.
    Regular(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Singularity {
    pub kind: SingularType,
    /// Angle of the conjugation in the family maximizing `g(A_θ N, N)`.
    pub best_theta: f64,
    pub cos2t: f64,
    /// Set when `g(A₀N,N) = g(JA₀N,N) = 0`, so no angle is distinguished and `best_theta` is 0 by convention.
    pub theta_degenerate: bool,
}

impl<F: Field> QuadricPoint<F> {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::DimensionTooSmall(m));
        }
        let n = 2 * m;
        let j = Matrix::from_fn(n, n, |r, c| {
            if r == c + m && c < m {
                F::one()
            } else if c == r + m && r < m {
                -F::one()
            } else {
                F::zero()
            }
        });
        let a0 = Matrix::from_fn(n, n, |r, c| match (r == c, r < m) {
            (true, true) => F::one(),
            (true, false) => -F::one(),
            _ => F::zero(),
        });
        Ok(Self { m, j, a0 })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn j(&self) -> &Matrix<F> {
        &self.j
    }

    pub fn base_matrix(&self) -> &Matrix<F> {
        &self.a0
    }

    pub fn apply_j(&self, v: &Vector<F>) -> Vector<F> {
        let m = self.m;
        Vector::new((0..2 * m).map(|i| if i < m { -v[i + m].clone() } else { v[i - m].clone() }).collect())
    }

    /// `e_i ∈ V(A₀)` for `i < m`.
    pub fn e(&self, i: usize) -> Vector<F> {
        assert!(i < self.m);
        Vector::unit(self.dim(), i)
    }

    /// `J e_i`.
    pub fn je(&self, i: usize) -> Vector<F> {
        assert!(i < self.m);
        Vector::unit(self.dim(), self.m + i)
    }

    pub fn base_conjugation(&self) -> Conjugation<F> {
        Conjugation { cos: F::one(), sin: F::zero(), matrix: self.a0.clone() }
    }

    /// The conjugation with `(cos θ, sin θ) = (c, s)`; requires `c² + s² = 1`.
    pub fn conjugation_at(&self, c: F, s: F) -> Result<Conjugation<F>> {
        let defect = c.clone() * c.clone() + s.clone() * s.clone() - F::one();
        if !defect.is_negligible(UNIT_TOL) {
            return Err(Error::InvalidArgument(format!(
                "(cos θ, sin θ) must lie on the unit circle, c² + s² − 1 = {:e}",
                defect.to_f64()
            )));
        }
        let rot = &Matrix::identity(self.dim()).scale(&c) + &self.j.scale(&s);
        let matrix = &rot * &self.a0;
        Ok(Conjugation { cos: c, sin: s, matrix })
    }

    fn check_dim(&self, v: &Vector<F>, op: &'static str) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { op, left: (self.dim(), 1), right: (v.dim(), 1) });
        }
        Ok(())
    }

    fn check_unit(&self, v: &Vector<F>, what: &str) -> Result<()> {
        let d = v.norm_sq() - F::one();
        if !d.is_negligible(UNIT_TOL) {
            return Err(Error::Precondition(format!("{what} must be a unit vector (|v|² − 1 = {:e})", d.to_f64())));
        }
        Ok(())
    }

    /// `W = cos(t) Z₁ + sin(t) J Z₂` for orthonormal `Z₁, Z₂ ∈ V(A)` and `0 ≤ t ≤ π/4`,
    /// with the angle given as the pair `(cos t, sin t)`.
    pub fn singular_vector(
        &self,
        cos_t: F,
        sin_t: F,
        z1: &Vector<F>,
        z2: &Vector<F>,
        a: &Conjugation<F>,
    ) -> Result<Vector<F>> {
        self.check_dim(z1, "singular_vector")?;
        self.check_dim(z2, "singular_vector")?;
        let circle = cos_t.clone() * cos_t.clone() + sin_t.clone() * sin_t.clone() - F::one();
        let (c, s) = (cos_t.to_f64(), sin_t.to_f64());
        if !circle.is_negligible(UNIT_TOL) || s < -UNIT_TOL || c + UNIT_TOL < s {
            return Err(Error::InvalidArgument("t must satisfy 0 <= t <= pi/4".into()));
        }
        let orthonormal = (z1.norm_sq() - F::one()).is_negligible(UNIT_TOL)
            && (z2.norm_sq() - F::one()).is_negligible(UNIT_TOL)
            && z1.dot(z2).is_negligible(UNIT_TOL);
        if !orthonormal {
            return Err(Error::Precondition("Z1, Z2 must be orthonormal".into()));
        }
        if !a.fixes(z1, UNIT_TOL) || !a.fixes(z2, UNIT_TOL) {
            return Err(Error::Precondition("Z1, Z2 must lie in V(A)".into()));
        }
        Ok(z1.scale(&cos_t).axpy(&sin_t, &self.apply_j(z2)))
    }

    /// Recovers `cos 2t = max_θ g(A_θ N, N)` and the singular type of a unit vector.
    pub fn classify(&self, n: &Vector<F>) -> Result<Singularity> {
        self.check_dim(n, "classify")?;
        self.check_unit(n, "N")?;
        let a0n = self.a0.apply(n);
        let a = a0n.dot(n);
        let b = self.apply_j(&a0n).dot(n);
        let r2 = a.clone() * a.clone() + b.clone() * b.clone();
        let (af, bf) = (a.to_f64(), b.to_f64());
        let cos2t = r2.to_f64().max(0.0).sqrt().min(1.0);
        let isotropic = if F::MODE == crate::field::Mode::Exact { r2.is_zero() } else { cos2t <= SINGULAR_BAND };
        let principal = if F::MODE == crate::field::Mode::Exact {
            (r2 - F::one()).is_zero()
        } else {
            (cos2t - 1.0).abs() <= SINGULAR_BAND
        };
        let kind = if principal {
            SingularType::Principal
        } else if isotropic {
            SingularType::Isotropic
        } else {
            SingularType::Regular(0.5 * cos2t.acos())
        };
        let theta_degenerate = a.is_zero() && b.is_zero() || (F::MODE == crate::field::Mode::Float && isotropic);
        let best_theta = if theta_degenerate { 0.0 } else { bf.atan2(af) };
        Ok(Singularity { kind, best_theta, cos2t, theta_degenerate })
    }

    /// The ambient curvature tensor `R̄(X,Y)Z`, all nine terms.
    pub fn curvature(&self, a: &Conjugation<F>, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Result<Vector<F>> {
        for v in [x, y, z] {
            self.check_dim(v, "curvature")?;
        }
        let jx = self.apply_j(x);
        let jy = self.apply_j(y);
        let jz = self.apply_j(z);
        let ax = a.apply(x);
        let ay = a.apply(y);
        let jax = self.apply_j(&ax);
        let jay = self.apply_j(&ay);
        let two = F::from_i64(2);
        let out = x
            .scale(&y.dot(z))
            .axpy(&-x.dot(z), y)
            .axpy(&jy.dot(z), &jx)
            .axpy(&-jx.dot(z), &jy)
            .axpy(&-(two * jx.dot(y)), &jz)
            .axpy(&ay.dot(z), &ax)
            .axpy(&-ax.dot(z), &ay)
            .axpy(&jay.dot(z), &jax)
            .axpy(&-jax.dot(z), &jay);
        Ok(out)
    }

    /// Matrix of `U ↦ R̄(U,N)N` on the full tangent space.
    pub fn ambient_jacobi(&self, a: &Conjugation<F>, n: &Vector<F>) -> Result<Matrix<F>> {
        self.check_dim(n, "ambient_jacobi")?;
        self.check_unit(n, "N")?;
        let cols = (0..self.dim())
            .map(|k| self.curvature(a, &Vector::unit(self.dim(), k), n, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols))
    }

    /// Closed form `U − g(U,N)N + 3g(U,ξ)ξ + g(AN,N)AU − g(AN,U)AN + g(JAN,N)JAU − g(Aξ,U)Aξ`
    /// with `ξ = −JN`, assembled from outer products rather than curvature evaluations.
    pub fn ambient_jacobi_closed_form(&self, a: &Conjugation<F>, n: &Vector<F>) -> Result<Matrix<F>> {
        self.check_dim(n, "ambient_jacobi")?;
        let xi = -&self.apply_j(n);
        let an = a.apply(n);
        let axi = a.apply(&xi);
        let three = F::from_i64(3);
        let mut out = &Matrix::identity(self.dim()) - &Matrix::outer(n, n);
        out = &out + &Matrix::outer(&xi, &xi).scale(&three);
        out = &out + &a.matrix.scale(&an.dot(n));
        out = &out - &Matrix::outer(&an, &an);
        let jan = self.apply_j(&an);
        out = &out + &(&self.j * &a.matrix).scale(&jan.dot(n));
        out = &out - &Matrix::outer(&axi, &axi);
        Ok(out)
    }
}

impl QuadricPoint<f64> {
    pub fn conjugation_angle(&self, theta: f64) -> Conjugation<f64> {
        self.conjugation_at(theta.cos(), theta.sin()).expect("angle lies on the unit circle")
    }

    /// [`QuadricPoint::singular_vector`] with the angle `t` in radians.
    pub fn singular_vector_at(
        &self,
        t: f64,
        z1: &Vector<f64>,
        z2: &Vector<f64>,
        a: &Conjugation<f64>,
    ) -> Result<Vector<f64>> {
        if !(0.0..=FRAC_PI_4 + 1e-15).contains(&t) {
            return Err(Error::InvalidArgument(format!("t = {t} outside [0, pi/4]")));
        }
        self.singular_vector(t.cos(), t.sin(), z1, z2, a)
    }
}
