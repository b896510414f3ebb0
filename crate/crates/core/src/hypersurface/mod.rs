//! Pointwise data of a real hypersurface in `Q^m`.
//!
//! Tangential operators are full `2m × 2m` matrices that annihilate the unit
//! normal `N` and map `N^⊥` to itself; no tangent frame is chosen.

mod eigenstructure;
pub mod sampling;
mod tube;

pub use eigenstructure::{EigenCluster, EigenStructure};
pub use tube::{build_tube, Tube, TubeParam, TubeSpec};

use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Vector};
use crate::quadric::{Conjugation, QuadricPoint, UNIT_TOL};

/// Float tolerance for the structural checks run at construction.
pub const STRUCTURE_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct HypersurfacePoint<F> {
    quadric: QuadricPoint<F>,
    conj: Conjugation<F>,
    normal: Vector<F>,
    shape: Matrix<F>,
    xi: Vector<F>,
    /// Orthogonal projection onto `TM = N^⊥`.
    proj: Matrix<F>,
    phi: Matrix<F>,
    b: Matrix<F>,
    a_xi: Vector<F>,
    a_n: Vector<F>,
    alpha: F,
    beta: F,
}

impl<F: Field> HypersurfacePoint<F> {
    pub fn new(quadric: QuadricPoint<F>, conj: Conjugation<F>, normal: Vector<F>, shape: Matrix<F>) -> Result<Self> {
        let n = quadric.dim();
        if normal.dim() != n || shape.shape() != (n, n) {
            return Err(Error::DimensionMismatch { op: "hypersurface", left: (n, n), right: shape.shape() });
        }
        let unit = normal.norm_sq() - F::one();
        if !unit.is_negligible(UNIT_TOL) {
            return Err(Error::Precondition(format!("normal must be unit (|N|² − 1 = {:e})", unit.to_f64())));
        }
        let scale = 1.0 + shape.max_abs();
        if !shape.is_symmetric(STRUCTURE_TOL * scale) {
            return Err(Error::NotSymmetric { asymmetry: shape.max_asymmetry() });
        }
        if !shape.apply(&normal).is_negligible(STRUCTURE_TOL * scale) {
            return Err(Error::Precondition("shape operator must annihilate the normal".into()));
        }

        let xi = -&quadric.apply_j(&normal);
        let proj = &Matrix::identity(n) - &Matrix::outer(&normal, &normal);
        let phi = &(&proj * quadric.j()) * &proj;
        let b = &(&proj * conj.matrix()) * &proj;
        let a_xi = conj.apply(&xi);
        let a_n = conj.apply(&normal);
        if !a_xi.dot(&normal).is_negligible(STRUCTURE_TOL) {
            return Err(Error::Precondition(
                "conjugation is not adapted to the normal: g(Aξ, N) must vanish".into(),
            ));
        }
        let alpha = shape.apply(&xi).dot(&xi);
        let beta = a_xi.dot(&xi);
        let point = Self { quadric, conj, normal, shape, xi, proj, phi, b, a_xi, a_n, alpha, beta };
        let defect = point.structure_defect();
        if defect > STRUCTURE_TOL {
            return Err(Error::Precondition(format!("almost contact structure defect {defect:e}")));
        }
        Ok(point)
    }

    pub fn quadric(&self) -> &QuadricPoint<F> {
        &self.quadric
    }
    pub fn conjugation(&self) -> &Conjugation<F> {
        &self.conj
    }
    pub fn normal(&self) -> &Vector<F> {
        &self.normal
    }
    pub fn shape(&self) -> &Matrix<F> {
        &self.shape
    }
    pub fn xi(&self) -> &Vector<F> {
        &self.xi
    }
    pub fn phi(&self) -> &Matrix<F> {
        &self.phi
    }
    /// Tangential part `B` of the conjugation.
    pub fn b(&self) -> &Matrix<F> {
        &self.b
    }
    pub fn projector(&self) -> &Matrix<F> {
        &self.proj
    }
    pub fn a_xi(&self) -> &Vector<F> {
        &self.a_xi
    }
    pub fn a_n(&self) -> &Vector<F> {
        &self.a_n
    }
    /// Reeb curvature `g(Sξ, ξ)`.
    pub fn alpha(&self) -> &F {
        &self.alpha
    }
    /// `g(Aξ, ξ) = −g(AN, N)`.
    pub fn beta(&self) -> &F {
        &self.beta
    }
    pub fn dim(&self) -> usize {
        self.quadric.dim()
    }

    pub fn eta(&self, x: &Vector<F>) -> F {
        x.dot(&self.xi)
    }

    /// `ρ(X) = g(AX, N)`.
    pub fn rho(&self, x: &Vector<F>) -> F {
        self.conj.apply(x).dot(&self.normal)
    }

    pub fn tangent_part(&self, v: &Vector<F>) -> Vector<F> {
        v.axpy(&-v.dot(&self.normal), &self.normal)
    }

    pub fn is_tangent(&self, v: &Vector<F>, tol: f64) -> bool {
        v.dot(&self.normal).is_negligible(tol)
    }

    /// `φAξ`, the tangential vector with `AN = −φAξ − βN`.
    pub fn phi_a_xi(&self) -> Vector<F> {
        self.phi.apply(&self.a_xi)
    }

    /// Largest residual among the almost contact metric identities:
    /// `JX = φX + η(X)N`, `φξ = 0`, `η(ξ) = 1`, `φ² = −I + η⊗ξ` and
    /// `g(φX,φY) = g(X,Y) − η(X)η(Y)` on `TM`, `AX = BX + ρ(X)N`, `β = −g(AN,N)`.
    pub fn structure_defect(&self) -> f64 {
        let n = self.dim();
        let basis: Vec<Vector<F>> = (0..n).map(|k| self.proj.apply(&Vector::unit(n, k))).collect();
        let mut worst: f64 = 0.0;
        let mut note = |v: f64| worst = worst.max(v.abs());

        for x in &basis {
            let jx = self.quadric.apply_j(x);
            let split = self.phi.apply(x).axpy(&self.eta(x), &self.normal);
            note((&jx - &split).max_abs());
            let ax = self.conj.apply(x);
            let split = self.b.apply(x).axpy(&self.rho(x), &self.normal);
            note((&ax - &split).max_abs());
        }
        note(self.phi.apply(&self.xi).max_abs());
        note((self.eta(&self.xi) - F::one()).to_f64());
        note((self.beta.clone() + self.a_n.dot(&self.normal)).to_f64());

        let phi2 = &self.phi * &self.phi;
        let target = &(&Matrix::outer(&self.xi, &self.xi) - &Matrix::identity(n)) * &self.proj;
        note((&phi2 - &target).max_abs());
        let gram = &self.phi.transpose() * &self.phi;
        let target = &self.proj - &Matrix::outer(&self.xi, &self.xi);
        note((&gram - &target).max_abs());
        worst
    }

    /// `(Sξ ≈ αξ, α)`.
    pub fn is_hopf(&self, tol: f64) -> (bool, F) {
        let r = self.shape.apply(&self.xi).axpy(&-self.alpha.clone(), &self.xi);
        (r.is_negligible(tol), self.alpha.clone())
    }

    /// Least-squares `c` in `Sφ + φS ≈ 2cφ`: `trace((Sφ+φS)φᵀ) / (2 trace(φφᵀ))`.
    pub fn contact_scalar(&self) -> F {
        let sym = self.contact_operator();
        let num = (&sym * &self.phi.transpose()).trace();
        let den = F::from_i64(2) * (&self.phi * &self.phi.transpose()).trace();
        num.div(&den).expect("trace(φφᵀ) = 2m − 2 > 0")
    }

    /// `Sφ + φS`.
    pub fn contact_operator(&self) -> Matrix<F> {
        &(&self.shape * &self.phi) + &(&self.phi * &self.shape)
    }

    /// `Sφ + φS − 2cφ`.
    pub fn contact_defect(&self, c: &F) -> Matrix<F> {
        &self.contact_operator() - &self.phi.scale(&(F::from_i64(2) * c.clone()))
    }

    /// Contact iff `Sφ + φS = 2cφ` for a nonzero `c`.
    pub fn is_contact(&self, tol: f64) -> (bool, F) {
        let c = self.contact_scalar();
        let ok = self.contact_defect(&c).is_negligible(tol) && !c.is_negligible(tol);
        (ok, c)
    }

    fn check_tangent(&self, v: &Vector<F>, what: &str) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { op: "tangent", left: (self.dim(), 1), right: (v.dim(), 1) });
        }
        if !self.is_tangent(v, STRUCTURE_TOL * (1.0 + v.max_abs())) {
            return Err(Error::Precondition(format!("{what} must be tangent (orthogonal to N)")));
        }
        Ok(())
    }

    /// Gauss route: `R(X,Y)Z = (R̄(X,Y)Z)ᵀ + g(SY,Z)SX − g(SX,Z)SY`.
    pub fn induced_curvature(&self, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Result<Vector<F>> {
        self.check_tangent(x, "X")?;
        self.check_tangent(y, "Y")?;
        self.check_tangent(z, "Z")?;
        Ok(self.induced_curvature_unchecked(x, y, z))
    }

    fn induced_curvature_unchecked(&self, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>) -> Vector<F> {
        let ambient = self.quadric.curvature(&self.conj, x, y, z).expect("dimensions checked");
        let sx = self.shape.apply(x);
        let sy = self.shape.apply(y);
        self.tangent_part(&ambient).axpy(&sy.dot(z), &sx).axpy(&-sx.dot(z), &sy)
    }

    /// Builds the matrix of a tangential operator from its action on tangent vectors.
    fn tangential_operator(&self, f: impl Fn(&Vector<F>) -> Vector<F>) -> Matrix<F> {
        let n = self.dim();
        Matrix::from_linear_map(n, |e| f(&self.proj.apply(e)))
    }

    /// `R̄_N Y = Y + 3η(Y)ξ + g(AN,N)BY + g(AN,Y)φAξ − g(Aξ,Y)Aξ` on `TM`.
    pub fn normal_jacobi(&self) -> Matrix<F> {
        let gann = self.a_n.dot(&self.normal);
        let pax = self.phi_a_xi();
        let three = F::from_i64(3);
        self.tangential_operator(|y| {
            y.axpy(&(three.clone() * self.eta(y)), &self.xi)
                .axpy(&gann, &self.b.apply(y))
                .axpy(&self.a_n.dot(y), &pax)
                .axpy(&-self.a_xi.dot(y), &self.a_xi)
        })
    }

    /// Oracle for [`Self::normal_jacobi`]: `P·R̄_N·P` from the ambient curvature.
    pub fn normal_jacobi_projected(&self) -> Matrix<F> {
        let ambient = self.quadric.ambient_jacobi(&self.conj, &self.normal).expect("normal is unit");
        &(&self.proj * &ambient) * &self.proj
    }

    fn require_hopf(&self) -> Result<()> {
        let tol = STRUCTURE_TOL * (1.0 + self.shape.max_abs());
        if !self.is_hopf(tol).0 {
            return Err(Error::Precondition("structure Jacobi formula requires a Hopf hypersurface".into()));
        }
        Ok(())
    }

    /// `R_ξ Y = Y − η(Y)ξ + βBY − g(Aξ,Y)Aξ − g(φAξ,Y)φAξ + αSY − α²η(Y)ξ`; Hopf only.
    pub fn structure_jacobi(&self) -> Result<Matrix<F>> {
        self.require_hopf()?;
        let pax = self.phi_a_xi();
        let a2 = self.alpha.clone() * self.alpha.clone();
        Ok(self.tangential_operator(|y| {
            let eta = self.eta(y);
            y.axpy(&-(eta.clone() * (F::one() + a2.clone())), &self.xi)
                .axpy(&self.beta, &self.b.apply(y))
                .axpy(&-self.a_xi.dot(y), &self.a_xi)
                .axpy(&-pax.dot(y), &pax)
                .axpy(&self.alpha, &self.shape.apply(y))
        }))
    }

    /// Oracle for [`Self::structure_jacobi`]: `Y ↦ R(Y,ξ)ξ` via the Gauss route; valid for any `S`.
    pub fn structure_jacobi_gauss(&self) -> Matrix<F> {
        self.tangential_operator(|y| self.induced_curvature_unchecked(y, &self.xi, &self.xi))
    }

    /// Closed form of `R_X Y = R(Y,X)X` for `X ∈ 𝒞` (tangent with `η(X) = 0`).
    pub fn jacobi_rx(&self, x: &Vector<F>) -> Result<Matrix<F>> {
        self.check_tangent(x, "X")?;
        if !self.eta(x).is_negligible(STRUCTURE_TOL * (1.0 + x.max_abs())) {
            return Err(Error::Precondition("closed-form R_X requires X orthogonal to xi".into()));
        }
        let gxx = x.dot(x);
        let bx = self.b.apply(x);
        let gbxx = bx.dot(x);
        let phix = self.phi.apply(x);
        let phibx = self.phi.apply(&bx);
        let gphibxx = phibx.dot(x);
        let anx = self.a_n.dot(x);
        let sx = self.shape.apply(x);
        let gsxx = sx.dot(x);
        let three = F::from_i64(3);
        Ok(self.tangential_operator(|y| {
            let by = self.b.apply(y);
            let phiby = self.phi.apply(&by);
            let gphiby_x = phiby.dot(x);
            let xi_coeff = gphiby_x.clone() * anx.clone() - gphibxx.clone() * self.a_n.dot(y);
            y.scale(&gxx)
                .axpy(&-x.dot(y), x)
                .axpy(&-(three.clone() * x.dot(&self.phi.apply(y))), &phix)
                .axpy(&gbxx, &by)
                .axpy(&-bx.dot(y), &bx)
                .axpy(&gphibxx, &phiby)
                .axpy(&-gphiby_x, &phibx)
                .axpy(&xi_coeff, &self.xi)
                .axpy(&gsxx, &self.shape.apply(y))
                .axpy(&-self.shape.apply(y).dot(x), &sx)
        }))
    }

    /// `Y ↦ R(Y,X)X` via the Gauss route, for any tangent `X`.
    pub fn jacobi_rx_gauss(&self, x: &Vector<F>) -> Result<Matrix<F>> {
        self.check_tangent(x, "X")?;
        Ok(self.tangential_operator(|y| self.induced_curvature_unchecked(y, x, x)))
    }

    /// Vector form of the Hopf pointwise identity, `L(X, Y) = g(V(X), Y)` for tangent `Y`:
    /// `2SφSX − α(φS + Sφ)X − 2φX + 2g(X,AN)(Aξ − βξ) + 2g(X,Aξ)φAξ − 2βη(X)φAξ`.
    pub fn hopf_identity_vector(&self, x: &Vector<F>) -> Vector<F> {
        let two = F::from_i64(2);
        let sx = self.shape.apply(x);
        let phix = self.phi.apply(x);
        let phisx = self.phi.apply(&sx);
        let sphisx = self.shape.apply(&phisx);
        let sphix = self.shape.apply(&phix);
        let pax = self.phi_a_xi();
        let xan = self.a_n.dot(x);
        let axi_c = self.a_xi.axpy(&-self.beta.clone(), &self.xi);
        sphisx
            .scale(&two)
            .axpy(&-self.alpha.clone(), &(&phisx + &sphix))
            .axpy(&-two.clone(), &phix)
            .axpy(&(two.clone() * xan), &axi_c)
            .axpy(&(two.clone() * self.a_xi.dot(x)), &pax)
            .axpy(&-(two * self.beta.clone() * self.eta(x)), &pax)
    }

    /// The Hopf pointwise identity written out term by term as a bilinear form.
    pub fn hopf_identity_form(&self, x: &Vector<F>, y: &Vector<F>) -> F {
        let two = F::from_i64(2);
        let s = &self.shape;
        let phi = &self.phi;
        let a = self.alpha.clone();
        let g_sphisx_y = s.apply(&phi.apply(&s.apply(x))).dot(y);
        let g_sym_y = phi.apply(&s.apply(x)).dot(y) + s.apply(&phi.apply(x)).dot(y);
        let g_phix_y = phi.apply(x).dot(y);
        let (xan, yan) = (x.dot(&self.a_n), y.dot(&self.a_n));
        let (xaxi, yaxi) = (x.dot(&self.a_xi), y.dot(&self.a_xi));
        let xi_axi = self.xi.dot(&self.a_xi);
        two.clone() * g_sphisx_y - a * g_sym_y - two.clone() * g_phix_y
            + two.clone() * xan.clone() * yaxi
            - two.clone() * yan.clone() * xaxi
            - two.clone() * xan * xi_axi.clone() * self.eta(y)
            + two * yan * xi_axi * self.eta(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QSqrt2;

    fn principal_point(m: usize) -> HypersurfacePoint<QSqrt2> {
        let q = QuadricPoint::new(m).unwrap();
        let a = q.base_conjugation();
        let n = q.e(0);
        HypersurfacePoint::new(q, a, n, Matrix::zeros(2 * m, 2 * m)).unwrap()
    }

    fn isotropic_point(m: usize) -> HypersurfacePoint<QSqrt2> {
        let q: QuadricPoint<QSqrt2> = QuadricPoint::new(m).unwrap();
        let a = q.base_conjugation();
        let h = QSqrt2::from_parts(0, 1, 1, 2);
        let n = (&q.e(0) + &q.je(1)).scale(&h);
        HypersurfacePoint::new(q, a, n, Matrix::zeros(2 * m, 2 * m)).unwrap()
    }

    #[test]
    fn principal_normal_frame() {
        let h = principal_point(3);
        assert_eq!(h.xi(), &(-&h.quadric().je(0)));
        assert_eq!(h.a_xi(), &(-h.xi()));
        assert_eq!(h.structure_defect(), 0.0);
        assert!(h.phi().apply(h.xi()).is_negligible(0.0));
    }

    #[test]
    fn isotropic_normal_frame() {
        let h = isotropic_point(3);
        assert!(h.beta().is_zero());
        assert!(h.xi().dot(h.a_n()).is_zero());
        assert!(h.a_n().dot(h.normal()).is_zero());
        assert_eq!(h.structure_defect(), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        let q: QuadricPoint<f64> = QuadricPoint::new(3).unwrap();
        let a = q.base_conjugation();
        let s = Matrix::zeros(6, 6);
        assert!(HypersurfacePoint::new(q.clone(), a.clone(), q.e(0).scale(&2.0), s.clone()).is_err());
        let mut asym = s.clone();
        asym[(1, 2)] = 1.0;
        assert!(matches!(
            HypersurfacePoint::new(q.clone(), a.clone(), q.e(0), asym),
            Err(Error::NotSymmetric { .. })
        ));
        let mut normal_hit = s.clone();
        normal_hit[(0, 0)] = 1.0;
        assert!(HypersurfacePoint::new(q.clone(), a, q.e(0), normal_hit).is_err());
    }

    #[test]
    fn hopf_detection() {
        let q: QuadricPoint<f64> = QuadricPoint::new(3).unwrap();
        let a = q.base_conjugation();
        let n = q.e(0);
        let h = HypersurfacePoint::new(q.clone(), a.clone(), n.clone(), Matrix::zeros(6, 6)).unwrap();
        let identity_tm = h.projector().clone();
        let h = HypersurfacePoint::new(q.clone(), a.clone(), n.clone(), identity_tm).unwrap();
        assert_eq!(h.is_hopf(1e-12), (true, 1.0));

        // Sξ = ξ + e₁: not Hopf
        let xi = h.xi().clone();
        let e1 = q.e(1);
        let mut s = Matrix::outer(&xi, &xi);
        s = &s + &Matrix::outer(&xi, &e1);
        s = &s + &Matrix::outer(&e1, &xi);
        let h = HypersurfacePoint::new(q, a, n, s).unwrap();
        let (hopf, alpha) = h.is_hopf(1e-12);
        assert!(!hopf);
        assert_eq!(alpha, 1.0);
        let resid = (&h.shape().apply(&xi) - &xi.scale(&alpha)).norm();
        assert!(resid > 0.5);
        assert!(h.structure_jacobi().is_err());
    }

    #[test]
    fn zero_shape_is_not_contact() {
        let h = principal_point(3);
        let (ok, c) = h.is_contact(0.0);
        assert!(!ok);
        assert!(c.is_zero());
    }

    #[test]
    fn b_squared_identity_exact() {
        for h in [principal_point(3), isotropic_point(4)] {
            let n = h.dim();
            let pax = h.phi_a_xi();
            for k in 0..n {
                let y = h.projector().apply(&Vector::unit(n, k));
                let lhs = h.b().apply(&h.b().apply(&y));
                let rhs = y.axpy(&h.a_n().dot(&y), &pax);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn isotropic_normal_jacobi_kernel() {
        let h = isotropic_point(3);
        let rn = h.normal_jacobi();
        assert!(rn.apply(h.a_xi()).is_negligible(0.0));
        assert!(rn.apply(h.a_n()).is_negligible(0.0));
        assert_eq!(rn.apply(h.xi()), h.xi().scale(&QSqrt2::from_ratio(4, 1)));
        assert_eq!(rn, h.normal_jacobi_projected());
    }

    #[test]
    fn induced_curvature_rejects_normal_input() {
        let h = principal_point(3);
        let n = h.normal().clone();
        assert!(h.induced_curvature(&n, h.xi(), h.xi()).is_err());
        let x = h.quadric().e(1);
        assert!(h.induced_curvature(&x, &x, h.xi()).unwrap().is_negligible(0.0));
    }

    #[test]
    fn rx_requires_horizontal_direction() {
        let h = principal_point(3);
        assert!(h.jacobi_rx(&h.xi().clone()).is_err());
        assert!(h.jacobi_rx_gauss(&h.xi().clone()).is_ok());
    }

    mod oracles {
        use super::super::sampling::{self, rng};
        use super::super::*;
        use crate::field::Vector;
        use proptest::prelude::*;

        fn rel(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
            (a - b).frobenius_norm_f64() / (1.0 + a.frobenius_norm_f64())
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn formula_routes_match(seed in any::<u64>(), m in 3usize..6, t in 0.0f64..=std::f64::consts::FRAC_PI_4, alpha in -3.0f64..3.0) {
                let q = QuadricPoint::<f64>::new(m).unwrap();
                let h = sampling::hopf_point(&mut rng(seed), &q, t, alpha).unwrap();
                prop_assert!(rel(&h.normal_jacobi(), &h.normal_jacobi_projected()) < 1e-12);
                prop_assert!(rel(&h.structure_jacobi().unwrap(), &h.structure_jacobi_gauss()) < 1e-12);
                let x = h.projector().apply(&sampling::gaussian_vector(&mut rng(seed ^ 1), 2 * m));
                let x = x.axpy(&-h.eta(&x), h.xi());
                prop_assert!(rel(&h.jacobi_rx(&x).unwrap(), &h.jacobi_rx_gauss(&x).unwrap()) < 1e-12);
                let b2 = h.b() * h.b();
                let pax = h.phi_a_xi();
                let want = &h.projector().clone() + &Matrix::outer(&pax, h.a_n());
                prop_assert!(rel(&(&b2 * h.projector()), &(&want * h.projector())) < 1e-12);
                let v = h.hopf_identity_vector(&x);
                let y = h.projector().apply(&sampling::gaussian_vector(&mut rng(seed ^ 2), 2 * m));
                prop_assert!((v.dot(&y) - h.hopf_identity_form(&x, &y)).abs() < 1e-10 * (1.0 + v.norm() * y.norm()));
            }
        }

        #[test]
        fn tube_identity_and_tables_exact() {
            use crate::field::QSqrt2;
            use num_bigint::BigInt;
            use num_rational::BigRational;
            let u = BigRational::new(BigInt::from(3), BigInt::from(2));
            let t: Tube<QSqrt2> = build_tube(&TubeSpec::tan_ratio(3, u).unwrap()).unwrap();
            let h = &t.point;
            for x in t.tangent_basis() {
                assert!(h.hopf_identity_vector(&x).is_negligible(0.0));
            }
            let rn = h.normal_jacobi();
            let rxi = h.structure_jacobi().unwrap();
            assert!(rn.commutator(&rxi).unwrap().is_negligible(0.0));
            for x in t.horizontal_basis() {
                let rx = h.jacobi_rx(&x).unwrap();
                assert_eq!(rx, h.jacobi_rx_gauss(&x).unwrap());
                assert!(rn.commutator(&rx).unwrap().is_negligible(0.0));
            }
            let two = QSqrt2::from_ratio(2, 1);
            let al = &t.alpha * &t.lambda;
            for y in &t.t_lambda {
                assert_eq!(rn.apply(y), y.scale(&two));
                assert_eq!(rxi.apply(y), y.scale(&al));
            }
            for y in &t.t_mu {
                assert!(rn.apply(y).is_negligible(0.0));
                assert_eq!(rxi.apply(y), y.scale(&two));
            }
            let _ = Vector::<QSqrt2>::zeros(1);
        }
    }
}
