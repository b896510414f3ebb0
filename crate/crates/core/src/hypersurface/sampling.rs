//! Seeded float generators for normals and shape operators in the classes the
//! classification arguments quantify over.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::HypersurfacePoint;
use crate::error::{Error, Result};
use crate::field::{gram_schmidt, Matrix, Vector};
use crate::quadric::{Conjugation, QuadricPoint};

/// Range of generic eigenvalues.
pub const EIGEN_RANGE: f64 = 3.0;
/// Half-width of the exclusion band around special eigenvalues.
pub const EXCLUSION: f64 = 0.05;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut impl Rng, n: usize) -> Vector<f64> {
    Vector::new((0..n).map(|_| rng.sample(StandardNormal)).collect())
}

pub fn unit_vector(rng: &mut impl Rng, n: usize) -> Vector<f64> {
    loop {
        let v = gaussian_vector(rng, n);
        if v.norm() > 1e-3 {
            return v.normalized();
        }
    }
}

pub fn symmetric(rng: &mut impl Rng, n: usize) -> Matrix<f64> {
    let g = Matrix::from_fn(n, n, |_, _| rng.gen_range(-EIGEN_RANGE..EIGEN_RANGE));
    Matrix::from_fn(n, n, |i, j| 0.5 * (g[(i, j)] + g[(j, i)]))
}

/// Uniform on `[−3, 3]`, at least [`EXCLUSION`] away from every value in `avoid`.
pub fn generic_eigenvalue(rng: &mut impl Rng, avoid: &[f64]) -> f64 {
    loop {
        let x = rng.gen_range(-EIGEN_RANGE..EIGEN_RANGE);
        if avoid.iter().all(|a| (x - a).abs() >= EXCLUSION) {
            return x;
        }
    }
}

/// Orthonormalizes `vs` against `fixed` (assumed orthonormal) and each other.
fn complete(fixed: &[Vector<f64>], vs: Vec<Vector<f64>>) -> Result<Vec<Vector<f64>>> {
    let all: Vec<_> = fixed.iter().cloned().chain(vs).collect();
    Ok(gram_schmidt(&all)?.split_off(fixed.len()))
}

/// Random orthonormal `Z₁, Z₂ ∈ V(A)`.
pub fn frame_in_fixed_space(rng: &mut impl Rng, a: &Conjugation<f64>) -> Result<(Vector<f64>, Vector<f64>)> {
    let n = a.matrix().rows();
    let proj = |v: Vector<f64>| (&v + &a.apply(&v)).scale(&0.5);
    let vs = vec![proj(gaussian_vector(rng, n)), proj(gaussian_vector(rng, n))];
    let z = gram_schmidt(&vs)?;
    Ok((z[0].clone(), z[1].clone()))
}

/// A normal planted at angle `t` for a random conjugation of the family.
#[derive(Clone, Debug)]
pub struct PlantedNormal {
    pub conj: Conjugation<f64>,
    pub theta: f64,
    pub t: f64,
    pub normal: Vector<f64>,
}

pub fn planted_normal(rng: &mut impl Rng, q: &QuadricPoint<f64>, t: f64) -> Result<PlantedNormal> {
    let theta = rng.gen_range(0.0..TAU);
    let conj = q.conjugation_angle(theta);
    let (z1, z2) = frame_in_fixed_space(rng, &conj)?;
    let normal = q.singular_vector(t.cos(), t.sin(), &z1, &z2, &conj)?;
    Ok(PlantedNormal { conj, theta, t, normal })
}

/// The conjugation of the family adapted to `n`, i.e. with `g(Aξ, N) = 0` and `g(AN, N) = cos 2t ≥ 0`.
pub fn adapted_conjugation(q: &QuadricPoint<f64>, n: &Vector<f64>) -> Result<Conjugation<f64>> {
    Ok(q.conjugation_angle(q.classify(n)?.best_theta))
}

pub fn random_t(rng: &mut impl Rng) -> f64 {
    rng.gen_range(0.0..=FRAC_PI_4)
}

fn projector_onto(basis: &[Vector<f64>], n: usize) -> Matrix<f64> {
    basis.iter().fold(Matrix::zeros(n, n), |acc, v| &acc + &Matrix::outer(v, v))
}

/// `αξ⊗ξ + Σ s_ij v_i⊗v_j` for a random symmetric `s` on the span of `basis`.
fn hopf_shape(rng: &mut impl Rng, xi: &Vector<f64>, alpha: f64, basis: &[Vector<f64>]) -> Matrix<f64> {
    let n = xi.dim();
    let b = Matrix::from_columns(basis);
    let s = symmetric(rng, basis.len());
    let block = if basis.is_empty() { Matrix::zeros(n, n) } else { &(&b * &s) * &b.transpose() };
    &Matrix::outer(xi, xi).scale(&alpha) + &block
}

fn orthonormal_complement(rng: &mut impl Rng, fixed: &[Vector<f64>], n: usize) -> Result<Vec<Vector<f64>>> {
    let p = &Matrix::identity(n) - &projector_onto(fixed, n);
    let vs = (0..n - fixed.len()).map(|_| p.apply(&gaussian_vector(rng, n))).collect();
    complete(fixed, vs)
}

/// Hopf point at a random normal with angle `t`: `S = αξ⊗ξ` plus a random symmetric block on `𝒞`.
pub fn hopf_point(rng: &mut impl Rng, q: &QuadricPoint<f64>, t: f64, alpha: f64) -> Result<HypersurfacePoint<f64>> {
    let p = planted_normal(rng, q, t)?;
    let xi = -&q.apply_j(&p.normal);
    let c = orthonormal_complement(rng, &[p.normal.clone(), xi.clone()], q.dim())?;
    let s = hopf_shape(rng, &xi, alpha, &c);
    HypersurfacePoint::new(q.clone(), p.conj, p.normal, s)
}

/// Orthonormal basis of `𝒬 = {N, ξ, Aξ, AN}^⊥` at an isotropic normal, arranged as pairs `(v, φv)`.
pub fn phi_closed_basis(rng: &mut impl Rng, h: &HypersurfacePoint<f64>) -> Result<Vec<(Vector<f64>, Vector<f64>)>> {
    let q = h.quadric();
    let n = h.dim();
    let mut fixed = vec![h.normal().clone(), h.xi().clone(), h.a_xi().clone(), h.a_n().clone()];
    let mut pairs = Vec::new();
    while fixed.len() < n {
        let v = complete(&fixed, vec![gaussian_vector(rng, n)])?.remove(0);
        let w = h.phi().apply(&v);
        fixed.push(v.clone());
        fixed.push(q.apply_j(&v));
        pairs.push((v, w));
    }
    Ok(pairs)
}

fn isotropic_base(rng: &mut impl Rng, m: usize) -> Result<HypersurfacePoint<f64>> {
    let q = QuadricPoint::<f64>::new(m)?;
    let p = planted_normal(rng, &q, FRAC_PI_4)?;
    HypersurfacePoint::new(q, p.conj, p.normal, Matrix::zeros(2 * m, 2 * m))
}

/// The φ-partner value `(αλ + 2)/(2λ − α)`.
pub fn phi_partner(alpha: f64, lambda: f64) -> f64 {
    (alpha * lambda + 2.0) / (2.0 * lambda - alpha)
}

/// Isotropic Hopf point with `SAξ = SAN = 0` and `S` diagonal on a φ-closed basis of `𝒬`,
/// partners tied by [`phi_partner`]. Eigenvalues avoid `α/2` (where the partner is undefined) and `0`.
pub fn isotropic_hopf_paired(rng: &mut impl Rng, m: usize, alpha: f64) -> Result<HypersurfacePoint<f64>> {
    let base = isotropic_base(rng, m)?;
    let pairs = phi_closed_basis(rng, &base)?;
    let xi = base.xi().clone();
    let mut s = Matrix::outer(&xi, &xi).scale(&alpha);
    for (v, w) in &pairs {
        let lambda = generic_eigenvalue(rng, &[alpha / 2.0, 0.0]);
        let mu = phi_partner(alpha, lambda);
        s = &s + &Matrix::outer(v, v).scale(&lambda);
        s = &s + &Matrix::outer(w, w).scale(&mu);
    }
    HypersurfacePoint::new(base.quadric().clone(), base.conjugation().clone(), base.normal().clone(), s)
}

/// Isotropic Hopf point with `SAξ = SAN = 0` and a fully random symmetric block on `𝒬`.
pub fn isotropic_hopf_projected(rng: &mut impl Rng, m: usize, alpha: f64) -> Result<HypersurfacePoint<f64>> {
    let base = isotropic_base(rng, m)?;
    let q_basis: Vec<_> = phi_closed_basis(rng, &base)?.into_iter().flat_map(|(v, w)| [v, w]).collect();
    let s = hopf_shape(rng, base.xi(), alpha, &q_basis);
    HypersurfacePoint::new(base.quadric().clone(), base.conjugation().clone(), base.normal().clone(), s)
}

/// Bases of `V(A) ∩ 𝒞` and `JV(A) ∩ 𝒞` at a principal normal.
fn principal_blocks(rng: &mut impl Rng, q: &QuadricPoint<f64>, p: &PlantedNormal) -> Result<(Vec<Vector<f64>>, Vec<Vector<f64>>)> {
    let n = q.dim();
    let m = q.m();
    let vs = (0..m - 1)
        .map(|_| {
            let v = gaussian_vector(rng, n);
            (&v + &p.conj.apply(&v)).scale(&0.5)
        })
        .collect();
    let real = complete(&[p.normal.clone()], vs)?;
    let imag = real.iter().map(|v| q.apply_j(v)).collect();
    Ok((real, imag))
}

/// Principal normal with a Hopf `S` commuting with `A` (block diagonal on `V(A)∩𝒞 ⊕ JV(A)∩𝒞`).
/// With `coupling ≠ 0` a term `c(v₁⊗Jv₂ + Jv₂⊗v₁)` breaks the commutation.
pub fn principal_hopf(rng: &mut impl Rng, m: usize, alpha: f64, coupling: f64) -> Result<HypersurfacePoint<f64>> {
    let q = QuadricPoint::<f64>::new(m)?;
    let p = planted_normal(rng, &q, 0.0)?;
    let (real, imag) = principal_blocks(rng, &q, &p)?;
    let xi = -&q.apply_j(&p.normal);
    let mut s = hopf_shape(rng, &xi, alpha, &real);
    s = &s + &hopf_shape(rng, &xi, 0.0, &imag);
    if coupling != 0.0 {
        let (v, w) = (&real[0], &imag[1]);
        s = &s + &(&Matrix::outer(v, w) + &Matrix::outer(w, v)).scale(&coupling);
    }
    HypersurfacePoint::new(q, p.conj, p.normal, s)
}

/// Regular normal with prescribed `β = g(Aξ, ξ) ∈ (−1, 1) \ {0}` and a Hopf `S` with `SAξ = αβξ`.
/// Positive `β` uses the antipodal conjugation `−A`, since `β = −cos 2t ≤ 0` for the adapted one.
pub fn reeb_partner_point(rng: &mut impl Rng, m: usize, beta: f64, alpha: f64) -> Result<HypersurfacePoint<f64>> {
    if !(beta.abs() < 1.0 && beta != 0.0) {
        return Err(Error::Precondition(format!("need 0 < |β| < 1, got {beta}")));
    }
    let q = QuadricPoint::<f64>::new(m)?;
    let t = 0.5 * beta.abs().acos();
    let p = planted_normal(rng, &q, t)?;
    let conj = if beta > 0.0 { q.conjugation_angle(p.theta + PI) } else { p.conj.clone() };
    let xi = -&q.apply_j(&p.normal);
    let a_xi = conj.apply(&xi);
    let w = a_xi.axpy(&-a_xi.dot(&xi), &xi);
    let fixed = [p.normal.clone(), xi.clone(), w.normalized()];
    let rest = orthonormal_complement(rng, &fixed, q.dim())?;
    let s = hopf_shape(rng, &xi, alpha, &rest);
    HypersurfacePoint::new(q, conj, p.normal, s)
}
