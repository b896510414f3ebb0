//! Checks on the two singular branches and on regular normals.

use std::f64::consts::PI;

use rand::Rng;

use super::{anchor, params, CheckDef, Note, Recorder, Tally, NONCOMMUTING_FLOOR};
use crate::error::Result;
use crate::field::{Field, Matrix, Mode, QSqrt2, Vector};
use crate::hypersurface::sampling::{self, rng};
use crate::hypersurface::HypersurfacePoint;
use crate::quadric::QuadricPoint;

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            name: "isotropic.lemma-constraints",
            anchors: &[anchor::ISOTROPIC_CONSTRAINTS, anchor::PHI_PARTNER],
            run: lemma_constraints,
        },
        CheckDef { name: "isotropic.vanishing-reeb", anchors: &[anchor::ISOTROPIC_EQUIVALENCE], run: vanishing_reeb },
        CheckDef { name: "isotropic.non-commuting", anchors: &[anchor::ISOTROPIC_EQUIVALENCE], run: non_commuting },
        CheckDef {
            name: "isotropic.forced-contradiction",
            anchors: &[anchor::ISOTROPIC_EQUIVALENCE],
            run: forced_contradiction,
        },
        CheckDef {
            name: "principal.commuting",
            anchors: &[anchor::PRINCIPAL_OPERATORS, anchor::PRINCIPAL_COMMUTING_SHAPE],
            run: principal_commuting,
        },
        CheckDef { name: "commuting.xi-slot", anchors: &[anchor::REEB_SLOT], run: xi_slot },
        CheckDef { name: "regular.reeb-partner", anchors: &[anchor::REEB_PARTNER], run: reeb_partner },
    ]
}

fn ms(m: usize) -> (&'static str, String) {
    ("m", m.to_string())
}

fn small_exact(r: &mut impl Rng) -> QSqrt2 {
    QSqrt2::from_parts(r.gen_range(-4..=4), r.gen_range(1..=3), r.gen_range(-2..=2), r.gen_range(1..=3))
}

fn sym_block(r: &mut impl Rng, basis: &[Vector<QSqrt2>], n: usize) -> Matrix<QSqrt2> {
    let mut s = Matrix::zeros(n, n);
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let mut term = Matrix::outer(&basis[i], &basis[j]);
            if i != j {
                term = &term + &Matrix::outer(&basis[j], &basis[i]);
            }
            s = &s + &term.scale(&small_exact(r));
        }
    }
    s
}

/// Isotropic normal `(e₀ + Je₁)/√2` with base conjugation. Here `𝒬` is spanned by
/// `eᵢ, Jeᵢ` for `i ≥ 2` and `φeᵢ = Jeᵢ`. With `paired`, `S` is diagonal with
/// φ-partner values; otherwise its `𝒬` block is random.
fn exact_isotropic(r: &mut impl Rng, m: usize, alpha: QSqrt2, paired: bool) -> Result<HypersurfacePoint<QSqrt2>> {
    let q = QuadricPoint::<QSqrt2>::new(m)?;
    let h = QSqrt2::from_parts(0, 1, 1, 2);
    let n = (&q.e(0) + &q.je(1)).scale(&h);
    let xi = -&q.apply_j(&n);
    let mut s = Matrix::outer(&xi, &xi).scale(&alpha);
    if paired {
        let two = QSqrt2::from_ratio(2, 1);
        for i in 2..m {
            let lambda = loop {
                let l = QSqrt2::from_ratio(r.gen_range(-6..=6), r.gen_range(1..=3));
                if !(&two * &l - alpha.clone()).is_zero() {
                    break l;
                }
            };
            let mu = (&alpha * &lambda + two.clone()).div(&(&two * &lambda - alpha.clone()))?;
            s = &s + &Matrix::outer(&q.e(i), &q.e(i)).scale(&lambda);
            s = &s + &Matrix::outer(&q.je(i), &q.je(i)).scale(&mu);
        }
    } else {
        let basis: Vec<_> = (2..m).flat_map(|i| [q.e(i), q.je(i)]).collect();
        s = &s + &sym_block(r, &basis, 2 * m);
    }
    HypersurfacePoint::new(q.clone(), q.base_conjugation(), n, s)
}

/// Principal normal `e₀`: `S` block diagonal on `V(A)∩𝒞 ⊕ JV(A)∩𝒞`, plus a coupling
/// `e₁⊗Je₂ + Je₂⊗e₁` when `coupled`.
fn exact_principal(r: &mut impl Rng, m: usize, alpha: QSqrt2, coupled: bool) -> Result<HypersurfacePoint<QSqrt2>> {
    let q = QuadricPoint::<QSqrt2>::new(m)?;
    let n = q.e(0);
    let xi = -&q.apply_j(&n);
    let real: Vec<_> = (1..m).map(|i| q.e(i)).collect();
    let imag: Vec<_> = (1..m).map(|i| q.je(i)).collect();
    let mut s = &(&Matrix::outer(&xi, &xi).scale(&alpha) + &sym_block(r, &real, 2 * m)) + &sym_block(r, &imag, 2 * m);
    if coupled {
        let (v, w) = (q.e(1), q.je(2));
        s = &s + &(&Matrix::outer(&v, &w) + &Matrix::outer(&w, &v));
    }
    HypersurfacePoint::new(q.clone(), q.base_conjugation(), n, s)
}

fn commutator<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) -> Result<f64> {
    let rn = h.normal_jacobi();
    let rxi = h.structure_jacobi()?;
    let c = rn.commutator(&rxi)?;
    let scale = rn.frobenius_norm_f64() * rxi.frobenius_norm_f64();
    t.matrix(|| format!("[R_N, R_xi], {label}"), &c, scale);
    Ok(c.frobenius_norm_f64() / (1.0 + scale))
}

fn constraints<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) {
    let s = h.shape();
    let scale = s.frobenius_norm_f64();
    t.vector(|| format!("S A xi, {label}"), &s.apply(h.a_xi()), scale);
    t.vector(|| format!("S A N, {label}"), &s.apply(h.a_n()), scale);
    let n = h.dim();
    for k in 0..n {
        let x = h.projector().apply(&Vector::unit(n, k));
        t.vector(|| format!("Hopf identity at X = P e{k}, {label}"), &h.hopf_identity_vector(&x), (1.0 + scale).powi(2));
    }
}

fn lemma_constraints(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| {
                    let mut r = rng(seed ^ 0x1507 ^ (m as u64) << 40);
                    match mode {
                        Mode::Exact => {
                            for alpha in [QSqrt2::from_ratio(1, 1), QSqrt2::from_parts(-3, 2, 1, 1)] {
                                let h = exact_isotropic(&mut r, m, alpha.clone(), true)?;
                                constraints(t, &h, &format!("alpha = {alpha}"));
                            }
                        }
                        Mode::Float => {
                            for k in 0..cfg.trials {
                                let alpha = r.gen_range(-3.0..3.0);
                                let h = sampling::isotropic_hopf_paired(&mut r, m, alpha)?;
                                constraints(t, &h, &format!("trial {k}, alpha = {alpha:.6}"));
                            }
                        }
                    }
                    Ok(Note::Done(String::new()))
                });
            }
        }
    }
}

fn vanishing_reeb(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m), ("alpha", "0".into())]), |t| {
                    let mut r = rng(seed ^ 0x0eeb ^ (m as u64) << 40);
                    match mode {
                        Mode::Exact => {
                            for paired in [true, false] {
                                let h = exact_isotropic(&mut r, m, QSqrt2::from_ratio(0, 1), paired)?;
                                commutator(t, &h, if paired { "paired" } else { "random block" })?;
                            }
                        }
                        Mode::Float => {
                            for k in 0..cfg.trials {
                                let h = sampling::isotropic_hopf_paired(&mut r, m, 0.0)?;
                                commutator(t, &h, &format!("paired, trial {k}"))?;
                                let h = sampling::isotropic_hopf_projected(&mut r, m, 0.0)?;
                                commutator(t, &h, &format!("random block, trial {k}"))?;
                            }
                        }
                    }
                    Ok(Note::Done(String::new()))
                });
            }
        }
    }
}

/// Residual is the largest shortfall of the normalized commutator below the
/// non-commuting floor; the check passes only if every probe exceeds the floor.
fn non_commuting(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                let p = params([ms(m), ("alpha", "1".into()), ("floor", NONCOMMUTING_FLOOR.to_string())]);
                rec.record_with_tol(mode, 0.0, Some(seed), p, |t| {
                    let mut r = rng(seed ^ 0x9c0e ^ (m as u64) << 40);
                    let mut smallest = f64::INFINITY;
                    match mode {
                        Mode::Exact => {
                            for paired in [true, false] {
                                let h = exact_isotropic(&mut r, m, QSqrt2::from_ratio(1, 1), paired)?;
                                let c = h.normal_jacobi().commutator(&h.structure_jacobi()?)?;
                                let label = if paired { "paired" } else { "random block" };
                                t.require(|| format!("[R_N, R_xi] vanishes exactly, {label}"), !c.frobenius_norm_sq().is_zero());
                                smallest = smallest.min(c.frobenius_norm_f64());
                            }
                        }
                        Mode::Float => {
                            for k in 0..cfg.trials {
                                let h = if k % 2 == 0 {
                                    sampling::isotropic_hopf_paired(&mut r, m, 1.0)?
                                } else {
                                    sampling::isotropic_hopf_projected(&mut r, m, 1.0)?
                                };
                                let c = super::normalized_commutator(&h.normal_jacobi(), &h.structure_jacobi()?)?;
                                smallest = smallest.min(c);
                                t.scalar(|| format!("shortfall below floor, trial {k}, commutator {c:.3e}"), &(NONCOMMUTING_FLOOR - c).max(0.0), 0.0);
                            }
                        }
                    }
                    Ok(Note::Done(format!("smallest commutator {smallest:.3e}")))
                });
            }
        }
    }
}

fn forced_contradiction(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            rec.record(mode, None, params([ms(m)]), |t| super::by_mode!(mode, forced_in(t, m)));
        }
    }
}

/// `S = −6α ξ⊗ξ` is what the equivalence forces; it is compatible with `Sξ = αξ` only at `α = 0`.
fn forced_in<F: Field>(t: &mut Tally, m: usize) -> Result<Note> {
    let q = QuadricPoint::<F>::new(m)?;
    let n = q.e(0).axpy(&F::one(), &q.je(1)).scale(&F::sqrt2().inv()?);
    let xi = -&q.apply_j(&n);
    for (num, den) in [(0, 1), (1, 1), (-2, 1), (3, 2)] {
        let alpha = F::from_ratio(num, den);
        let s = Matrix::outer(&xi, &xi).scale(&(F::from_i64(-6) * alpha.clone()));
        let d = &s.apply(&xi) - &xi.scale(&alpha);
        let consistent = d.norm_sq().is_negligible(0.0);
        t.require(|| format!("S xi = alpha xi consistent exactly when alpha = 0, alpha = {num}/{den}"), consistent == (num == 0));
    }
    Ok(Note::Done(String::new()))
}

fn principal_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) -> Result<()> {
    commutator(t, h, label)?;
    // R_N Y = Y + 2η(Y)ξ + AY on tangent Y
    let n = h.dim();
    let rn = h.normal_jacobi();
    for k in 0..n {
        let y = h.projector().apply(&Vector::unit(n, k));
        let want = &y.axpy(&(F::from_i64(2) * h.eta(&y)), h.xi()) + &h.conjugation().apply(&y);
        t.vector(|| format!("R_N Y - Y - 2eta(Y)xi - AY, Y = P e{k}, {label}"), &(&rn.apply(&y) - &want), 1.0);
    }
    let a = h.conjugation().matrix();
    let s = h.shape();
    t.matrix(|| format!("AS - SA, {label}"), &(&(a * s) - &(s * a)), s.frobenius_norm_f64());
    Ok(())
}

fn principal_commuting(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| {
                    let mut r = rng(seed ^ 0x9717 ^ (m as u64) << 40);
                    match mode {
                        Mode::Exact => {
                            let h = exact_principal(&mut r, m, QSqrt2::from_ratio(3, 2), false)?;
                            principal_one(t, &h, "S commuting with A")?;
                            let c = exact_principal(&mut r, m, QSqrt2::from_ratio(3, 2), true)?;
                            let d = c.normal_jacobi().commutator(&c.structure_jacobi()?)?;
                            t.require(|| "coupled control commutes".into(), !d.frobenius_norm_sq().is_zero());
                        }
                        Mode::Float => {
                            for k in 0..cfg.trials {
                                let alpha = r.gen_range(-3.0..3.0);
                                let h = sampling::principal_hopf(&mut r, m, alpha, 0.0)?;
                                principal_one(t, &h, &format!("trial {k}"))?;
                                let c = sampling::principal_hopf(&mut r, m, alpha.signum() + alpha, 1.0)?;
                                let d = super::normalized_commutator(&c.normal_jacobi(), &c.structure_jacobi()?)?;
                                t.require(|| format!("coupled control commutes, trial {k}: {d:.3e}"), d > NONCOMMUTING_FLOOR);
                            }
                        }
                    }
                    Ok(Note::Done(String::new()))
                });
            }
        }
    }
}

/// `(R_ξ R_N − R_N R_ξ)ξ` against `2αβ(αβξ − SAξ)`, and `R_N ξ = 4ξ − 2βAξ`.
fn xi_slot_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) -> Result<()> {
    let rn = h.normal_jacobi();
    let rxi = h.structure_jacobi()?;
    let xi = h.xi();
    let lhs = &rxi.apply(&rn.apply(xi)) - &rn.apply(&rxi.apply(xi));
    let ab = h.alpha().clone() * h.beta().clone();
    let rhs = xi.scale(&ab).axpy(&-F::one(), &h.shape().apply(h.a_xi())).scale(&(F::from_i64(2) * ab));
    let scale = (1.0 + h.shape().frobenius_norm_f64()).powi(3);
    t.vector(|| format!("xi slot, {label}"), &(&lhs - &rhs), scale);
    let want = xi.scale(&F::from_i64(4)).axpy(&(F::from_i64(-2) * h.beta().clone()), h.a_xi());
    t.vector(|| format!("R_N xi - 4xi + 2beta A xi, {label}"), &(&rn.apply(xi) - &want), 1.0);
    Ok(())
}

fn xi_slot(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m), ("t", "pi/8".into())]), |t| {
                    let mut r = rng(seed ^ 0x5107 ^ (m as u64) << 40);
                    match mode {
                        Mode::Exact => {
                            let h = super::ambient::exact_regular_point(&mut r, m, QSqrt2::from_ratio(1, 1))?;
                            xi_slot_one(t, &h, "regular, alpha = 1")?;
                            let h = super::ambient::exact_regular_point(&mut r, m, QSqrt2::from_ratio(0, 1))?;
                            xi_slot_one(t, &h, "regular, alpha = 0")?;
                            let h = exact_isotropic(&mut r, m, QSqrt2::from_ratio(1, 1), false)?;
                            xi_slot_one(t, &h, "isotropic, beta = 0")?;
                        }
                        Mode::Float => {
                            let q = QuadricPoint::<f64>::new(m)?;
                            for k in 0..cfg.trials {
                                let h = sampling::hopf_point(&mut r, &q, PI / 8.0, 1.0)?;
                                xi_slot_one(t, &h, &format!("t = pi/8, alpha = 1, trial {k}"))?;
                                let angle = sampling::random_t(&mut r);
                                let h = sampling::hopf_point(&mut r, &q, angle, 0.0)?;
                                xi_slot_one(t, &h, &format!("alpha = 0, trial {k}"))?;
                                let h = sampling::isotropic_hopf_projected(&mut r, m, 1.0)?;
                                xi_slot_one(t, &h, &format!("beta = 0, trial {k}"))?;
                            }
                        }
                    }
                    Ok(Note::Done(String::new()))
                });
            }
        }
    }
}

/// The reference `(α, β)` pairs with their expected `σ`.
pub const REEB_PARTNER_CASES: [(f64, f64, f64); 3] = [(1.0, 0.5, -0.5), (2.0, -0.5, -0.25), (1.0, 0.0, f64::NAN)];

/// The Hopf identity at `X = Aξ` equals `−α(SφAξ − σφAξ)` with `σ = −2β²/α`, so it
/// vanishes exactly when `φAξ` is principal with value `σ`.
fn reeb_partner(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    if !cfg.has_mode(Mode::Float) {
        return;
    }
    for &m in &cfg.m_values {
        for &seed in &cfg.seeds {
            for (alpha, beta, sigma) in REEB_PARTNER_CASES {
                let p = params([ms(m), ("alpha", alpha.to_string()), ("beta", beta.to_string())]);
                rec.record(Mode::Float, Some(seed), p, |t| {
                    if beta == 0.0 {
                        return Ok(Note::Skip("beta = 0: alpha beta (1 - beta^2) vanishes".into()));
                    }
                    let s_expected = -2.0 * beta * beta / alpha;
                    t.scalar(|| "sigma against the reference value".into(), &(s_expected - sigma), 1.0);
                    let mut r = rng(seed ^ 0x2ee8 ^ (m as u64) << 40);
                    for k in 0..cfg.trials {
                        let h = sampling::reeb_partner_point(&mut r, m, beta, alpha)?;
                        let s = h.shape();
                        let pax = h.phi_a_xi();
                        t.vector(|| format!("S A xi - alpha beta xi, trial {k}"), &s.apply(h.a_xi()).axpy(&(-alpha * beta), h.xi()), 1.0);
                        let v = h.hopf_identity_vector(h.a_xi());
                        let want = s.apply(&pax).axpy(&-sigma, &pax).scale(&-alpha);
                        let scale = (1.0 + s.frobenius_norm_f64()).powi(2);
                        t.vector(|| format!("identity at A xi vs -alpha(S - sigma)phi A xi, trial {k}"), &(&v - &want), scale);
                    }
                    Ok(Note::Done(format!("sigma = {s_expected}")))
                });
            }
        }
    }
}
