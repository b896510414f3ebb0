use std::f64::consts::{FRAC_PI_4, PI};

use rand::Rng;

use super::{anchor, params, CheckDef, Note, Recorder, Tally};
use crate::error::Result;
use crate::field::{Field, Matrix, Mode, QSqrt2, Vector};
use crate::hypersurface::sampling::{self, rng};
use crate::hypersurface::{build_tube, HypersurfacePoint, TubeSpec};
use crate::quadric::{Conjugation, QuadricPoint, SingularType};

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef { name: "quadric.conjugation-family", anchors: &[anchor::AMBIENT_CURVATURE], run: conjugation_family },
        CheckDef { name: "curvature.axioms", anchors: &[anchor::AMBIENT_CURVATURE], run: curvature_axioms },
        CheckDef { name: "curvature.reference-values", anchors: &[anchor::AMBIENT_CURVATURE], run: reference_values },
        CheckDef { name: "curvature.jacobi-closed-form", anchors: &[anchor::AMBIENT_CURVATURE], run: jacobi_closed_form },
        CheckDef { name: "gauss.equation", anchors: &[anchor::GAUSS_EQUATION], run: gauss_equation },
        CheckDef { name: "singular.classifier", anchors: &[anchor::SINGULAR_DECOMPOSITION], run: classifier },
        CheckDef {
            name: "hypersurface.frame-formulas",
            anchors: &[anchor::NORMAL_FRAME, anchor::CONJUGATION_SPLIT, anchor::B_SQUARED],
            run: frame_formulas,
        },
        CheckDef { name: "oracle.normal-jacobi", anchors: &[anchor::NORMAL_JACOBI], run: oracle_normal },
        CheckDef { name: "oracle.structure-jacobi", anchors: &[anchor::STRUCTURE_JACOBI], run: oracle_structure },
        CheckDef { name: "oracle.jacobi-rx", anchors: &[anchor::HORIZONTAL_JACOBI], run: oracle_rx },
    ]
}

fn ms(m: usize) -> (&'static str, String) {
    ("m", m.to_string())
}

fn small_exact(r: &mut impl Rng) -> QSqrt2 {
    QSqrt2::from_parts(r.gen_range(-4..=4), r.gen_range(1..=3), r.gen_range(-2..=2), r.gen_range(1..=3))
}

fn exact_vector(r: &mut impl Rng, n: usize) -> Vector<QSqrt2> {
    Vector::new((0..n).map(|_| small_exact(r)).collect())
}

/// Exact instance at the regular normal `N = (4/5)e₀ + (3/5)Je₁` (`cos 2t = 7/25`), with a
/// Hopf `S` whose block on `𝒞` has small random ℚ(√2) entries.
pub(super) fn exact_regular_point(r: &mut impl Rng, m: usize, alpha: QSqrt2) -> Result<HypersurfacePoint<QSqrt2>> {
    let q = QuadricPoint::<QSqrt2>::new(m)?;
    let a = q.base_conjugation();
    let f = |p, d| QSqrt2::from_ratio(p, d);
    let n = q.e(0).scale(&f(4, 5)).axpy(&f(3, 5), &q.je(1));
    let xi = -&q.apply_j(&n);
    let mut c = vec![q.e(0).scale(&f(3, 5)).axpy(&f(-4, 5), &q.je(1)), q.je(0).scale(&f(3, 5)).axpy(&f(4, 5), &q.e(1))];
    for i in 2..m {
        c.push(q.e(i));
        c.push(q.je(i));
    }
    let mut s = Matrix::outer(&xi, &xi).scale(&alpha);
    for i in 0..c.len() {
        for j in i..c.len() {
            let w = small_exact(r);
            let mut term = Matrix::outer(&c[i], &c[j]);
            if i != j {
                term = &term + &Matrix::outer(&c[j], &c[i]);
            }
            s = &s + &term.scale(&w);
        }
    }
    HypersurfacePoint::new(q, a, n, s)
}

/// Exact normals covering both singular types and one regular angle.
fn exact_normals(q: &QuadricPoint<QSqrt2>) -> Vec<(&'static str, Vector<QSqrt2>)> {
    let h = QSqrt2::from_parts(0, 1, 1, 2);
    vec![
        ("principal e0", q.e(0)),
        ("principal (e0+e1)/sqrt2", (&q.e(0) + &q.e(1)).scale(&h)),
        ("isotropic (e0+Je1)/sqrt2", (&q.e(0) + &q.je(1)).scale(&h)),
        ("regular 4/5 e0 + 3/5 Je1", q.e(0).scale(&QSqrt2::from_ratio(4, 5)).axpy(&QSqrt2::from_ratio(3, 5), &q.je(1))),
    ]
}

fn exact_conjugations(q: &QuadricPoint<QSqrt2>) -> Vec<Conjugation<QSqrt2>> {
    let (z, o) = (QSqrt2::from_ratio(0, 1), QSqrt2::from_ratio(1, 1));
    vec![q.base_conjugation(), q.conjugation_at(z, o).expect("unit circle")]
}

fn conjugation_family(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            rec.record(mode, None, params([ms(m)]), |t| match mode {
                Mode::Exact => {
                    let q = QuadricPoint::<QSqrt2>::new(m)?;
                    let h = QSqrt2::from_parts(0, 1, 1, 2);
                    let mut conjs = exact_conjugations(&q);
                    conjs.push(q.conjugation_at(h.clone(), h)?);
                    for (k, a) in conjs.iter().enumerate() {
                        family_axioms(t, &q, a, k);
                    }
                    Ok(Note::Done(format!("{} conjugations", conjs.len())))
                }
                Mode::Float => {
                    let q = QuadricPoint::<f64>::new(m)?;
                    for k in 0..24 {
                        family_axioms(t, &q, &q.conjugation_angle(k as f64 * PI / 12.0), k);
                    }
                    Ok(Note::Done("24 angles".into()))
                }
            });
        }
    }
}

fn family_axioms<F: Field>(t: &mut Tally, q: &QuadricPoint<F>, a: &Conjugation<F>, k: usize) {
    let am = a.matrix();
    let id = Matrix::identity(q.dim());
    t.matrix(|| format!("A^2 - I, conjugation {k}"), &(&(am * am) - &id), 1.0);
    t.matrix(|| format!("A^T - A, conjugation {k}"), &(&am.transpose() - am), 1.0);
    t.matrix(|| format!("AJ + JA, conjugation {k}"), &(&(am * q.j()) + &(q.j() * am)), 1.0);
}

fn curvature_symmetries<F: Field>(t: &mut Tally, q: &QuadricPoint<F>, a: &Conjugation<F>, v: [&Vector<F>; 4], label: &str) -> Result<()> {
    let [x, y, z, w] = v;
    let r = |a1: &Vector<F>, b1: &Vector<F>, c1: &Vector<F>| q.curvature(a, a1, b1, c1);
    let rxyz = r(x, y, z)?;
    let scale = [x, y, z, w].iter().map(|v| v.norm_sq().to_f64()).product::<f64>().sqrt() * 8.0;
    t.vector(|| format!("R(X,Y)Z + R(Y,X)Z, {label}"), &(&rxyz + &r(y, x, z)?), scale);
    t.scalar(|| format!("g(R(X,Y)Z,W) + g(R(X,Y)W,Z), {label}"), &(rxyz.dot(w) + r(x, y, w)?.dot(z)), scale);
    t.scalar(|| format!("g(R(X,Y)Z,W) - g(R(Z,W)X,Y), {label}"), &(rxyz.dot(w) - r(z, w, x)?.dot(y)), scale);
    let bianchi = &(&rxyz + &r(y, z, x)?) + &r(z, x, y)?;
    t.vector(|| format!("first Bianchi identity, {label}"), &bianchi, scale);
    Ok(())
}

fn curvature_axioms(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                let trials = 2 * cfg.trials;
                rec.record(mode, Some(seed), params([ms(m), ("quadruples", trials.to_string())]), |t| {
                    let mut r = rng(seed ^ (m as u64) << 32);
                    match mode {
                        Mode::Exact => {
                            let q = QuadricPoint::<QSqrt2>::new(m)?;
                            let v: Vec<_> = (0..4).map(|_| exact_vector(&mut r, 2 * m)).collect();
                            for (k, a) in exact_conjugations(&q).iter().enumerate() {
                                curvature_symmetries(t, &q, a, [&v[0], &v[1], &v[2], &v[3]], &format!("conjugation {k}"))?;
                            }
                            Ok(Note::Done("one exact quadruple, two conjugations".into()))
                        }
                        Mode::Float => {
                            let q = QuadricPoint::<f64>::new(m)?;
                            for k in 0..trials {
                                let a = q.conjugation_angle(r.gen_range(0.0..2.0 * PI));
                                let v: Vec<_> = (0..4).map(|_| sampling::gaussian_vector(&mut r, 2 * m)).collect();
                                curvature_symmetries(t, &q, &a, [&v[0], &v[1], &v[2], &v[3]], &format!("quadruple {k}"))?;
                            }
                            Ok(Note::Done(String::new()))
                        }
                    }
                });
            }
        }
    }
}

fn reference_values_in<F: Field>(t: &mut Tally, m: usize) -> Result<Note> {
    let q = QuadricPoint::<F>::new(m)?;
    let a = q.base_conjugation();
    let two = F::from_i64(2);
    let four = F::from_i64(4);
    let (e0, e1, je0, je1) = (q.e(0), q.e(1), q.je(0), q.je(1));
    t.vector(|| "R(e0,Je0)Je0 - 2 e0 at a principal vector".into(), &(&q.curvature(&a, &e0, &je0, &je0)? - &e0.scale(&two)), 1.0);
    t.vector(|| "R(e0,e1)e1 - 2 e0".into(), &(&q.curvature(&a, &e0, &e1, &e1)? - &e0.scale(&two)), 1.0);
    t.vector(|| "R(X,X)Z".into(), &q.curvature(&a, &e1, &e1, &je0)?, 1.0);
    // isotropic unit X: g(R(X,JX)JX, X) = 4
    let h = F::sqrt2().inv()?;
    let iso = (&e0 + &je1).scale(&h);
    let jiso = q.apply_j(&iso);
    t.scalar(|| "holomorphic sectional curvature at an isotropic vector - 4".into(), &(q.curvature(&a, &iso, &jiso, &jiso)?.dot(&iso) - four.clone()), 1.0);
    for (label, n, want) in [("principal", e0.clone(), two), ("isotropic", iso, four)] {
        let rn = q.ambient_jacobi(&a, &n)?;
        let xi = -&q.apply_j(&n);
        t.vector(|| format!("R_N N at the {label} normal"), &rn.apply(&n), 1.0);
        t.vector(|| format!("R_N xi - c xi at the {label} normal"), &(&rn.apply(&xi) - &xi.scale(&want)), 1.0);
    }
    Ok(Note::Done(String::new()))
}

fn reference_values(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            rec.record(mode, None, params([ms(m)]), |t| super::by_mode!(mode, reference_values_in(t, m)));
        }
    }
}

fn closed_form_one<F: Field>(t: &mut Tally, q: &QuadricPoint<F>, a: &Conjugation<F>, n: &Vector<F>, label: &str) -> Result<()> {
    let lhs = q.ambient_jacobi(a, n)?;
    let rhs = q.ambient_jacobi_closed_form(a, n)?;
    t.matrix(|| format!("column-built vs closed-form R_N, {label}"), &(&lhs - &rhs), lhs.frobenius_norm_f64());
    t.matrix(|| format!("R_N asymmetry, {label}"), &(&lhs - &lhs.transpose()), lhs.frobenius_norm_f64());
    Ok(())
}

fn jacobi_closed_form(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| match mode {
                    Mode::Exact => {
                        let q = QuadricPoint::<QSqrt2>::new(m)?;
                        for a in exact_conjugations(&q) {
                            for (label, n) in exact_normals(&q) {
                                closed_form_one(t, &q, &a, &n, label)?;
                            }
                        }
                        Ok(Note::Done(String::new()))
                    }
                    Mode::Float => {
                        let q = QuadricPoint::<f64>::new(m)?;
                        let mut r = rng(seed ^ 0x5eed ^ (m as u64) << 40);
                        for k in 0..cfg.trials {
                            let a = q.conjugation_angle(r.gen_range(0.0..2.0 * PI));
                            let n = sampling::unit_vector(&mut r, 2 * m);
                            closed_form_one(t, &q, &a, &n, &format!("trial {k}"))?;
                        }
                        Ok(Note::Done(String::new()))
                    }
                });
            }
        }
    }
}

/// Right-hand side of the tangential Gauss equation, written out term by term.
fn gauss_rhs<F: Field>(h: &HypersurfacePoint<F>, x: &Vector<F>, y: &Vector<F>, z: &Vector<F>, w: &Vector<F>) -> F {
    let q = h.quadric();
    let a = h.conjugation();
    let j = |v: &Vector<F>| q.apply_j(v);
    let am = |v: &Vector<F>| a.apply(v);
    let g = |u: &Vector<F>, v: &Vector<F>| u.dot(v);
    let two = F::from_i64(2);
    g(y, z) * g(x, w) - g(x, z) * g(y, w) + g(&j(y), z) * g(&j(x), w) - g(&j(x), z) * g(&j(y), w)
        - two * g(&j(x), y) * g(&j(z), w)
        + g(&am(y), z) * g(&am(x), w)
        - g(&am(x), z) * g(&am(y), w)
        + g(&j(&am(y)), z) * g(&j(&am(x)), w)
        - g(&j(&am(x)), z) * g(&j(&am(y)), w)
}

fn gauss_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, v: [&Vector<F>; 4], label: &str) -> Result<()> {
    let [x, y, z, w] = v;
    let s = h.shape();
    let lhs = h.induced_curvature(x, y, z)?.dot(w) - s.apply(y).dot(z) * s.apply(x).dot(w) + s.apply(x).dot(z) * s.apply(y).dot(w);
    let scale = (1.0 + s.max_abs()).powi(2) * [x, y, z, w].iter().map(|v| v.norm_sq().to_f64()).product::<f64>().sqrt();
    t.scalar(|| format!("Gauss equation, {label}"), &(lhs - gauss_rhs(h, x, y, z, w)), scale * 8.0);
    t.vector(|| format!("R(X,X)Z, {label}"), &h.induced_curvature(x, x, z)?, scale);
    Ok(())
}

fn tangent<F: Field>(h: &HypersurfacePoint<F>, v: Vector<F>) -> Vector<F> {
    h.projector().apply(&v)
}

fn gauss_equation(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| {
                    let mut r = rng(seed ^ 0x6a55 ^ (m as u64) << 40);
                    match mode {
                        Mode::Exact => {
                            let h = exact_regular_point(&mut r, m, QSqrt2::from_ratio(3, 2))?;
                            for k in 0..4 {
                                let v: Vec<_> = (0..4).map(|_| tangent(&h, exact_vector(&mut r, 2 * m))).collect();
                                gauss_one(t, &h, [&v[0], &v[1], &v[2], &v[3]], &format!("exact quadruple {k}"))?;
                            }
                            Ok(Note::Done(String::new()))
                        }
                        Mode::Float => {
                            let q = QuadricPoint::<f64>::new(m)?;
                            for k in 0..cfg.trials {
                                let alpha = r.gen_range(-3.0..3.0);
                                let t_angle = sampling::random_t(&mut r);
                                let h = sampling::hopf_point(&mut r, &q, t_angle, alpha)?;
                                let v: Vec<_> = (0..4).map(|_| tangent(&h, sampling::gaussian_vector(&mut r, 2 * m))).collect();
                                gauss_one(t, &h, [&v[0], &v[1], &v[2], &v[3]], &format!("trial {k}"))?;
                            }
                            Ok(Note::Done(String::new()))
                        }
                    }
                });
            }
        }
    }
}

/// Angles at which the classifier is probed.
pub const CLASSIFIER_ANGLES: [f64; 5] = [0.0, PI / 16.0, PI / 8.0, 3.0 * PI / 16.0, FRAC_PI_4];

fn classifier(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| match mode {
                    Mode::Exact => {
                        let q = QuadricPoint::<QSqrt2>::new(m)?;
                        for (label, n) in exact_normals(&q) {
                            let s = q.classify(&n)?;
                            let want = if label.starts_with("principal") {
                                Some(SingularType::Principal)
                            } else if label.starts_with("isotropic") {
                                Some(SingularType::Isotropic)
                            } else {
                                None
                            };
                            let ok = match want {
                                Some(k) => s.kind == k,
                                None => matches!(s.kind, SingularType::Regular(_)) && (s.cos2t - 7.0 / 25.0).abs() < 1e-15,
                            };
                            t.require(|| format!("classification of {label}: {:?}", s.kind), ok);
                        }
                        Ok(Note::Done(String::new()))
                    }
                    Mode::Float => {
                        let q = QuadricPoint::<f64>::new(m)?;
                        let mut r = rng(seed ^ 0xc1a5 ^ (m as u64) << 40);
                        for &angle in &CLASSIFIER_ANGLES {
                            for k in 0..cfg.trials {
                                let p = sampling::planted_normal(&mut r, &q, angle)?;
                                let s = q.classify(&p.normal)?;
                                let label = || format!("t = {angle:.6}, frame {k}");
                                t.scalar(|| format!("cos 2t recovered, {}", label()), &(s.cos2t - (2.0 * angle).cos()), 0.0);
                                let kind_ok = if angle == 0.0 {
                                    s.kind == SingularType::Principal
                                } else if angle == FRAC_PI_4 {
                                    s.kind == SingularType::Isotropic
                                } else {
                                    matches!(s.kind, SingularType::Regular(_))
                                };
                                t.require(|| format!("label {:?} at {}", s.kind, label()), kind_ok);
                                if !s.theta_degenerate {
                                    let a = q.conjugation_angle(s.best_theta);
                                    let n = &p.normal;
                                    t.scalar(|| format!("g(A N, N) at best angle, {}", label()), &(a.apply(n).dot(n) - s.cos2t), 0.0);
                                    t.scalar(|| format!("g(JA N, N) at best angle, {}", label()), &q.apply_j(&a.apply(n)).dot(n), 0.0);
                                }
                                let other = q.conjugation_angle(r.gen_range(0.0..2.0 * PI));
                                let rotated = q.classify(&other.apply(&p.normal))?;
                                t.scalar(|| format!("cos 2t invariance under the family, {}", label()), &(rotated.cos2t - s.cos2t), 0.0);
                            }
                        }
                        Ok(Note::Done(format!("{} angles x {} frames", CLASSIFIER_ANGLES.len(), cfg.trials)))
                    }
                });
            }
        }
    }
}

fn frame_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, cos2t: Option<F>, label: &str) {
    t.scalar(|| format!("g(xi, AN), {label}"), &h.xi().dot(h.a_n()), 1.0);
    t.scalar(|| format!("g(A xi, N), {label}"), &h.a_xi().dot(h.normal()), 1.0);
    if let Some(c) = cos2t {
        t.scalar(|| format!("beta + cos 2t, {label}"), &(h.beta().clone() + c), 1.0);
    }
    let an = h.phi_a_xi().axpy(h.beta(), h.normal());
    t.vector(|| format!("AN + phi A xi + beta N, {label}"), &(h.a_n() + &an), 1.0);
    t.require(|| format!("almost contact structure, {label}"), h.structure_defect() <= crate::hypersurface::STRUCTURE_TOL);
    let pax = h.phi_a_xi();
    let n = h.dim();
    for k in 0..n {
        let y = h.projector().apply(&Vector::unit(n, k));
        let b2 = h.b().apply(&h.b().apply(&y));
        let want = y.axpy(&h.a_n().dot(&y), &pax);
        t.vector(|| format!("B^2 Y - Y - g(AN,Y) phi A xi, {label}, Y = P e{k}"), &(&b2 - &want), 1.0);
    }
}

fn frame_formulas(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                rec.record(mode, Some(seed), params([ms(m)]), |t| match mode {
                    Mode::Exact => {
                        let q = QuadricPoint::<QSqrt2>::new(m)?;
                        let a = q.base_conjugation();
                        let cos2t = [QSqrt2::from_ratio(1, 1), QSqrt2::from_ratio(1, 1), QSqrt2::from_ratio(0, 1), QSqrt2::from_ratio(7, 25)];
                        for ((label, n), c) in exact_normals(&q).into_iter().zip(cos2t) {
                            let h = HypersurfacePoint::new(q.clone(), a.clone(), n, Matrix::zeros(2 * m, 2 * m))?;
                            frame_one(t, &h, Some(c), label);
                        }
                        Ok(Note::Done(String::new()))
                    }
                    Mode::Float => {
                        let q = QuadricPoint::<f64>::new(m)?;
                        let mut r = rng(seed ^ 0xf4a3 ^ (m as u64) << 40);
                        for k in 0..cfg.trials {
                            let angle = sampling::random_t(&mut r);
                            let h = sampling::hopf_point(&mut r, &q, angle, 1.0)?;
                            frame_one(t, &h, Some((2.0 * angle).cos()), &format!("trial {k}, t = {angle:.6}"));
                        }
                        Ok(Note::Done(String::new()))
                    }
                });
            }
        }
    }
}

fn normal_oracle_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) {
    let f = h.normal_jacobi();
    let p = h.normal_jacobi_projected();
    t.matrix(|| format!("formula vs projected R_N, {label}"), &(&f - &p), p.frobenius_norm_f64());
}

fn oracle_normal(rec: &mut Recorder<'_>) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                let count = 10 * cfg.trials;
                rec.record(mode, Some(seed), params([ms(m), ("normals", count.to_string())]), |t| match mode {
                    Mode::Exact => {
                        let q = QuadricPoint::<QSqrt2>::new(m)?;
                        for (label, n) in exact_normals(&q) {
                            let h = HypersurfacePoint::new(q.clone(), q.base_conjugation(), n, Matrix::zeros(2 * m, 2 * m))?;
                            normal_oracle_one(t, &h, label);
                        }
                        Ok(Note::Done(String::new()))
                    }
                    Mode::Float => {
                        let q = QuadricPoint::<f64>::new(m)?;
                        let mut r = rng(seed ^ 0x0a11 ^ (m as u64) << 40);
                        for k in 0..count {
                            let n = sampling::unit_vector(&mut r, 2 * m);
                            let a = sampling::adapted_conjugation(&q, &n)?;
                            let h = HypersurfacePoint::new(q.clone(), a, n, Matrix::zeros(2 * m, 2 * m))?;
                            normal_oracle_one(t, &h, &format!("normal {k}"));
                        }
                        Ok(Note::Done(String::new()))
                    }
                });
            }
        }
    }
}

/// Hopf instances shared by the structure and `R_X` oracles.
fn exact_hopf_instances(m: usize, seed: u64) -> Result<Vec<(String, HypersurfacePoint<QSqrt2>)>> {
    let mut r = rng(seed ^ 0xe7ac ^ (m as u64) << 40);
    let u = num_rational::BigRational::from_integer(1.into());
    let tube = build_tube::<QSqrt2>(&TubeSpec::tan_ratio(m, u)?)?;
    Ok(vec![
        ("tube u=1".to_string(), tube.point),
        ("regular, alpha = 3/2".to_string(), exact_regular_point(&mut r, m, QSqrt2::from_ratio(3, 2))?),
        ("regular, alpha = sqrt2".to_string(), exact_regular_point(&mut r, m, QSqrt2::sqrt2())?),
    ])
}

fn float_hopf_instances(m: usize, seed: u64, count: usize) -> Result<Vec<(String, HypersurfacePoint<f64>)>> {
    let q = QuadricPoint::<f64>::new(m)?;
    let mut r = rng(seed ^ 0x40f ^ (m as u64) << 40);
    (0..count)
        .map(|k| {
            let angle = sampling::random_t(&mut r);
            let alpha = r.gen_range(-3.0..3.0);
            Ok((format!("instance {k}, t = {angle:.6}"), sampling::hopf_point(&mut r, &q, angle, alpha)?))
        })
        .collect()
}

fn structure_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str) -> Result<()> {
    let f = h.structure_jacobi()?;
    let g = h.structure_jacobi_gauss();
    t.matrix(|| format!("formula vs Gauss-route R_xi, {label}"), &(&f - &g), g.frobenius_norm_f64());
    t.vector(|| format!("R_xi xi, {label}"), &f.apply(h.xi()), g.frobenius_norm_f64());
    Ok(())
}

fn rx_one<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, x: &Vector<F>, label: &str) -> Result<()> {
    let f = h.jacobi_rx(x)?;
    let g = h.jacobi_rx_gauss(x)?;
    t.matrix(|| format!("closed-form vs Gauss-route R_X, {label}"), &(&f - &g), g.frobenius_norm_f64());
    t.vector(|| format!("R_X X, {label}"), &f.apply(x), g.frobenius_norm_f64());
    Ok(())
}

fn horizontal<F: Field>(h: &HypersurfacePoint<F>, v: Vector<F>) -> Vector<F> {
    let v = h.projector().apply(&v);
    v.axpy(&-h.eta(&v), h.xi())
}

fn oracle_structure(rec: &mut Recorder<'_>) {
    hopf_oracle(rec, Oracle::Structure)
}

fn oracle_rx(rec: &mut Recorder<'_>) {
    hopf_oracle(rec, Oracle::Rx)
}

#[derive(Clone, Copy)]
enum Oracle {
    Structure,
    Rx,
}

fn oracle_on<F: Field>(t: &mut Tally, h: &HypersurfacePoint<F>, label: &str, kind: Oracle) -> Result<()> {
    match kind {
        Oracle::Structure => structure_one(t, h, label),
        Oracle::Rx => {
            let n = h.dim();
            let mut xs: Vec<Vector<F>> = (0..n).map(|k| horizontal(h, Vector::unit(n, k))).collect();
            if F::MODE == Mode::Float {
                xs.truncate(3);
            }
            for (k, x) in xs.iter().enumerate() {
                if x.norm_sq().to_f64() < 1e-12 {
                    continue;
                }
                rx_one(t, h, x, &format!("{label}, X = horizontal part of e{k}"))?;
            }
            Ok(())
        }
    }
}

fn hopf_oracle(rec: &mut Recorder<'_>, kind: Oracle) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for &mode in &cfg.modes {
            for &seed in &cfg.seeds {
                let count = 2 * cfg.trials;
                let p = match mode {
                    Mode::Exact => params([ms(m)]),
                    Mode::Float => params([ms(m), ("instances", count.to_string())]),
                };
                rec.record(mode, Some(seed), p, |t| {
                    match mode {
                        Mode::Exact => {
                            for (label, h) in exact_hopf_instances(m, seed)? {
                                oracle_on(t, &h, &label, kind)?;
                            }
                        }
                        Mode::Float => {
                            for (label, h) in float_hopf_instances(m, seed, count)? {
                                oracle_on(t, &h, &label, kind)?;
                            }
                        }
                    }
                    Ok(Note::Done(String::new()))
                });
            }
        }
    }
}
