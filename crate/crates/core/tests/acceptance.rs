//! Acceptance criteria 1 to 10. Each test prints one `criterion N: PASS|FAIL` line;
//! run with `cargo test --test acceptance -- --nocapture --test-threads=1` to see them.
//! Expected values are recomputed here from the tube parameter and the model, not read
//! back from the library's tube tables.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use quadric_jacobi::cli::Document;
use quadric_jacobi::field::{gram_schmidt, Field, Matrix, QSqrt2, Vector};
use quadric_jacobi::hypersurface::sampling::{self, rng};
use quadric_jacobi::hypersurface::{build_tube, HypersurfacePoint, Tube, TubeSpec};
use quadric_jacobi::quadric::{QuadricPoint, SingularType};
use quadric_jacobi::verifier::normalized_commutator;
use rand::Rng;

fn verdict(n: u32, ok: bool, detail: &str) {
    println!("criterion {n:>2}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `α = −√2/u`, `λ = √2u` as elements of ℚ(√2).
fn oracle_curvatures(u: &BigRational) -> (QSqrt2, QSqrt2) {
    let zero = rat(0, 1);
    (QSqrt2::new(zero.clone(), -u.recip()), QSqrt2::new(zero, u.clone()))
}

fn exact_tube(m: usize, u: &BigRational) -> Tube<QSqrt2> {
    build_tube(&TubeSpec::tan_ratio(m, u.clone()).unwrap()).unwrap()
}

fn float_tube(m: usize, r: f64) -> Tube<f64> {
    build_tube(&TubeSpec::radius(m, r).unwrap()).unwrap()
}

fn us() -> Vec<BigRational> {
    vec![rat(1, 2), rat(1, 1), rat(2, 1), rat(3, 1)]
}

const RADII: [f64; 3] = [0.2, 0.5, 0.9];

fn is_zero_matrix(m: &Matrix<QSqrt2>) -> bool {
    m.frobenius_norm_sq().is_zero()
}

fn max_abs_diff(a: &Matrix<f64>, b: &Matrix<f64>) -> f64 {
    (a - b).max_abs()
}

#[test]
fn criterion_01_tube_commuting() {
    let start = Instant::now();
    let mut exact_ok = true;
    let mut exact_checks = 0;
    for m in 3..=6 {
        for u in us() {
            let tube = exact_tube(m, &u);
            let h = &tube.point;
            let rn = h.normal_jacobi();
            exact_ok &= is_zero_matrix(&rn.commutator(&h.structure_jacobi().unwrap()).unwrap());
            let basis: Vec<_> = tube.t_lambda.iter().chain(&tube.t_mu).cloned().collect();
            assert_eq!(basis.len(), 2 * m - 2);
            for x in &basis {
                exact_ok &= is_zero_matrix(&rn.commutator(&h.jacobi_rx(x).unwrap()).unwrap());
                exact_checks += 1;
            }
        }
    }
    let mut worst = 0.0f64;
    for m in 3..=6 {
        for r in RADII {
            let tube = float_tube(m, r);
            let h = &tube.point;
            let rn = h.normal_jacobi();
            worst = worst.max(normalized_commutator(&rn, &h.structure_jacobi().unwrap()).unwrap());
            for x in tube.t_lambda.iter().chain(&tube.t_mu) {
                worst = worst.max(normalized_commutator(&rn, &h.jacobi_rx(x).unwrap()).unwrap());
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = exact_ok && worst <= 1e-12 && secs < 5.0;
    verdict(
        1,
        ok,
        &format!("exact: {exact_checks} R_X commutators + 16 R_xi all zero = {exact_ok}; float max {worst:.2e} (tol 1e-12); {secs:.2}s (limit 5s)"),
    );
}

#[test]
fn criterion_02_proposition_a_table() {
    let mut ok = true;
    let mut notes = Vec::new();
    for m in 3..=6 {
        for u in us() {
            let tube = exact_tube(m, &u);
            let h = &tube.point;
            let (alpha, lambda) = oracle_curvatures(&u);
            let zero = QSqrt2::from_ratio(0, 1);
            let dims = [h.eigenspace_dim(&alpha, 0.0), h.eigenspace_dim(&lambda, 0.0), h.eigenspace_dim(&zero, 0.0)];
            ok &= dims == [1, m - 1, m - 1];
            // δ = −1/α
            let delta = -alpha.inv().unwrap();
            let two_delta = &QSqrt2::from_ratio(2, 1) * &delta;
            let s = h.shape();
            let phi = h.phi();
            let contact = &(&(s * phi) + &(phi * s)) - &phi.scale(&two_delta);
            ok &= is_zero_matrix(&contact);
            let two = QSqrt2::from_ratio(2, 1);
            let trace = &alpha - &(&QSqrt2::from_ratio(m as i64 - 1, 1) * &two.div(&alpha).unwrap());
            ok &= s.trace() == trace;
        }
    }
    let mut worst_eig = 0.0f64;
    let mut worst_contact = 0.0f64;
    for m in 3..=6 {
        for r in RADII {
            let tube = float_tube(m, r);
            let h = &tube.point;
            let t = (SQRT_2 * r).tan();
            let (alpha, lambda) = (-SQRT_2 / t, SQRT_2 * t);
            let mut want = vec![(alpha, 1), (lambda, m - 1), (0.0, m - 1)];
            want.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let got = h.eigenstructure().unwrap().multiplicities();
            if got.len() != 3 || got.iter().zip(&want).any(|(g, w)| g.1 != w.1) {
                ok = false;
                notes.push(format!("m={m} r={r}: {got:?}"));
                continue;
            }
            for (g, w) in got.iter().zip(&want) {
                worst_eig = worst_eig.max((g.0 - w.0).abs());
            }
            let s = h.shape();
            let phi = h.phi();
            let contact = &(&(s * phi) + &(phi * s)) - &phi.scale(&(-2.0 / alpha));
            worst_contact = worst_contact.max(contact.frobenius_norm_f64());
        }
    }
    ok &= worst_eig <= 1e-10 && worst_contact <= 1e-12;
    verdict(
        2,
        ok,
        &format!("exact table/contact/trace m=3..6 u in {{1/2,1,2,3}}; float eigenvalue err {worst_eig:.2e} (1e-10), contact {worst_contact:.2e} (1e-12) {}", notes.join("; ")),
    );
}

/// `P R̄(·, N)N P` assembled column by column from the ambient tensor.
fn projected_ambient_jacobi(h: &HypersurfacePoint<f64>) -> Matrix<f64> {
    let q = h.quadric();
    let n = h.normal();
    let dim = q.dim();
    let cols: Vec<_> = (0..dim).map(|k| q.curvature(h.conjugation(), &Vector::unit(dim, k), n, n).unwrap()).collect();
    let p = h.projector();
    &(p * &Matrix::from_columns(&cols)) * p
}

/// Gauss route for `R_X`: tangential part of `R̄(Y,X)X + g(SX,X)SY − g(SY,X)SX`.
fn gauss_jacobi(h: &HypersurfacePoint<f64>, x: &Vector<f64>) -> Matrix<f64> {
    let q = h.quadric();
    let s = h.shape();
    let p = h.projector();
    let dim = q.dim();
    let sx = s.apply(x);
    let cols: Vec<_> = (0..dim)
        .map(|k| {
            let y = p.apply(&Vector::unit(dim, k));
            let amb = p.apply(&q.curvature(h.conjugation(), &y, x, x).unwrap());
            let sy = s.apply(&y);
            amb.axpy(&sx.dot(x), &sy).axpy(&-sy.dot(x), &sx)
        })
        .collect();
    &Matrix::from_columns(&cols) * p
}

#[test]
fn criterion_03_oracle_equivalences() {
    let mut r = rng(3);
    let mut worst_n = 0.0f64;
    let mut t_min = f64::INFINITY;
    let mut t_max = 0.0f64;
    for k in 0..500 {
        let m = 3 + k % 4;
        let q = QuadricPoint::<f64>::new(m).unwrap();
        let n = sampling::unit_vector(&mut r, 2 * m);
        let t = 0.5 * q.classify(&n).unwrap().cos2t.clamp(-1.0, 1.0).acos();
        t_min = t_min.min(t);
        t_max = t_max.max(t);
        let a = sampling::adapted_conjugation(&q, &n).unwrap();
        let h = HypersurfacePoint::new(q, a, n, Matrix::zeros(2 * m, 2 * m)).unwrap();
        worst_n = worst_n.max(max_abs_diff(&h.normal_jacobi(), &projected_ambient_jacobi(&h)));
    }
    let mut worst_xi = 0.0f64;
    let mut worst_x = 0.0f64;
    for k in 0..100 {
        let m = 3 + k % 4;
        let q = QuadricPoint::<f64>::new(m).unwrap();
        let t = sampling::random_t(&mut r);
        let alpha = r.gen_range(-3.0..3.0);
        let h = sampling::hopf_point(&mut r, &q, t, alpha).unwrap();
        worst_xi = worst_xi.max(max_abs_diff(&h.structure_jacobi().unwrap(), &gauss_jacobi(&h, h.xi())));
        let v = h.projector().apply(&sampling::unit_vector(&mut r, 2 * m));
        let x = v.axpy(&-h.eta(&v), h.xi());
        worst_x = worst_x.max(max_abs_diff(&h.jacobi_rx(&x).unwrap(), &gauss_jacobi(&h, &x)));
    }
    let ok = worst_n <= 1e-12 && worst_xi <= 1e-12 && worst_x <= 1e-12;
    verdict(
        3,
        ok,
        &format!("R_N 500 normals (t in [{t_min:.3}, {t_max:.3}]) {worst_n:.2e}; R_xi {worst_xi:.2e}; R_X {worst_x:.2e} over 100 Hopf instances (tol 1e-12)"),
    );
}

fn axiom_defects<F: Field>(q: &QuadricPoint<F>, a: &quadric_jacobi::quadric::Conjugation<F>, v: &[Vector<F>]) -> Vec<F> {
    let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
    let r = |a1: &Vector<F>, b1: &Vector<F>, c1: &Vector<F>| q.curvature(a, a1, b1, c1).unwrap();
    let rxyz = r(x, y, z);
    let anti = (&rxyz + &r(y, x, z)).norm_sq();
    let pair = rxyz.dot(w) - r(z, w, x).dot(y);
    let skew = rxyz.dot(w) + r(x, y, w).dot(z);
    let bianchi = (&(&rxyz + &r(y, z, x)) + &r(z, x, y)).norm_sq();
    vec![anti, pair.clone() * pair, skew.clone() * skew, bianchi]
}

#[test]
fn criterion_04_curvature_axioms() {
    let mut r = rng(4);
    let mut worst = 0.0f64;
    let mut exact_ok = true;
    for m in 3..=5 {
        let q = QuadricPoint::<f64>::new(m).unwrap();
        for _ in 0..100 {
            let a = q.conjugation_angle(r.gen_range(0.0..2.0 * PI));
            let v: Vec<_> = (0..4).map(|_| sampling::gaussian_vector(&mut r, 2 * m)).collect();
            for d in axiom_defects(&q, &a, &v) {
                worst = worst.max(d.sqrt());
            }
        }
        let qe = QuadricPoint::<QSqrt2>::new(m).unwrap();
        let v: Vec<_> = (0..4)
            .map(|_| {
                Vector::new(
                    (0..2 * m)
                        .map(|_| QSqrt2::from_parts(r.gen_range(-5..=5), r.gen_range(1..=4), r.gen_range(-3..=3), r.gen_range(1..=4)))
                        .collect(),
                )
            })
            .collect();
        let h = QSqrt2::from_parts(0, 1, 1, 2);
        for a in [qe.base_conjugation(), qe.conjugation_at(h.clone(), h).unwrap()] {
            exact_ok &= axiom_defects(&qe, &a, &v).iter().all(|d| d.is_zero());
        }
    }
    verdict(4, worst <= 1e-12 && exact_ok, &format!("float max {worst:.2e} over 300 quadruples (tol 1e-12); exact instances zero = {exact_ok}"));
}

#[test]
fn criterion_05_principal_algebra() {
    let mut ok = true;
    for m in 3..=5 {
        for u in us() {
            let tube = exact_tube(m, &u);
            let h = &tube.point;
            let (alpha, _) = oracle_curvatures(&u);
            let a = h.conjugation().matrix();
            let (p, phi, s) = (h.projector(), h.phi(), h.shape());
            ok &= is_zero_matrix(&(&(p * &(&(phi * a) + &(a * phi))) * p));
            ok &= is_zero_matrix(&(&(a * s) - &(s * a)));
            let dim = 2 * m;
            for k in 0..dim {
                let y = p.apply(&Vector::unit(dim, k));
                let lhs = a.apply(&s.apply(&y));
                let rhs = s.apply(&y).axpy(&(&QSqrt2::from_ratio(-2, 1) * &(&alpha * &h.eta(&y))), h.xi());
                ok &= (&lhs - &rhs).norm_sq().is_zero();
            }
            for x in tube.t_lambda.iter().chain(&tube.t_mu) {
                let lhs = s.apply(x).scale(&alpha);
                let rhs = -&(x + &a.apply(x));
                ok &= (&lhs - &rhs).norm_sq().is_zero();
            }
        }
    }
    verdict(5, ok, "phi A = -A phi, AS = SA, ASY = SY - 2 alpha eta(Y) xi, alpha SX = -X - AX on C; m=3..5, exact");
}

#[test]
fn criterion_06_hopf_identity_and_partner() {
    let mut ok = true;
    let mut pairs = 0;
    for m in 3..=5 {
        for u in us() {
            let tube = exact_tube(m, &u);
            let h = &tube.point;
            let basis: Vec<_> = tube.t_alpha.iter().chain(&tube.t_lambda).chain(&tube.t_mu).cloned().collect();
            for x in &basis {
                for y in &basis {
                    ok &= h.hopf_identity_form(x, y).is_zero();
                    pairs += 1;
                }
            }
            let (alpha, lambda) = oracle_curvatures(&u);
            let two = QSqrt2::from_ratio(2, 1);
            ok &= &alpha * &lambda == QSqrt2::from_ratio(-2, 1);
            let partner = (&alpha * &lambda + two.clone()).div(&(&two * &lambda - alpha.clone())).unwrap();
            ok &= partner.is_zero();
        }
    }
    verdict(6, ok, &format!("identity zero on {pairs} basis pairs; partner (al+2)/(2l-a) = 0 via al = -2"));
}

#[test]
fn criterion_07_isotropic_branch() {
    let mut r = rng(7);
    let mut worst_zero = 0.0f64;
    let mut smallest = f64::INFINITY;
    let mut below = 0;
    for k in 0..50 {
        let m = 3 + k % 3;
        let h = if k % 2 == 0 {
            sampling::isotropic_hopf_paired(&mut r, m, 0.0).unwrap()
        } else {
            sampling::isotropic_hopf_projected(&mut r, m, 0.0).unwrap()
        };
        assert!(h.shape().apply(h.a_xi()).norm() < 1e-12 && h.shape().apply(h.a_n()).norm() < 1e-12);
        worst_zero = worst_zero.max(normalized_commutator(&h.normal_jacobi(), &h.structure_jacobi().unwrap()).unwrap());
    }
    for k in 0..50 {
        let m = 3 + k % 3;
        let h = if k % 2 == 0 {
            sampling::isotropic_hopf_paired(&mut r, m, 1.0).unwrap()
        } else {
            sampling::isotropic_hopf_projected(&mut r, m, 1.0).unwrap()
        };
        let c = normalized_commutator(&h.normal_jacobi(), &h.structure_jacobi().unwrap()).unwrap();
        smallest = smallest.min(c);
        if c <= 1e-6 {
            below += 1;
        }
    }
    let ok = worst_zero <= 1e-12 && below == 0;
    verdict(
        7,
        ok,
        &format!("alpha=0: max commutator {worst_zero:.2e} (<= 1e-12); alpha=1: {below}/50 trials at or below 1e-6, smallest {smallest:.2e}"),
    );
}

/// Planted normal built here: `V(A_θ) = R_θ V(A₀)` with `R_θ = cos(θ/2) + sin(θ/2)J`.
fn planted(r: &mut impl Rng, q: &QuadricPoint<f64>, t: f64) -> Vector<f64> {
    let m = q.m();
    let theta = r.gen_range(0.0..2.0 * PI);
    let real = |r: &mut dyn rand::RngCore| {
        let mut v = Vector::zeros(2 * m);
        for i in 0..m {
            v[i] = r.sample::<f64, _>(rand_distr::StandardNormal);
        }
        v
    };
    let z = gram_schmidt(&[real(r), real(r)]).unwrap();
    let rot = |v: &Vector<f64>| v.scale(&(theta / 2.0).cos()).axpy(&(theta / 2.0).sin(), &q.apply_j(v));
    let (z1, z2) = (rot(&z[0]), rot(&z[1]));
    z1.scale(&t.cos()).axpy(&t.sin(), &q.apply_j(&z2))
}

#[test]
fn criterion_08_classifier() {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    let mut labels_ok = true;
    for t in [0.0, PI / 16.0, PI / 8.0, 3.0 * PI / 16.0, FRAC_PI_4] {
        for k in 0..20 {
            let q = QuadricPoint::<f64>::new(3 + k % 3).unwrap();
            let n = planted(&mut r, &q, t);
            let s = q.classify(&n).unwrap();
            worst = worst.max((s.cos2t - (2.0 * t).cos()).abs());
            labels_ok &= match t {
                0.0 => s.kind == SingularType::Principal,
                t if t == FRAC_PI_4 => s.kind == SingularType::Isotropic,
                _ => matches!(s.kind, SingularType::Regular(_)),
            };
        }
    }
    verdict(8, worst <= 1e-12 && labels_ok, &format!("max |cos2t error| {worst:.2e} (tol 1e-12) over 5 angles x 20 frames; labels correct = {labels_ok}"));
}

#[test]
fn criterion_09_section_tables() {
    let mut ok = true;
    let mut entries = 0;
    for m in 3..=4 {
        for u in us() {
            let tube = exact_tube(m, &u);
            let h = &tube.point;
            let (alpha, lambda) = oracle_curvatures(&u);
            let c = |n: i64| QSqrt2::from_ratio(n, 1);
            let al = &alpha * &lambda;
            let l2p2 = &(&lambda * &lambda) + &c(2);
            let rn = h.normal_jacobi();
            let rxi = h.structure_jacobi().unwrap();
            let blocks = [("alpha", &tube.t_alpha), ("lambda", &tube.t_lambda), ("mu", &tube.t_mu)];
            let mut check = |got: Vector<QSqrt2>, want: Vector<QSqrt2>| {
                ok &= (&got - &want).norm_sq().is_zero();
                entries += 1;
            };
            for (yb, ys) in blocks {
                for y in ys.iter() {
                    let rn_want = if yb == "mu" { y.scale(&c(0)) } else { y.scale(&c(2)) };
                    check(rn.apply(y), rn_want);
                    let rxi_want = match yb {
                        "alpha" => y.scale(&c(0)),
                        "lambda" => y.scale(&al),
                        _ => y.scale(&c(2)),
                    };
                    check(rxi.apply(y), rxi_want);
                }
            }
            for (xb, xs) in blocks {
                for x in xs.iter() {
                    let rx = if xb == "alpha" { rxi.clone() } else { h.jacobi_rx(x).unwrap() };
                    let gxx = x.dot(x);
                    let phix = h.phi().apply(x);
                    for (yb, ys) in blocks {
                        for y in ys.iter() {
                            let gxy = x.dot(y);
                            let gpy = phix.dot(y);
                            let bracket = y.scale(&gxx).axpy(&-gxy.clone(), x);
                            // single-operator cases
                            if xb != "alpha" {
                                let want = match (xb, yb) {
                                    ("lambda", "alpha") => y.scale(&(&al * &gxx)),
                                    ("lambda", "lambda") => bracket.scale(&l2p2),
                                    ("lambda", _) => phix.scale(&(&c(2) * &gpy)),
                                    ("mu", "alpha") => y.scale(&(&c(2) * &gxx)),
                                    ("mu", "lambda") => phix.scale(&(&c(2) * &gpy)),
                                    _ => bracket.scale(&c(2)),
                                };
                                check(rx.apply(y), want);
                            }
                            // nine-case product table, both orders
                            let want = match (xb, yb) {
                                ("alpha", "lambda") => y.scale(&(&c(2) * &al)),
                                ("lambda", "alpha") => y.scale(&(&(&c(2) * &al) * &gxx)),
                                ("lambda", "lambda") => bracket.scale(&(&c(2) * &l2p2)),
                                ("mu", "alpha") => y.scale(&(&c(4) * &gxx)),
                                ("mu", "lambda") => phix.scale(&(&c(4) * &gpy)),
                                _ => y.scale(&c(0)),
                            };
                            check(rn.apply(&rx.apply(y)), want.clone());
                            check(rx.apply(&rn.apply(y)), want);
                        }
                    }
                }
            }
        }
    }
    verdict(9, ok, &format!("{entries} table entries exact, m in {{3,4}}, u in {{1/2,1,2,3}}"));
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadric-jacobi"))
}

#[test]
fn criterion_10_cli_contract() {
    let default = binary().output().unwrap();
    let default_code = default.status.code();
    let corrupted = binary().args(["--perturb-lambda", "1e-3", "--suite", "tube.commut*"]).output().unwrap();
    let corrupted_text = String::from_utf8_lossy(&corrupted.stdout);
    let names_commutator = corrupted_text.lines().any(|l| l.starts_with("failing:") && l.contains("tube.commutator-table"));
    let json = binary().args(["--format", "json", "--m", "3,4"]).output().unwrap();
    let doc = Document::from_json(&String::from_utf8_lossy(&json.stdout)).unwrap();
    let result = doc.to_result().unwrap();
    let again = Document::new(&result, &quadric_jacobi::verifier::SuiteConfig {
        m_values: doc.config.m.clone(),
        ..Default::default()
    });
    let round_trip = again.reports == doc.reports && again.summary == doc.summary;
    let ok = default_code == Some(0) && corrupted.status.code() == Some(1) && names_commutator && round_trip;
    verdict(
        10,
        ok,
        &format!(
            "default exit {default_code:?} (want 0); corrupted exit {:?} (want 1), commutator check named = {names_commutator}; json round-trip = {round_trip}",
            corrupted.status.code()
        ),
    );
}
