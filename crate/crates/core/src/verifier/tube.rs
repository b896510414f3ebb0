//! Checks on the tube around the totally real sphere. Expected values come from
//! the nominal curvatures `α = −√2/u`, `λ = √2u` of the tube specification, not
//! from the operator that was built.

use num_rational::BigRational;

use super::{anchor, by_mode, params, CheckDef, Note, Recorder, Tally};
use crate::error::{Error, Result};
use crate::field::{Field, Matrix, Mode, Vector};
use crate::hypersurface::{build_tube, Tube, TubeSpec};

pub(super) fn checks() -> Vec<CheckDef> {
    vec![
        CheckDef {
            name: "tube.commuting-rxi",
            anchors: &[anchor::NORMAL_JACOBI, anchor::STRUCTURE_JACOBI],
            run: |r| tube_check(r, Body::CommutingRxi),
        },
        CheckDef {
            name: "tube.commuting-rx",
            anchors: &[anchor::HORIZONTAL_JACOBI],
            run: |r| tube_check(r, Body::CommutingRx),
        },
        CheckDef {
            name: "tube.prop-a-table",
            anchors: &[anchor::TUBE_TABLE, anchor::SHAPE_TRACE],
            run: |r| tube_check(r, Body::Table),
        },
        CheckDef { name: "tube.contact", anchors: &[anchor::TUBE_CONTACT], run: |r| tube_check(r, Body::Contact) },
        CheckDef {
            name: "tube.shape-diagonal",
            anchors: &[anchor::DIAGONAL_FORM],
            run: |r| tube_check(r, Body::Diagonal),
        },
        CheckDef {
            name: "tube.principal-algebra",
            anchors: &[anchor::PRINCIPAL_COMMUTING_SHAPE, anchor::HORIZONTAL_SHAPE_RELATION, anchor::PRINCIPAL_OPERATORS],
            run: |r| tube_check(r, Body::PrincipalAlgebra),
        },
        CheckDef {
            name: "tube.hopf-identity",
            anchors: &[anchor::HOPF_IDENTITY],
            run: |r| tube_check(r, Body::HopfIdentity),
        },
        CheckDef { name: "tube.phi-partner", anchors: &[anchor::PHI_PARTNER], run: |r| tube_check(r, Body::PhiPartner) },
        CheckDef {
            name: "tube.jacobi-tables",
            anchors: &[anchor::TUBE_JACOBI_TABLES],
            run: |r| tube_check(r, Body::JacobiTables),
        },
        CheckDef {
            name: "tube.commutator-table",
            anchors: &[anchor::TUBE_COMMUTATOR_TABLE],
            run: |r| tube_check(r, Body::CommutatorTable),
        },
    ]
}

#[derive(Clone, Copy)]
enum Body {
    CommutingRxi,
    CommutingRx,
    Table,
    Contact,
    Diagonal,
    PrincipalAlgebra,
    HopfIdentity,
    PhiPartner,
    JacobiTables,
    CommutatorTable,
}

fn tube_check(rec: &mut Recorder<'_>, body: Body) {
    let cfg = rec.cfg;
    for &m in &cfg.m_values {
        for param in &cfg.tube_params {
            for &mode in &cfg.modes {
                let spec = TubeSpec { m, param: param.clone() };
                if !spec.supports(mode) {
                    continue;
                }
                let mut p = params([("m", m.to_string()), ("tube", spec.label())]);
                if let Some(eps) = cfg.perturb_lambda {
                    p.push(("perturb_lambda".into(), eps.to_string()));
                }
                let perturb = cfg.perturb_lambda;
                rec.record(mode, None, p, |t| by_mode!(mode, run_body(t, body, &spec, perturb)));
            }
        }
    }
}

/// Curvatures the tube specification prescribes.
struct Nominal<F> {
    alpha: F,
    lambda: F,
}

fn nominal<F: Field>(spec: &TubeSpec) -> Result<Nominal<F>> {
    let u = spec.tan_value::<F>()?;
    Ok(Nominal { alpha: -F::sqrt2().div(&u)?, lambda: F::sqrt2() * u })
}

fn make<F: Field>(spec: &TubeSpec, perturb: Option<f64>) -> Result<Tube<F>> {
    let tube = build_tube::<F>(spec)?;
    match perturb {
        None => Ok(tube),
        Some(eps) => {
            let eps = BigRational::from_float(eps).ok_or_else(|| Error::InvalidArgument("perturbation must be finite".into()))?;
            Tube::with_curvatures(spec.m, tube.alpha, tube.lambda + F::from_rational(&eps))
        }
    }
}

fn run_body<F: Field>(t: &mut Tally, body: Body, spec: &TubeSpec, perturb: Option<f64>) -> Result<Note> {
    let tube = make::<F>(spec, perturb)?;
    let nom = nominal::<F>(spec)?;
    match body {
        Body::CommutingRxi => commuting_rxi(t, &tube),
        Body::CommutingRx => commuting_rx(t, &tube),
        Body::Table => table(t, &tube, &nom, spec, perturb),
        Body::Contact => contact(t, &tube, &nom),
        Body::Diagonal => diagonal(t, &tube, &nom),
        Body::PrincipalAlgebra => principal_algebra(t, &tube),
        Body::HopfIdentity => hopf_identity(t, &tube),
        Body::PhiPartner => phi_partner(t, &tube),
        Body::JacobiTables => jacobi_tables(t, &tube, &nom),
        Body::CommutatorTable => commutator_table(t, &tube, &nom),
    }
}

fn fnorm<F: Field>(m: &Matrix<F>) -> f64 {
    m.frobenius_norm_f64()
}

fn commuting_rxi<F: Field>(t: &mut Tally, tube: &Tube<F>) -> Result<Note> {
    let rn = tube.point.normal_jacobi();
    let rxi = tube.point.structure_jacobi()?;
    t.matrix(|| "[R_N, R_xi]".into(), &rn.commutator(&rxi)?, fnorm(&rn) * fnorm(&rxi));
    Ok(Note::Done(String::new()))
}

fn commuting_rx<F: Field>(t: &mut Tally, tube: &Tube<F>) -> Result<Note> {
    let rn = tube.point.normal_jacobi();
    let basis = tube.horizontal_basis();
    for (k, x) in basis.iter().enumerate() {
        let rx = tube.point.jacobi_rx(x)?;
        t.matrix(|| format!("[R_N, R_X] for X = C basis vector {k}"), &rn.commutator(&rx)?, fnorm(&rn) * fnorm(&rx));
    }
    Ok(Note::Done(format!("{} horizontal directions", basis.len())))
}

fn table<F: Field>(t: &mut Tally, tube: &Tube<F>, nom: &Nominal<F>, spec: &TubeSpec, perturb: Option<f64>) -> Result<Note> {
    let h = &tube.point;
    let k = tube.m() - 1;
    let expected = vec![(nom.alpha.clone(), 1), (nom.lambda.clone(), k), (F::zero(), k)];
    let scale = nom.alpha.to_f64().abs().max(nom.lambda.to_f64().abs());
    let rank_tol = 1e-9 * (1.0 + scale);
    for (label, value, basis) in [("alpha", &nom.alpha, &tube.t_alpha), ("lambda", &nom.lambda, &tube.t_lambda), ("mu", &F::zero(), &tube.t_mu)] {
        for (i, v) in basis.iter().enumerate() {
            t.vector(|| format!("S v - {label} v for {label}-vector {i}"), &(&h.shape().apply(v) - &v.scale(value)), scale);
        }
    }
    let found: Vec<usize> = expected.iter().map(|(v, _)| h.eigenspace_dim(v, rank_tol)).collect();
    let total: usize = found.iter().sum();
    t.require(
        || format!("eigenspace dimensions {found:?}, expected [1, {k}, {k}]"),
        found == [1, k, k] && total == 2 * tube.m() - 1,
    );
    let two_over = F::from_i64(2).div(&nom.alpha)?;
    let trace = nom.alpha.clone() - F::from_i64(k as i64) * two_over;
    t.scalar(|| "Tr S - (alpha - (m-1) 2/alpha)".into(), &(h.shape().trace() - trace), scale * (2 * k + 1) as f64);

    if F::MODE == Mode::Float {
        let ft = make::<f64>(spec, perturb)?;
        let es = ft.point.eigenstructure()?;
        let mut want = vec![(nom.alpha.to_f64(), 1), (nom.lambda.to_f64(), k), (0.0, k)];
        want.sort_by(|a, b| a.0.total_cmp(&b.0));
        let got = es.multiplicities();
        t.require(|| format!("clusters {got:?} vs expected {want:?}"), got.len() == 3 && got.iter().zip(&want).all(|(g, w)| g.1 == w.1));
        for (g, w) in got.iter().zip(&want) {
            t.scalar(|| format!("eigenvalue {} vs {}", g.0, w.0), &(g.0 - w.0), 0.0);
        }
    }
    Ok(Note::Done(String::new()))
}

fn contact<F: Field>(t: &mut Tally, tube: &Tube<F>, nom: &Nominal<F>) -> Result<Note> {
    let h = &tube.point;
    let delta = -F::one().div(&nom.alpha)?;
    let defect = h.contact_defect(&delta);
    t.matrix(|| "S phi + phi S - 2 delta phi".into(), &defect, fnorm(&h.contact_operator()));
    let c = h.contact_scalar();
    t.scalar(|| "least-squares contact scalar - delta".into(), &(c.clone() - delta.clone()), delta.to_f64().abs());
    t.require(|| "contact scalar vanishes".into(), !c.is_zero());
    Ok(Note::Done(format!("delta = {:.12}", delta.to_f64())))
}

fn diagonal<F: Field>(t: &mut Tally, tube: &Tube<F>, nom: &Nominal<F>) -> Result<Note> {
    let basis = tube.tangent_basis();
    let k = tube.m() - 1;
    let b = Matrix::from_columns(&basis);
    let got = &(&b.transpose() * tube.point.shape()) * &b;
    let minus_two_over = -F::from_i64(2).div(&nom.alpha)?;
    let diag: Vec<F> = std::iter::once(nom.alpha.clone())
        .chain(std::iter::repeat(minus_two_over).take(k))
        .chain(std::iter::repeat(F::zero()).take(k))
        .collect();
    t.matrix(|| "S in the eigenbasis vs diag(alpha, -2/alpha.., 0..)".into(), &(&got - &Matrix::diagonal(&diag)), fnorm(&got));
    Ok(Note::Done(String::new()))
}

fn principal_algebra<F: Field>(t: &mut Tally, tube: &Tube<F>) -> Result<Note> {
    let h = &tube.point;
    let (phi, b, s, a) = (h.phi(), h.b(), h.shape(), h.conjugation().matrix());
    let proj = h.projector();
    let scale = fnorm(s);
    t.matrix(|| "phi B + B phi".into(), &(&(&(phi * b) + &(b * phi)) * proj), 1.0);
    t.matrix(|| "AS - SA".into(), &(&(a * s) - &(s * a)), scale);
    let two = F::from_i64(2);
    let alpha = h.alpha().clone();
    for (i, y) in tube.tangent_basis().iter().enumerate() {
        let asy = a.apply(&s.apply(y));
        let rhs = s.apply(y).axpy(&-(two.clone() * alpha.clone() * h.eta(y)), h.xi());
        t.vector(|| format!("ASY - SY + 2 alpha eta(Y) xi at tangent basis vector {i}"), &(&asy - &rhs), scale);
    }
    for (i, x) in tube.horizontal_basis().iter().enumerate() {
        let lhs = s.apply(x).scale(&alpha);
        let rhs = -&(x + &a.apply(x));
        t.vector(|| format!("alpha SX + X + AX at C basis vector {i}"), &(&lhs - &rhs), scale * alpha.to_f64().abs());
    }
    let rn = h.normal_jacobi();
    let xi = h.xi();
    let principal = Matrix::from_linear_map(h.dim(), |e| {
        let y = proj.apply(e);
        proj.apply(&(&y.axpy(&(two.clone() * h.eta(&y)), xi) + &a.apply(&y)))
    });
    t.matrix(|| "R_N vs Y + 2 eta(Y) xi + AY".into(), &(&rn - &principal), fnorm(&rn));
    Ok(Note::Done(String::new()))
}

fn hopf_identity<F: Field>(t: &mut Tally, tube: &Tube<F>) -> Result<Note> {
    let basis = tube.tangent_basis();
    let scale = fnorm(tube.point.shape()).powi(2);
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            t.scalar(|| format!("identity at eigenbasis pair ({i}, {j})"), &tube.point.hopf_identity_form(x, y), scale);
        }
    }
    Ok(Note::Done(format!("{} pairs", basis.len() * basis.len())))
}

fn phi_partner<F: Field>(t: &mut Tally, tube: &Tube<F>) -> Result<Note> {
    let h = &tube.point;
    let (alpha, lambda) = (tube.alpha.clone(), tube.lambda.clone());
    let den = F::from_i64(2) * lambda.clone() - alpha.clone();
    t.require(|| "2 lambda = alpha".into(), !den.is_negligible(1e-12));
    let partner = (alpha.clone() * lambda.clone() + F::from_i64(2)).div(&den)?;
    t.scalar(|| "(alpha lambda + 2)/(2 lambda - alpha) - mu".into(), &(partner.clone() - tube.mu.clone()), 1.0);
    t.scalar(|| "alpha lambda + 2".into(), &(alpha * lambda + F::from_i64(2)), 1.0);
    for (i, x) in tube.t_lambda.iter().enumerate() {
        let px = h.phi().apply(x);
        t.vector(|| format!("S phi X - partner phi X for lambda-vector {i}"), &(&h.shape().apply(&px) - &px.scale(&partner)), 1.0);
        let apx = h.conjugation().apply(&px);
        t.vector(|| format!("phi X not in JV(A) for lambda-vector {i}"), &(&apx + &px), 1.0);
    }
    Ok(Note::Done(format!("partner = {:.12}", partner.to_f64())))
}

/// Each block vector, plus the combination `Σ (k+1) v_k` to exercise the `g(X,X)` factors.
fn samples<F: Field>(block: &[Vector<F>]) -> Vec<Vector<F>> {
    let mut out = block.to_vec();
    if block.len() > 1 {
        let comb = block.iter().enumerate().fold(Vector::zeros(block[0].dim()), |acc, (k, v)| acc.axpy(&F::from_i64(k as i64 + 1), v));
        out.push(comb);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Block {
    Alpha,
    Lambda,
    Mu,
}

fn block<F: Field>(tube: &Tube<F>, b: Block) -> &[Vector<F>] {
    match b {
        Block::Alpha => &tube.t_alpha,
        Block::Lambda => &tube.t_lambda,
        Block::Mu => &tube.t_mu,
    }
}

const BLOCKS: [Block; 3] = [Block::Alpha, Block::Lambda, Block::Mu];

fn jacobi_tables<F: Field>(t: &mut Tally, tube: &Tube<F>, nom: &Nominal<F>) -> Result<Note> {
    let h = &tube.point;
    let (alpha, lambda) = (&nom.alpha, &nom.lambda);
    let two = F::from_i64(2);
    let al = alpha.clone() * lambda.clone();
    let l2p2 = lambda.clone() * lambda.clone() + two.clone();
    let scale = 1.0 + l2p2.to_f64().abs();
    let rn = h.normal_jacobi();
    let rxi = h.structure_jacobi()?;
    let mut n = 0;
    for yb in BLOCKS {
        for (j, y) in samples(block(tube, yb)).iter().enumerate() {
            let want_n = if yb == Block::Mu { Vector::zeros(y.dim()) } else { y.scale(&two) };
            t.vector(|| format!("R_N Y, Y in {yb:?} sample {j}"), &(&rn.apply(y) - &want_n), scale);
            let want_xi = match yb {
                Block::Alpha => Vector::zeros(y.dim()),
                Block::Lambda => y.scale(&al),
                Block::Mu => y.scale(&two),
            };
            t.vector(|| format!("R_xi Y, Y in {yb:?} sample {j}"), &(&rxi.apply(y) - &want_xi), scale);
            n += 2;
        }
    }
    for xb in [Block::Lambda, Block::Mu] {
        for (i, x) in samples(block(tube, xb)).iter().enumerate() {
            let rx = h.jacobi_rx(x)?;
            let gxx = x.dot(x);
            let phix = h.phi().apply(x);
            for yb in BLOCKS {
                for (j, y) in samples(block(tube, yb)).iter().enumerate() {
                    let gxy = x.dot(y);
                    let gphixy = phix.dot(y);
                    let bracket = y.scale(&gxx).axpy(&-gxy, x);
                    let want = match (xb, yb) {
                        (Block::Lambda, Block::Alpha) => y.scale(&(al.clone() * gxx.clone())),
                        (Block::Lambda, Block::Lambda) => bracket.scale(&l2p2),
                        (Block::Lambda, Block::Mu) | (Block::Mu, Block::Lambda) => phix.scale(&(two.clone() * gphixy)),
                        (Block::Mu, Block::Alpha) => y.scale(&(two.clone() * gxx.clone())),
                        (Block::Mu, Block::Mu) => bracket.scale(&two),
                        (Block::Alpha, _) => unreachable!(),
                    };
                    t.vector(|| format!("R_X Y, X in {xb:?} sample {i}, Y in {yb:?} sample {j}"), &(&rx.apply(y) - &want), scale * (1.0 + gxx.to_f64()));
                    n += 1;
                }
            }
        }
    }
    Ok(Note::Done(format!("{n} table entries")))
}

fn commutator_table<F: Field>(t: &mut Tally, tube: &Tube<F>, nom: &Nominal<F>) -> Result<Note> {
    let h = &tube.point;
    let (alpha, lambda) = (&nom.alpha, &nom.lambda);
    let two = F::from_i64(2);
    let four = F::from_i64(4);
    let al2 = two.clone() * alpha.clone() * lambda.clone();
    let l2p2 = two.clone() * (lambda.clone() * lambda.clone() + two.clone());
    let scale = 1.0 + l2p2.to_f64().abs() + al2.to_f64().abs();
    let rn = h.normal_jacobi();
    let mut n = 0;
    for xb in BLOCKS {
        let xs = if xb == Block::Alpha { tube.t_alpha.clone() } else { samples(block(tube, xb)) };
        for (i, x) in xs.iter().enumerate() {
            let rx = if xb == Block::Alpha { h.structure_jacobi()? } else { h.jacobi_rx(x)? };
            let gxx = x.dot(x);
            let phix = h.phi().apply(x);
            for yb in BLOCKS {
                for (j, y) in samples(block(tube, yb)).iter().enumerate() {
                    let zero = Vector::zeros(y.dim());
                    let want = match (xb, yb) {
                        (Block::Alpha, Block::Lambda) => y.scale(&al2),
                        (Block::Lambda, Block::Alpha) => y.scale(&(al2.clone() * gxx.clone())),
                        (Block::Lambda, Block::Lambda) => y.scale(&gxx).axpy(&-x.dot(y), x).scale(&l2p2),
                        (Block::Mu, Block::Alpha) => y.scale(&(four.clone() * gxx.clone())),
                        (Block::Mu, Block::Lambda) => phix.scale(&(four.clone() * phix.dot(y))),
                        _ => zero,
                    };
                    let lhs = rn.apply(&rx.apply(y));
                    let rhs = rx.apply(&rn.apply(y));
                    let where_ = format!("X in {xb:?} sample {i}, Y in {yb:?} sample {j}");
                    t.vector(|| format!("R_N R_X Y vs table, {where_}"), &(&lhs - &want), scale * (1.0 + gxx.to_f64()));
                    t.vector(|| format!("R_X R_N Y vs table, {where_}"), &(&rhs - &want), scale * (1.0 + gxx.to_f64()));
                    n += 1;
                }
            }
        }
    }
    Ok(Note::Done(format!("{n} table entries")))
}
