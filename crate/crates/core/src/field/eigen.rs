//! Cyclic Jacobi eigensolver for small symmetric float matrices.

use super::{Matrix, Vector};
use crate::error::{Error, Result};

pub const JACOBI_MAX_SWEEPS: usize = 50;
const OFF_DIAGONAL_THRESHOLD: f64 = 1e-13;
const SYMMETRY_TOL: f64 = 1e-12;
const CLUSTER_REL_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct SymEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal; column `k` belongs to `values[k]`.
    pub vectors: Matrix<f64>,
}

pub fn sym_eigen(m: &Matrix<f64>) -> Result<SymEigen> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { op: "sym_eigen", left: m.shape(), right: m.shape() });
    }
    let n = m.rows();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    let asym = m.max_asymmetry();
    if asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }

    // symmetrize so the rotations see exactly one value per pair
    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let mut v = Matrix::<f64>::identity(n);
    let norm = a.frobenius_norm_f64();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<f64>()
            .sqrt();
        if off <= OFF_DIAGONAL_THRESHOLD * norm || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate_columns(&mut a, p, q, c, s);
                rotate_rows(&mut a, p, q, c, s);
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                rotate_columns(&mut v, p, q, c, s);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(SymEigen { values, vectors })
}

fn rotate_columns(a: &mut Matrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.rows() {
        let (akp, akq) = (a[(k, p)], a[(k, q)]);
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
}

fn rotate_rows(a: &mut Matrix<f64>, p: usize, q: usize, c: f64, s: f64) {
    for k in 0..a.cols() {
        let (apk, aqk) = (a[(p, k)], a[(q, k)]);
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
}

impl SymEigen {
    pub fn vector(&self, k: usize) -> Vector<f64> {
        self.vectors.column(k)
    }
}

/// One group of numerically equal eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub members: Vec<usize>,
}

pub fn same_cluster(x: f64, y: f64) -> bool {
    (x - y).abs() <= CLUSTER_REL_TOL * (1.0 + x.abs().max(y.abs()))
}

/// Groups ascending eigenvalues. Chains whose total spread exceeds the
/// tolerance, or neighbouring clusters that nearly touch, are reported as
/// ambiguous rather than merged.
pub fn cluster_eigenvalues(values: &[f64]) -> Result<Vec<Cluster>> {
    let mut clusters: Vec<Cluster> = Vec::new();
    for (k, &x) in values.iter().enumerate() {
        match clusters.last_mut() {
            Some(c) if same_cluster(values[*c.members.last().unwrap()], x) => {
                let first = values[c.members[0]];
                if !same_cluster(first, x) {
                    return Err(Error::ClusterAmbiguity { a: first, b: x });
                }
                c.members.push(k);
            }
            Some(c) => {
                let last = values[*c.members.last().unwrap()];
                if (x - last).abs() <= 10.0 * CLUSTER_REL_TOL * (1.0 + x.abs().max(last.abs())) {
                    return Err(Error::ClusterAmbiguity { a: last, b: x });
                }
                clusters.push(Cluster { value: x, members: vec![k] });
            }
            None => clusters.push(Cluster { value: x, members: vec![k] }),
        }
    }
    for c in &mut clusters {
        c.value = c.members.iter().map(|&k| values[k]).sum::<f64>() / c.members.len() as f64;
    }
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reconstruction_error(m: &Matrix<f64>, e: &SymEigen) -> f64 {
        let d = Matrix::diagonal(&e.values);
        let r = &(&e.vectors * &d) * &e.vectors.transpose();
        (&r - m).frobenius_norm_f64()
    }

    #[test]
    fn diagonal_input() {
        let e = sym_eigen(&Matrix::diagonal(&[0.0, -2.0, 3.0])).unwrap();
        assert_eq!(e.values, vec![-2.0, 0.0, 3.0]);
    }

    #[test]
    fn swap_matrix() {
        let e = sym_eigen(&Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonsymmetric() {
        let m = Matrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(sym_eigen(&m), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn clustering_counts_multiplicities() {
        let c = cluster_eigenvalues(&[-1.0, 0.0, 1e-14, 2.0, 2.0 + 1e-12, 2.0]).unwrap();
        let mults: Vec<usize> = c.iter().map(|c| c.members.len()).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn clustering_flags_near_touching_groups() {
        assert!(matches!(cluster_eigenvalues(&[1.0, 1.0 + 5e-8]), Err(Error::ClusterAmbiguity { .. })));
    }

    proptest! {
        #[test]
        fn reconstructs_random_symmetric(entries in proptest::collection::vec(-5.0f64..5.0, 64)) {
            let n = 8;
            let m = Matrix::from_fn(n, n, |i, j| entries[i.min(j) * n + i.max(j)]);
            let e = sym_eigen(&m).unwrap();
            let norm = m.frobenius_norm_f64();
            prop_assert!(reconstruction_error(&m, &e) <= 1e-11 * norm.max(1e-300));
            let gram = &e.vectors.transpose() * &e.vectors;
            prop_assert!((&gram - &Matrix::identity(n)).max_abs() <= 1e-12);
            for k in 0..n {
                let v = e.vector(k);
                let r = &m.apply(&v) - &v.scale(&e.values[k]);
                prop_assert!(r.norm() <= 1e-12 * norm.max(1e-300));
            }
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}
