use super::HypersurfacePoint;
use crate::error::{Error, Result};
use crate::field::{cluster_eigenvalues, sym_eigen, Field, Matrix, Vector};

#[derive(Clone, Debug)]
pub struct EigenCluster {
    pub value: f64,
    pub multiplicity: usize,
    /// Orthonormal, inside `TM`.
    pub basis: Vec<Vector<f64>>,
}

#[derive(Clone, Debug)]
pub struct EigenStructure {
    /// Ascending by value.
    pub clusters: Vec<EigenCluster>,
}

impl EigenStructure {
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        self.clusters.iter().map(|c| (c.value, c.multiplicity)).collect()
    }
}

impl HypersurfacePoint<f64> {
    /// Orthonormal basis of `TM`, one vector per coordinate direction not swallowed by `N`.
    pub fn tangent_frame(&self) -> Vec<Vector<f64>> {
        let n = self.dim();
        let mut frame: Vec<Vector<f64>> = vec![self.normal().clone()];
        for k in 0..n {
            let mut v = Vector::unit(n, k);
            for _ in 0..2 {
                for f in &frame {
                    v = v.axpy(&-v.dot(f), f);
                }
            }
            if v.norm() > 0.5 {
                frame.push(v.normalized());
            }
        }
        frame.remove(0);
        frame
    }

    /// Clustered spectrum of `S` on `TM`.
    pub fn eigenstructure(&self) -> Result<EigenStructure> {
        let frame = self.tangent_frame();
        let t = Matrix::from_columns(&frame);
        let restricted = &(&t.transpose() * self.shape()) * &t;
        let eig = sym_eigen(&restricted)?;
        let clusters = cluster_eigenvalues(&eig.values)?
            .into_iter()
            .map(|c| EigenCluster {
                value: c.value,
                multiplicity: c.members.len(),
                basis: c.members.iter().map(|&k| t.apply(&eig.vector(k))).collect(),
            })
            .collect();
        Ok(EigenStructure { clusters })
    }
}

impl<F: Field> HypersurfacePoint<F> {
    /// Dimension of `{X ∈ TM : SX = λX}`.
    pub fn eigenspace_dim(&self, value: &F, tol: f64) -> usize {
        let n = self.dim();
        let shifted = self.shape() - &Matrix::identity(n).scale(value);
        let stacked = Matrix::from_fn(n + 1, n, |i, j| if i < n { shifted[(i, j)].clone() } else { self.normal()[j].clone() });
        n - stacked.rank(tol)
    }

    /// Checks a claimed spectrum on `TM`: each listed eigenspace has the listed
    /// dimension and together they fill `TM`. Returns the dimensions found.
    pub fn verify_eigen_table(&self, expected: &[(F, usize)], tol: f64) -> Result<Vec<usize>> {
        let found: Vec<usize> = expected.iter().map(|(v, _)| self.eigenspace_dim(v, tol)).collect();
        let total: usize = found.iter().sum();
        let matches = found.iter().zip(expected).all(|(f, (_, e))| f == e);
        if !matches || total != self.dim() - 1 {
            return Err(Error::Precondition(format!(
                "eigenspace dimensions {found:?} differ from expected {:?}",
                expected.iter().map(|(_, k)| *k).collect::<Vec<_>>()
            )));
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypersurface::{build_tube, TubeSpec};
    use crate::field::QSqrt2;
    use crate::quadric::QuadricPoint;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use std::f64::consts::SQRT_2;

    fn one() -> BigRational {
        BigRational::from_integer(BigInt::from(1))
    }

    #[test]
    fn float_tube_m4() {
        let t = build_tube::<f64>(&TubeSpec::tan_ratio(4, one()).unwrap()).unwrap();
        let e = t.point.eigenstructure().unwrap();
        let got = e.multiplicities();
        assert_eq!(got.len(), 3);
        let want = [(-SQRT_2, 1), (0.0, 3), (SQRT_2, 3)];
        for ((v, k), (wv, wk)) in got.iter().zip(want) {
            assert!((v - wv).abs() < 1e-10);
            assert_eq!(*k, wk);
        }
        for c in &e.clusters {
            for v in &c.basis {
                assert!(v.dot(t.point.normal()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn radius_spectrum_matches_formulas() {
        let r = 0.3;
        let t = build_tube::<f64>(&TubeSpec::radius(3, r).unwrap()).unwrap();
        let vals: Vec<f64> = t.point.eigenstructure().unwrap().clusters.iter().map(|c| c.value).collect();
        let x = SQRT_2 * r;
        let mut want = vec![-SQRT_2 / x.tan(), SQRT_2 * x.tan(), 0.0];
        want.sort_by(f64::total_cmp);
        for (v, w) in vals.iter().zip(&want) {
            assert!((v - w).abs() < 1e-10);
        }
    }

    #[test]
    fn zero_shape_single_cluster() {
        let q = QuadricPoint::<f64>::new(3).unwrap();
        let a = q.base_conjugation();
        let h = HypersurfacePoint::new(q.clone(), a, q.e(0), Matrix::zeros(6, 6)).unwrap();
        assert_eq!(h.eigenstructure().unwrap().multiplicities(), vec![(0.0, 5)]);
    }

    #[test]
    fn exact_table() {
        let t = build_tube::<QSqrt2>(&TubeSpec::tan_ratio(5, one()).unwrap()).unwrap();
        assert_eq!(t.point.verify_eigen_table(&t.expected_table(), 0.0).unwrap(), vec![1, 4, 4]);
        let mut wrong = t.expected_table();
        wrong[1].0 = QSqrt2::from_ratio(1, 1);
        assert!(t.point.verify_eigen_table(&wrong, 0.0).is_err());
    }
}
