use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::{Field, Scalar};
use crate::error::{Error, Result};

/// A column vector of the real model space.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<F>(Vec<F>);

impl<F: Field> Vector<F> {
    pub fn new(entries: Vec<F>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![F::zero(); dim])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = F::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[F] {
        &self.0
    }

    pub fn dot(&self, other: &Self) -> F {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = F::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc + x.clone() * y.clone();
        }
        acc
    }

    pub fn try_dot(&self, other: &Self) -> Result<F> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "dot",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self.dot(other))
    }

    pub fn norm_sq(&self) -> F {
        self.dot(self)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim());
        }
        Self(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// `self + c·other`
    pub fn axpy(&self, c: &F, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "axpy: dimension mismatch");
        if c.is_zero() {
            return self.clone();
        }
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(x, y)| if y.is_zero() { x.clone() } else { x.clone() + c.clone() * y.clone() })
                .collect(),
        )
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.0.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Vector<f64> {
        Vector(self.0.iter().map(Field::to_f64).collect())
    }
}

impl Vector<f64> {
    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(&(1.0 / n))
    }
}

impl<F> Index<usize> for Vector<F> {
    type Output = F;
    fn index(&self, i: usize) -> &F {
        &self.0[i]
    }
}

impl<F> IndexMut<usize> for Vector<F> {
    fn index_mut(&mut self, i: usize) -> &mut F {
        &mut self.0[i]
    }
}

impl<'a, F: Field> Add for &'a Vector<F> {
    type Output = Vector<F>;
    fn add(self, rhs: Self) -> Vector<F> {
        self.axpy(&F::one(), rhs)
    }
}

impl<'a, F: Field> Sub for &'a Vector<F> {
    type Output = Vector<F>;
    fn sub(self, rhs: Self) -> Vector<F> {
        self.axpy(&-F::one(), rhs)
    }
}

impl<'a, F: Field> Neg for &'a Vector<F> {
    type Output = Vector<F>;
    fn neg(self) -> Vector<F> {
        Vector(self.0.iter().map(|x| -x.clone()).collect())
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vector<F>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vector::dim);
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// Matrix of the linear map `v ↦ f(v)` on `F^n`, built column by column.
    pub fn from_linear_map(n: usize, mut f: impl FnMut(&Vector<F>) -> Vector<F>) -> Self {
        let cols: Vec<Vector<F>> = (0..n).map(|j| f(&Vector::unit(n, j))).collect();
        Self::from_columns(&cols)
    }

    pub fn outer(u: &Vector<F>, v: &Vector<F>) -> Self {
        Self::from_fn(u.dim(), v.dim(), |i, j| {
            if u[i].is_zero() || v[j].is_zero() {
                F::zero()
            } else {
                u[i].clone() * v[j].clone()
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x.clone() + y.clone()).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x.clone() - y.clone()).collect(),
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { op: "mat_mul", left: self.shape(), right: other.shape() });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        // zero-skipping keeps exact products of sparse operators cheap
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    let slot = &mut out[(i, j)];
                    *slot = slot.clone() + prod;
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &Vector<F>) -> Result<Vector<F>> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch { op: "apply", left: self.shape(), right: (v.dim(), 1) });
        }
        Ok(Vector::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(F::zero(), |acc, j| {
                        let a = &self[(i, j)];
                        if a.is_zero() || v[j].is_zero() {
                            acc
                        } else {
                            acc + a.clone() * v[j].clone()
                        }
                    })
                })
                .collect(),
        ))
    }

    /// `M·v`; panics on a dimension mismatch.
    pub fn apply(&self, v: &Vector<F>) -> Vector<F> {
        self.try_apply(v).expect("apply: dimension mismatch")
    }

    /// `AB − BA`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(Error::DimensionMismatch { op: "commutator", left: self.shape(), right: other.shape() });
        }
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }

    pub fn frobenius_norm_sq(&self) -> F {
        self.data.iter().filter(|x| !x.is_zero()).fold(F::zero(), |acc, x| acc + x.clone() * x.clone())
    }

    /// Frobenius norm as a reportable scalar. Exact mode returns the squared
    /// norm, which stays inside ℚ(√2); float mode returns the norm itself.
    pub fn frobenius_norm(&self) -> Scalar {
        let sq = self.frobenius_norm_sq();
        match sq.to_scalar() {
            Scalar::Float(x) => Scalar::Float(x.sqrt()),
            exact => exact,
        }
    }

    pub fn frobenius_norm_f64(&self) -> f64 {
        self.frobenius_norm_sq().to_f64().sqrt()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)].clone() - self[(j, i)].clone()).to_f64().abs());
            }
        }
        worst
    }

    /// Exact mode: entrywise equality. Float mode: asymmetry within `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        (0..self.rows).all(|i| {
            ((i + 1)..self.cols).all(|j| (self[(i, j)].clone() - self[(j, i)].clone()).is_negligible(tol))
        })
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.data.iter().all(|x| x.is_negligible(tol))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Field::to_f64).collect() }
    }

    /// Reduced row echelon form and pivot columns. A pivot candidate counts
    /// as zero when [`Field::is_negligible`] holds for it.
    fn rref(&self, tol: f64) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            // float: partial pivoting; exact: first nonzero entry
            let candidate = if F::MODE == super::Mode::Float {
                (row..m.rows)
                    .max_by(|&a, &b| m[(a, col)].to_f64().abs().total_cmp(&m[(b, col)].to_f64().abs()))
                    .filter(|&r| !m[(r, col)].is_negligible(tol))
            } else {
                (row..m.rows).find(|&r| !m[(r, col)].is_zero())
            };
            let Some(p) = candidate else { continue };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
            let inv = m[(row, col)].inv().expect("pivot is nonzero");
            for j in 0..m.cols {
                m[(row, j)] = m[(row, j)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in 0..m.cols {
                    let sub = factor.clone() * m[(row, j)].clone();
                    m[(r, j)] = m[(r, j)].clone() - sub;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.rref(tol).1.len()
    }

    /// A basis of the kernel, one vector per free column.
    pub fn nullspace(&self, tol: f64) -> Vec<Vector<F>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = Vector::zeros(self.cols);
                v[fc] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, fc)].clone();
                }
                v
            })
            .collect()
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, F: Field> Mul for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, rhs: Self) -> Matrix<F> {
        self.matmul(rhs).expect("mat_mul: dimension mismatch")
    }
}

impl<'a, F: Field> Add for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, rhs: Self) -> Matrix<F> {
        self.try_add(rhs).expect("add: dimension mismatch")
    }
}

impl<'a, F: Field> Sub for &'a Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, rhs: Self) -> Matrix<F> {
        self.try_sub(rhs).expect("sub: dimension mismatch")
    }
}

const GS_PIVOT_MIN: f64 = 1e-10;

/// Modified Gram–Schmidt with one re-orthogonalization pass. Each output vector
/// is signed so its first non-negligible component is positive.
pub fn gram_schmidt(vs: &[Vector<f64>]) -> Result<Vec<Vector<f64>>> {
    let mut out: Vec<Vector<f64>> = Vec::with_capacity(vs.len());
    for v in vs {
        if let Some(first) = out.first() {
            if first.dim() != v.dim() {
                return Err(Error::DimensionMismatch { op: "gram_schmidt", left: (first.dim(), 1), right: (v.dim(), 1) });
            }
        }
        let scale = v.norm().max(1.0);
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let c = w.dot(q);
                w = w.axpy(&-c, q);
            }
        }
        let pivot = w.norm() / scale;
        if pivot < GS_PIVOT_MIN {
            return Err(Error::RankDeficient { pivot });
        }
        let mut w = w.normalized();
        if let Some(lead) = w.entries().iter().find(|x| x.abs() > 1e-12) {
            if *lead < 0.0 {
                w = -&w;
            }
        }
        out.push(w);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QSqrt2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn diag_f(xs: &[f64]) -> Matrix<f64> {
        Matrix::diagonal(xs)
    }

    #[test]
    fn identity_commutes() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        let c = Matrix::identity(2).commutator(&m).unwrap();
        assert!(c.is_negligible(0.0));
        assert!(m.commutator(&m).unwrap().is_negligible(0.0));
    }

    #[test]
    fn commutator_of_zero_is_zero() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert!(Matrix::zeros(2, 2).commutator(&m).unwrap().is_negligible(0.0));
    }

    #[test]
    fn frobenius_of_diag() {
        assert_eq!(diag_f(&[1.0, 2.0]).frobenius_norm_sq(), 5.0);
        let exact: Matrix<QSqrt2> = Matrix::diagonal(&[QSqrt2::from_ratio(1, 1), QSqrt2::from_ratio(2, 1)]);
        assert_eq!(exact.frobenius_norm(), Scalar::Exact(QSqrt2::from_ratio(5, 1)));
        assert_eq!(diag_f(&[3.0, 4.0]).frobenius_norm(), Scalar::Float(5.0));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a: Matrix<f64> = Matrix::zeros(2, 3);
        let b: Matrix<f64> = Matrix::zeros(2, 3);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn exact_rank_and_nullspace() {
        let q = |p| QSqrt2::from_ratio(p, 1);
        let s2 = QSqrt2::sqrt2();
        // rows 2 = √2 · row 1
        let m = Matrix::from_rows(vec![
            vec![q(1), s2.clone(), q(0)],
            vec![s2.clone(), q(2), q(0)],
            vec![q(0), q(0), q(3)],
        ]);
        assert_eq!(m.rank(0.0), 2);
        let ns = m.nullspace(0.0);
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).is_negligible(0.0));
    }

    #[test]
    fn gram_schmidt_examples() {
        let out = gram_schmidt(&[Vector::new(vec![1.0, 0.0]), Vector::new(vec![1.0, 1.0])]).unwrap();
        assert_eq!(out, vec![Vector::new(vec![1.0, 0.0]), Vector::new(vec![0.0, 1.0])]);

        let out = gram_schmidt(&[Vector::new(vec![0.0, -1.0]), Vector::new(vec![1.0, 0.0])]).unwrap();
        assert_eq!(out, vec![Vector::new(vec![0.0, 1.0]), Vector::new(vec![1.0, 0.0])]);

        let err = gram_schmidt(&[Vector::new(vec![1.0, 1.0]), Vector::new(vec![2.0, 2.0])]);
        assert!(matches!(err, Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn gram_schmidt_random_triple_in_r6() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vs: Vec<Vector<f64>> = (0..3)
            .map(|_| Vector::new((0..6).map(|_| StandardNormal.sample(&mut rng)).collect()))
            .collect();
        let qs = gram_schmidt(&vs).unwrap();
        let q = Matrix::from_columns(&qs);
        let gram = &q.transpose() * &q;
        let resid = (&gram - &Matrix::identity(3)).max_abs();
        assert!(resid <= 1e-12, "gram residual {resid}");
    }
}
