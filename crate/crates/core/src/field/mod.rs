//! Scalars (exact ℚ(√2) and binary64) and the small dense kernels built on them.
//!
//! Geometry code is generic over [`Field`], so one computation runs in exactly
//! one mode and mixing modes is a type error. [`Scalar`] is the dynamically
//! tagged form used at reporting boundaries, where mixing is a runtime error.

mod eigen;
mod linalg;
mod qsqrt2;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use eigen::{cluster_eigenvalues, same_cluster, sym_eigen, Cluster, SymEigen, JACOBI_MAX_SWEEPS};
pub use linalg::{gram_schmidt, Matrix, Vector};
pub use qsqrt2::QSqrt2;
pub use qsqrt2::parse_rational;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

pub trait Field:
    Clone
    + fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: Mode;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// `None` in exact mode: a binary64 value has no place in ℚ(√2) computations.
    fn from_f64(x: f64) -> Option<Self>;
    fn sqrt2() -> Self;
    fn inv(&self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
    fn to_scalar(&self) -> Scalar;

    /// Exact mode: literally zero. Float mode: `|x| <= tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.inv()?)
    }
}

impl Field for f64 {
    const MODE: Mode = Mode::Float;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn from_f64(x: f64) -> Option<Self> {
        Some(x)
    }
    fn sqrt2() -> Self {
        std::f64::consts::SQRT_2
    }
    fn inv(&self) -> Result<Self> {
        Ok(1.0 / self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Float(*self)
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

impl Field for QSqrt2 {
    const MODE: Mode = Mode::Exact;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QSqrt2::from_parts(num, den, 0, 1)
    }
    fn from_rational(r: &BigRational) -> Self {
        QSqrt2::from_rational(r.clone())
    }
    fn from_f64(_: f64) -> Option<Self> {
        None
    }
    fn sqrt2() -> Self {
        QSqrt2::sqrt2()
    }
    fn inv(&self) -> Result<Self> {
        QSqrt2::inv(self)
    }
    fn is_zero(&self) -> bool {
        QSqrt2::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        QSqrt2::to_f64(self)
    }
    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }
    fn is_negligible(&self, _tol: f64) -> bool {
        QSqrt2::is_zero(self)
    }
}

/// A mode-tagged scalar. Arithmetic between different modes is rejected.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(QSqrt2),
    Float(f64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::ModeMismatch { left: self.mode(), right: other.mode() }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Ok(Scalar::Exact(x + y)),
            (Scalar::Float(x), Scalar::Float(y)) => Ok(Scalar::Float(x + y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Ok(Scalar::Exact(x * y)),
            (Scalar::Float(x), Scalar::Float(y)) => Ok(Scalar::Float(x * y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(-x.clone()),
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Exact(x) => Ok(Scalar::Exact(x.inv()?)),
            Scalar::Float(x) => Ok(Scalar::Float(1.0 / x)),
        }
    }

    pub fn equals(&self, other: &Scalar) -> Result<bool> {
        match (self, other) {
            (Scalar::Exact(x), Scalar::Exact(y)) => Ok(x == y),
            (Scalar::Float(x), Scalar::Float(y)) => Ok(x == y),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Float(x) => *x == 0.0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(x) => x.to_f64(),
            Scalar::Float(x) => *x,
        }
    }

    /// Lossless text form: 17 significant digits for floats, `p/q + r/s*sqrt2` for exact values.
    pub fn encode(&self) -> String {
        match self {
            Scalar::Exact(x) => x.to_string(),
            Scalar::Float(x) => format!("{x:.16e}"),
        }
    }

    pub fn decode(mode: Mode, s: &str) -> Result<Scalar> {
        match mode {
            Mode::Exact => Ok(Scalar::Exact(s.parse()?)),
            Mode::Float => s
                .trim()
                .parse::<f64>()
                .map(Scalar::Float)
                .map_err(|e| Error::Parse(format!("{s:?}: {e}"))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}
