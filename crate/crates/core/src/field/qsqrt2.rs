//! Exact arithmetic in the real quadratic field ℚ(√2).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `a + b·√2` with arbitrary-precision rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero() }
    }

    /// `p/q + (r/s)·√2` from machine integers.
    pub fn from_parts(p: i64, q: i64, r: i64, s: i64) -> Self {
        Self::new(ratio(p, q), ratio(r, s))
    }

    pub fn sqrt2() -> Self {
        Self { a: BigRational::zero(), b: BigRational::one() }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Field norm `a² − 2b²`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(2)) * &self.b * &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self { a: &self.a / &n, b: -(&self.b / &n) })
    }

    /// Exact sign, decided by comparing `a²` against `2b²`.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the term with the larger square wins
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(BigInt::from(2)) * &self.b * &self.b;
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

fn sign_of(x: &BigRational) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

pub(crate) fn ratio(p: i64, q: i64) -> BigRational {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn write_rational(f: &mut fmt::Formatter<'_>, x: &BigRational) -> fmt::Result {
    write!(f, "{}/{}", x.numer(), x.denom())
}

impl fmt::Display for QSqrt2 {
    /// Always `p/q + r/s*sqrt2`, which `FromStr` reads back losslessly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.a)?;
        f.write_str(" + ")?;
        write_rational(f, &self.b)?;
        f.write_str("*sqrt2")
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

impl FromStr for QSqrt2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(" + ") {
            Some((a, b)) => {
                let b = b
                    .trim()
                    .strip_suffix("*sqrt2")
                    .ok_or_else(|| Error::Parse(format!("missing *sqrt2 suffix in {s:?}")))?;
                Ok(Self::new(parse_rational(a)?, parse_rational(b)?))
            }
            None => Ok(Self::from_rational(parse_rational(s)?)),
        }
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: Self) -> Self {
        Self { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl<'a> Add<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: Self) -> QSqrt2 {
        QSqrt2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: Self) -> Self {
        Self { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl<'a> Sub<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: Self) -> QSqrt2 {
        QSqrt2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl<'a> Mul<&'a QSqrt2> for &'a QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: Self) -> QSqrt2 {
        if self.is_zero() || rhs.is_zero() {
            return QSqrt2::from_rational(BigRational::zero());
        }
        // (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2
        let two = BigRational::from_integer(BigInt::from(2));
        let a = &self.a * &rhs.a + two * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QSqrt2 { a, b }
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b }
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        QSqrt2::is_zero(self)
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }
}
