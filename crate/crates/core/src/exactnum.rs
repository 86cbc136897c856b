//! Exact arithmetic in a real quadratic field `Q(sqrt(D))` and in the
//! Gaussian rationals `Q(i)`.
//!
//! Weights and degrees of irregular cones live in `Q(sqrt(D))`; every
//! comparison that decides a certificate goes through [`QuadExt::signum`],
//! which never touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("incompatible quadratic fields: sqrt({left}) and sqrt({right})")]
    IncompatibleField { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// An element `a + b*sqrt(D)` of a real quadratic field.
///
/// The representation is canonical: `D` is squarefree, and `D == 0` exactly
/// when `b == 0`. Structural equality is therefore numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: BigRational,
    surd: BigRational,
    radicand: u64,
}

/// Splits `d` into `(s, r)` with `d = s^2 * r` and `r` squarefree.
fn square_split(mut d: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, d)
}

impl QuadExt {
    /// Builds `a + b*sqrt(d)`, normalising `d` to its squarefree part.
    pub fn new(rational: BigRational, surd: BigRational, radicand: u64) -> Self {
        let mut x = QuadExt {
            rational,
            surd,
            radicand,
        };
        x.canonicalize();
        x
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        QuadExt {
            rational: r,
            surd: BigRational::zero(),
            radicand: 0,
        }
    }

    /// `sqrt(d)`, reduced (so `sqrt(12)` becomes `2*sqrt(3)` and `sqrt(9)` becomes `3`).
    pub fn sqrt(d: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    /// The exact dyadic rational equal to `x`. Used only for inexact inputs
    /// that must still flow through exact code paths.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self::from_rational)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 0
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.rational.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == 1
    }

    /// Puts the value into canonical form. Idempotent.
    pub fn canonicalize(&mut self) {
        if self.radicand != 0 {
            let (square, rest) = square_split(self.radicand);
            if square != 1 {
                self.surd = &self.surd * BigRational::from_integer(BigInt::from(square));
            }
            self.radicand = rest;
            if rest == 1 {
                self.rational = &self.rational + &self.surd;
                self.surd = BigRational::zero();
            }
        }
        if self.surd.is_zero() || self.radicand <= 1 {
            self.surd = BigRational::zero();
            self.radicand = 0;
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, ExactError> {
        match (self.radicand, other.radicand) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(ExactError::IncompatibleField { left: a, right: b }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        Ok(Self::new(
            &self.rational + &other.rational,
            &self.surd + &other.surd,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        let d = self.common_radicand(other)?;
        let dr = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.surd * &other.surd * dr;
        let surd = &self.rational * &other.surd + &self.surd * &other.rational;
        Ok(Self::new(rational, surd, d))
    }

    /// Multiplicative inverse via the conjugate: `1/(a+b√D) = (a-b√D)/(a²-b²D)`.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let dr = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * dr;
        // norm != 0 because D is squarefree and not 1
        Ok(Self::new(
            &self.rational / &norm,
            -(&self.surd / &norm),
            self.radicand,
        ))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.rational * r, &self.surd * r, self.radicand)
    }

    /// Exact sign of `a + b*sqrt(D)`.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.rational);
        let sb = rational_sign(&self.surd);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a^2 with b^2 D
        let dr = BigRational::from_integer(BigInt::from(self.radicand));
        let a2 = &self.rational * &self.rational;
        let b2d = &self.surd * &self.surd * dr;
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering, ExactError> {
        Ok(match self.try_sub(other)?.signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        })
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Smaller of the two values; panics on incompatible fields.
    pub fn min_exact(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Nearest `f64`. Reporting and optimizer seeds only; never used to decide anything.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        if self.radicand == 0 {
            return a;
        }
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        let s = (self.radicand as f64).sqrt();
        let sa = rational_sign(&self.rational);
        let sb = rational_sign(&self.surd);
        if sa == 0 || sa == sb {
            return a + b * s;
        }
        // a and b√D cancel: evaluate (a² - b²D) / (a - b√D) instead
        let dr = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * dr;
        norm.to_f64().unwrap_or(f64::NAN) / (a - b * s)
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadExt {
    /// Canonical text: `a`, `b*sqrt(D)` or `a + b*sqrt(D)`, rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 0 {
            return write!(f, "{}", fmt_rational(&self.rational));
        }
        let abs_b = self.surd.abs();
        let surd = if abs_b.is_one() {
            format!("sqrt({})", self.radicand)
        } else {
            format!("{}*sqrt({})", fmt_rational(&abs_b), self.radicand)
        };
        let negative = self.surd.is_negative();
        if self.rational.is_zero() {
            if negative {
                write!(f, "-{surd}")
            } else {
                write!(f, "{surd}")
            }
        } else {
            let op = if negative { '-' } else { '+' };
            write!(f, "{} {op} {surd}", fmt_rational(&self.rational))
        }
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rational: -&self.rational,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }
}

// Operator forms panic on mixed radicands. Code handling user input goes
// through the `try_*` methods; internal code only ever combines values that
// come from one validated `Multiweight`.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$try(rhs).expect("quadratic field arithmetic")
            }
        }
        impl $trait<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadExt> for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl From<BigRational> for QuadExt {
    fn from(r: BigRational) -> Self {
        QuadExt::from_rational(r)
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat::real(BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat::new(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }

    pub fn to_complex(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    /// True when the leading printed sign is a minus: negative real part, or
    /// zero real part and negative imaginary part.
    pub fn is_negative_like(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative() && self.im.is_zero()
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => {
                if self.im.is_one() {
                    write!(f, "i")
                } else if (-&self.im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}*i", fmt_rational(&self.im))
                }
            }
            (false, false) => {
                let op = if self.im.is_negative() { '-' } else { '+' };
                let abs_im = self.im.abs();
                if abs_im.is_one() {
                    write!(f, "({} {op} i)", fmt_rational(&self.re))
                } else {
                    write!(f, "({} {op} {}*i)", fmt_rational(&self.re), fmt_rational(&abs_im))
                }
            }
        }
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        &self + &rhs
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        &self * &rhs
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

/// Serialized as `{"exact": "3 + sqrt(3)", "approx": 4.732...}`.
impl serde::Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QuadExt", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("approx", &self.to_f64())?;
        st.end()
    }
}

impl serde::Serialize for GaussRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: u64) -> QuadExt {
        QuadExt::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
            d,
        )
    }

    #[test]
    fn cancellation_to_rational() {
        let x = q(3, -1, 3) + QuadExt::sqrt(3);
        assert_eq!(x, QuadExt::from_int(3));
        assert!(x.is_rational());
    }

    #[test]
    fn conjugate_product() {
        // (3 - √3)(3 + √3) = 9 - 3
        assert_eq!(q(3, -1, 3) * q(3, 1, 3), QuadExt::from_int(6));
    }

    #[test]
    fn inverse_multiplies_back() {
        let x = q(3, -1, 3);
        let inv = x.inv().unwrap();
        let expected = QuadExt::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 6.into()),
            3,
        );
        assert_eq!(inv, expected);
        assert_eq!(&x * &inv, QuadExt::one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(QuadExt::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let err = QuadExt::sqrt(3).try_add(&QuadExt::sqrt(7)).unwrap_err();
        assert_eq!(err, ExactError::IncompatibleField { left: 3, right: 7 });
        // a rational operand is compatible with anything
        assert!(QuadExt::from_int(2).try_mul(&QuadExt::sqrt(7)).is_ok());
    }

    #[test]
    fn signs() {
        assert_eq!(QuadExt::zero().signum(), 0);
        assert_eq!(q(3, -1, 3).signum(), 1);
        // 25 < 28
        assert_eq!(q(5, -2, 7).signum(), -1);
        assert_eq!(q(-5, 2, 7).signum(), 1);
        assert_eq!(q(-1, -1, 2).signum(), -1);
    }

    #[test]
    fn canonical_reduction() {
        assert_eq!(QuadExt::sqrt(12), q(0, 2, 3));
        assert_eq!(QuadExt::sqrt(9), QuadExt::from_int(3));
        assert_eq!(QuadExt::sqrt(1), QuadExt::one());
        assert_eq!(QuadExt::sqrt(0), QuadExt::zero());
        let zero_surd = QuadExt::new(BigRational::one(), BigRational::zero(), 5);
        assert_eq!(zero_surd.radicand(), 0);
    }

    #[test]
    fn float_conversion() {
        assert!((q(3, -1, 3).to_f64() - 1.2679491924311228).abs() < 1e-15);
        assert_eq!(QuadExt::from_ratio(1, 2).to_f64(), 0.5);
        let x = QuadExt::new(
            BigRational::new(3.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
            3,
        );
        assert!((x.to_f64() - (3.0 + 3f64.sqrt()) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(3, -1, 3).to_string(), "3 - sqrt(3)");
        assert_eq!(QuadExt::sqrt(3).to_string(), "sqrt(3)");
        assert_eq!((-QuadExt::sqrt(3)).to_string(), "-sqrt(3)");
        let x = QuadExt::new(
            BigRational::new(BigInt::from(7), BigInt::from(4)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
            3,
        );
        assert_eq!(x.to_string(), "7/4 - 3/4*sqrt(3)");
        assert_eq!(QuadExt::from_ratio(-23, 9).to_string(), "-23/9");
    }

    #[test]
    fn gaussian_display() {
        assert_eq!(GaussRat::i().to_string(), "i");
        assert_eq!((-GaussRat::i()).to_string(), "-i");
        let z = GaussRat::new(BigRational::one(), BigRational::from_integer((-2).into()));
        assert_eq!(z.to_string(), "(1 - 2*i)");
        assert_eq!(GaussRat::from_ratio(-1, 2).to_string(), "-1/2");
    }

    #[test]
    fn gaussian_inverse() {
        let z = GaussRat::new(BigRational::one(), BigRational::one());
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussRat::zero().inv().is_err());
    }
}
