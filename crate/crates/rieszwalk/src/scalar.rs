//! The two coefficient fields behind the series arithmetic: exact rationals
//! with unbounded integers, and ordinary doubles.
//!
//! The exact field is the reference path: the deep Schur iterations cancel
//! catastrophically in floating point if the data is not exactly
//! representable, and every quantity upstream of the walk operator is
//! rational here. The double field exists because the evolution itself needs
//! real arithmetic anyway and is orders of magnitude faster.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Exact rational scalar used throughout the reference path.
pub type Rat = num_rational::BigRational;

/// Absolute tolerance below which a double coefficient counts as an exact
/// zero when dividing a series by z^k.
pub const SHIFT_TOL: f64 = 1e-12;
/// Smallest double constant term accepted for a series reciprocal.
pub const INVERT_TOL: f64 = 1e-14;
/// Tolerance on |alpha| = 1 detection in the double Schur path.
pub const UNIT_TOL: f64 = 1e-9;

/// Coefficient field of a [`crate::series::TruncatedSeries`].
///
/// Mixing fields is impossible by construction: a series is generic over its
/// scalar, so the "mixed field" error of a dynamically-tagged design is a
/// compile error here.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + 'static {
    /// Short field name used in error messages.
    const FIELD: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn from_rat(value: &Rat) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Field division; the caller guarantees `rhs` is invertible.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_zero(&self) -> bool;
    /// Whether the value may be treated as an exact zero by `shift_down`.
    fn negligible(&self) -> bool;
    /// Whether a series with this constant term may be inverted.
    fn invertible(&self) -> bool;
    /// |self| > 1, beyond tolerance in the double field.
    fn abs_exceeds_one(&self) -> bool;
    /// |self| = 1, within tolerance in the double field.
    fn abs_is_one(&self) -> bool;

    fn to_f64(&self) -> f64;
}

impl Scalar for Rat {
    const FIELD: &'static str = "exact";

    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rat::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_rat(value: &Rat) -> Self {
        value.clone()
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn negligible(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }

    fn invertible(&self) -> bool {
        !num_traits::Zero::is_zero(self)
    }

    fn abs_exceeds_one(&self) -> bool {
        self.numer().abs() > self.denom().abs()
    }

    fn abs_is_one(&self) -> bool {
        self.numer().abs() == self.denom().abs()
    }

    fn to_f64(&self) -> f64 {
        rat_to_f64(self)
    }
}

impl Scalar for f64 {
    const FIELD: &'static str = "double";

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_rat(value: &Rat) -> Self {
        rat_to_f64(value)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn negligible(&self) -> bool {
        self.abs() < SHIFT_TOL
    }

    fn invertible(&self) -> bool {
        self.abs() > INVERT_TOL
    }

    fn abs_exceeds_one(&self) -> bool {
        self.abs() > 1.0 + UNIT_TOL
    }

    fn abs_is_one(&self) -> bool {
        (self.abs() - 1.0).abs() <= UNIT_TOL
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Rational-to-double conversion that stays accurate for huge numerators and
/// denominators, where converting the parts separately would overflow to
/// infinity. The quotient is scaled into a ~64-bit integer first, so the
/// result is correct to the last couple of ulps.
pub fn rat_to_f64(value: &Rat) -> f64 {
    if num_traits::Zero::is_zero(value) {
        return 0.0;
    }
    let numer = value.numer();
    let denom = value.denom();
    let sign = if (numer.is_negative()) != (denom.is_negative()) {
        -1.0
    } else {
        1.0
    };
    let a = numer.abs();
    let b = denom.abs();
    // Shift so the integer quotient carries ~64 significant bits.
    let shift: i64 = 64 + b.bits() as i64 - a.bits() as i64;
    let q = if shift >= 0 {
        (a << shift as u64) / &b
    } else {
        a / (&b << (-shift) as u64)
    };
    let q = q.to_f64().expect("64-bit quotient fits in f64");
    sign * q * (-shift as f64).exp2()
}
