//! Moments of the m-fold Riesz-type measures and the series built from them.
//!
//! The measure with density prod_{k>=1} (1 + cos(m^k theta)) has moment
//! mu_j = 1/2^p exactly when j is a signed sum of p distinct powers
//! m^{k_1} > ... > m^{k_p} with every exponent at least 1, mu_0 = 1, and
//! mu_j = 0 otherwise (m >= 3; the m = 2 measure degenerates to 0/1 moments
//! on odd/even indices). Moments are computed by balanced signed-digit
//! extraction, never by expanding the infinite product.

use crate::scalar::{Rat, Scalar};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// The m-fold measure; m = 4 is the Riesz measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureSpec {
    m: u32,
}

impl MeasureSpec {
    pub fn new(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!(
                "fold parameter must be at least 2, got {m}"
            )));
        }
        Ok(MeasureSpec { m })
    }

    /// The Riesz measure (m = 4).
    pub fn riesz() -> Self {
        MeasureSpec { m: 4 }
    }

    pub fn fold(&self) -> u32 {
        self.m
    }
}

/// Signed base-m representation of an integer over powers m^1, m^2, ...
/// with digits in {-1, 0, +1}, or the statement that none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedDigitRep {
    /// digits[i] is the coefficient of m^(i+1).
    digits: Vec<i8>,
    representable: bool,
}

impl SignedDigitRep {
    fn none() -> Self {
        SignedDigitRep {
            digits: Vec::new(),
            representable: false,
        }
    }

    pub fn representable(&self) -> bool {
        self.representable
    }

    pub fn digits(&self) -> &[i8] {
        &self.digits
    }

    /// Number of nonzero digits (the p in mu_j = 1/2^p).
    pub fn weight(&self) -> u32 {
        self.digits.iter().filter(|&&d| d != 0).count() as u32
    }

    /// Sum of digit * m^(i+1); inverse of the extraction when representable.
    pub fn reconstruct(&self, m: u32) -> i64 {
        let mut total = 0i64;
        let mut power = m as i64;
        for &d in &self.digits {
            total += d as i64 * power;
            power *= m as i64;
        }
        total
    }
}

/// Balanced signed-digit extraction of j over powers m^1 and up.
///
/// For m >= 3 the representation is unique when it exists, because a signed
/// sum of powers below m^k is bounded by (m^k - 1)/(m - 1) < m^k / 2.
pub fn signed_digits(j: i64, m: u32) -> Result<SignedDigitRep> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!(
            "signed digits need m >= 3 (got {m}); the m = 2 moments use the closed form"
        )));
    }
    if j == 0 {
        return Ok(SignedDigitRep {
            digits: Vec::new(),
            representable: true,
        });
    }
    let m = m as i64;
    if j.rem_euclid(m) != 0 {
        return Ok(SignedDigitRep::none());
    }
    let mut r = j / m;
    let mut digits = Vec::new();
    while r != 0 {
        let d = r.rem_euclid(m);
        if d == 0 {
            digits.push(0);
            r /= m;
        } else if d == 1 {
            digits.push(1);
            r = (r - 1) / m;
        } else if d == m - 1 {
            digits.push(-1);
            r = (r + 1) / m;
        } else {
            return Ok(SignedDigitRep::none());
        }
    }
    Ok(SignedDigitRep {
        digits,
        representable: true,
    })
}

/// The j-th moment of the m-fold measure. Moments are real, so negative
/// indices fold onto positive ones.
pub fn moment(j: i64, spec: &MeasureSpec) -> Rat {
    let j = j.unsigned_abs() as i64;
    if spec.m == 2 {
        return if j % 2 == 0 {
            Rat::from_ratio(1, 1)
        } else {
            Rat::from_ratio(0, 1)
        };
    }
    if j == 0 {
        return Rat::from_ratio(1, 1);
    }
    let rep = signed_digits(j, spec.m).expect("m >= 3 checked above");
    if rep.representable() {
        Rat::from_ratio(1, 1i64 << rep.weight())
    } else {
        Rat::from_ratio(0, 1)
    }
}

/// Carathéodory series F(z) = 1 + 2 sum_{n>=1} mu_n z^n, exact.
pub fn caratheodory_series(spec: &MeasureSpec, order: usize) -> TruncatedSeries<Rat> {
    let two = Rat::from_ratio(2, 1);
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rat::from_ratio(1, 1));
    for n in 1..=order as i64 {
        coeffs.push(moment(n, spec).mul(&two));
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Compressed Carathéodory series G with G(z^m) = F(z), i.e. the degree-j
/// coefficient of G is the degree-mj coefficient of F. Only multiples of m
/// carry moments, so no information is lost.
pub fn compressed_caratheodory(spec: &MeasureSpec, order: usize) -> TruncatedSeries<Rat> {
    let two = Rat::from_ratio(2, 1);
    let m = spec.m as i64;
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(Rat::from_ratio(1, 1));
    for j in 1..=order as i64 {
        coeffs.push(moment(m * j, spec).mul(&two));
    }
    TruncatedSeries::from_coeffs(coeffs)
}

/// Schur function series f = (1/z)(F - 1)/(F + 1) from a Carathéodory
/// series with constant term 1. The valid order drops by exactly one.
pub fn schur_series<K: Scalar>(f_cara: &TruncatedSeries<K>) -> Result<TruncatedSeries<K>> {
    let c0 = f_cara.coeff(0);
    if !c0.sub(&K::one()).negligible() {
        return Err(Error::NotCaratheodory(c0.to_string()));
    }
    let one = K::one();
    let num = f_cara.sub(&TruncatedSeries::constant(one.clone(), f_cara.valid_order()));
    let den = f_cara.add_constant(&one);
    num.mul(&den.reciprocal()?).shift_down(1)
}

/// Compressed Schur series g with f(z) = g(z^m)/z: extracts the degree
/// mj - 1 coefficients of f, verifying that everything else vanishes.
pub fn compressed_schur(f: &TruncatedSeries<Rat>, m: u32) -> Result<TruncatedSeries<Rat>> {
    let m = m as usize;
    let mut coeffs = vec![Rat::from_ratio(0, 1)];
    for (n, c) in f.coeffs().iter().enumerate() {
        if (n + 1) % m == 0 {
            coeffs.push(c.clone());
        } else if !c.is_zero() {
            return Err(Error::SieveViolation {
                index: n,
                value: c.to_string(),
                m: m as u32,
            });
        }
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}
