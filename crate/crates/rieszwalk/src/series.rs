//! Truncated formal power series in one variable.
//!
//! A series holds coefficients for degrees `0..=valid_order` and nothing
//! else: coefficients beyond the valid order are *unknown*, not zero. Every
//! operation returns a result whose valid order is the largest order to
//! which the output is actually correct, so a chain of operations degrades
//! its guarantee explicitly instead of silently zero-padding. The Schur
//! algorithm consumes one order per step and relies on this bookkeeping.

use crate::scalar::Scalar;
use crate::{Error, Result};

/// Dense truncated power series; index n holds the coefficient of z^n.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> TruncatedSeries<K> {
    /// Builds a series from its coefficients; the valid order is one less
    /// than the number of coefficients supplied.
    pub fn from_coeffs(coeffs: Vec<K>) -> Self {
        assert!(!coeffs.is_empty(), "a series must carry at least degree 0");
        TruncatedSeries { coeffs }
    }

    /// The zero series, known to be zero through `order`.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![K::zero(); order + 1],
        }
    }

    /// Constant series with the given value, valid through `order`.
    pub fn constant(value: K, order: usize) -> Self {
        let mut coeffs = vec![K::zero(); order + 1];
        coeffs[0] = value;
        TruncatedSeries { coeffs }
    }

    /// `coeff * z^degree`, valid through `order` (degree must fit).
    pub fn monomial(coeff: K, degree: usize, order: usize) -> Self {
        assert!(degree <= order, "monomial degree beyond requested order");
        let mut coeffs = vec![K::zero(); order + 1];
        coeffs[degree] = coeff;
        TruncatedSeries { coeffs }
    }

    pub fn valid_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^n. Panics beyond the valid order: those
    /// coefficients are unknown and reading one is a caller bug.
    pub fn coeff(&self, n: usize) -> &K {
        assert!(
            n < self.coeffs.len(),
            "coefficient {n} beyond valid order {}",
            self.valid_order()
        );
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Restriction to `min(order, valid_order)`.
    pub fn truncated(&self, order: usize) -> Self {
        let len = (order + 1).min(self.coeffs.len());
        TruncatedSeries {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..len)
                .map(|i| self.coeffs[i].add(&rhs.coeffs[i]))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let len = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..len)
                .map(|i| self.coeffs[i].sub(&rhs.coeffs[i]))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, factor: &K) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(factor)).collect(),
        }
    }

    /// Adds a constant to the degree-0 coefficient.
    pub fn add_constant(&self, value: &K) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].add(value);
        out
    }

    /// Cauchy product truncated at the smaller valid order. Zero
    /// coefficients are skipped, which matters for the heavily sieved
    /// series this crate manipulates.
    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.valid_order().min(rhs.valid_order());
        let mut coeffs = vec![K::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { coeffs }
    }

    /// Multiplicative inverse through the valid order, by the standard
    /// recurrence b_0 = 1/a_0, b_n = -(sum a_k b_{n-k})/a_0.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !a0.invertible() {
            return Err(Error::NonInvertibleSeries(a0.to_string()));
        }
        let order = self.valid_order();
        let mut out = vec![K::zero(); order + 1];
        out[0] = K::one().div(a0);
        for n in 1..=order {
            let mut acc = K::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() || out[n - k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out[n] = acc.neg().div(a0);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Division by z^k. Requires all coefficients below degree k to vanish
    /// (within the field's shift tolerance); the valid order drops by k.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.valid_order() {
            return Err(Error::InvalidArgument(format!(
                "cannot divide a series of valid order {} by z^{}",
                self.valid_order(),
                k
            )));
        }
        for (degree, c) in self.coeffs.iter().take(k).enumerate() {
            if !c.negligible() {
                return Err(Error::NotDivisible {
                    power: k,
                    degree,
                    value: c.to_string(),
                });
            }
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplication by z^k. All new low coefficients are exact zeros, so
    /// the valid order *grows* by k.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// Substitution z -> z^m. Every gap coefficient is known zero, so the
    /// valid order becomes m * valid_order + (m - 1).
    pub fn compose_monomial(&self, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "monomial substitution requires m >= 1".into(),
            ));
        }
        let order = m * self.valid_order() + (m - 1);
        let mut coeffs = vec![K::zero(); order + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[m * j] = c.clone();
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Coefficient-wise conversion into another scalar field (used to seed
    /// the double path from exactly computed rational data).
    pub fn map<K2: Scalar>(&self) -> TruncatedSeries<K2>
    where
        K: AsRat,
    {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| K2::from_rat(c.as_rat())).collect(),
        }
    }
}

/// Access to the exact value of a coefficient, for field conversions.
pub trait AsRat {
    fn as_rat(&self) -> &crate::scalar::Rat;
}

impl AsRat for crate::scalar::Rat {
    fn as_rat(&self) -> &crate::scalar::Rat {
        self
    }
}

impl<'a, K: Scalar> std::ops::Add for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn add(self, rhs: Self) -> TruncatedSeries<K> {
        TruncatedSeries::add(self, rhs)
    }
}

impl<'a, K: Scalar> std::ops::Sub for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn sub(self, rhs: Self) -> TruncatedSeries<K> {
        TruncatedSeries::sub(self, rhs)
    }
}

impl<'a, K: Scalar> std::ops::Mul for &'a TruncatedSeries<K> {
    type Output = TruncatedSeries<K>;
    fn mul(self, rhs: Self) -> TruncatedSeries<K> {
        TruncatedSeries::mul(self, rhs)
    }
}
