//! The Schur algorithm: iterated Möbius steps on a Schur-function series,
//! reading off one Verblunsky parameter per step.
//!
//! Each step computes alpha_k = f_k(0) and
//! f_{k+1} = (1/z)(f_k - alpha_k) / (1 - alpha_k f_k), consuming exactly one
//! order of series validity. All measures here are symmetric, so the
//! parameters are real and conjugation drops out.

use crate::measure::{compressed_caratheodory, schur_series, MeasureSpec};
use crate::scalar::Scalar;
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Verblunsky parameters alpha_0, alpha_1, ... with their rho_k^2 = 1 - alpha_k^2.
///
/// rho_k is irrational in general (rho_3 = sqrt(3)/2 for the Riesz walk), so
/// the exact path stores rho^2 and materializes rho as a double only when
/// the walk operator is built.
#[derive(Clone, Debug, PartialEq)]
pub struct VerblunskySequence<K: Scalar> {
    alphas: Vec<K>,
    rho_sqs: Vec<K>,
    terminated_at: Option<usize>,
}

impl<K: Scalar> VerblunskySequence<K> {
    fn push(&mut self, alpha: K) {
        let rho_sq = K::one().sub(&alpha.mul(&alpha));
        self.alphas.push(alpha);
        self.rho_sqs.push(rho_sq);
    }

    /// Number of stored parameters.
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// Index k with |alpha_k| = 1, if the algorithm hit one. The measure is
    /// then finitely supported and no further parameters exist.
    pub fn terminated_at(&self) -> Option<usize> {
        self.terminated_at
    }

    /// alpha_k. Past a termination index the sequence is extended by zeros,
    /// which leaves the decoupled remainder of the operator a pure shift.
    pub fn alpha(&self, k: usize) -> K {
        if k < self.alphas.len() {
            self.alphas[k].clone()
        } else if self.terminated_at.is_some() {
            K::zero()
        } else {
            panic!(
                "alpha_{k} not extracted (have {}, no termination)",
                self.alphas.len()
            );
        }
    }

    pub fn rho_sq(&self, k: usize) -> K {
        if k < self.rho_sqs.len() {
            self.rho_sqs[k].clone()
        } else if self.terminated_at.is_some() {
            K::one()
        } else {
            panic!(
                "rho_{k} not extracted (have {}, no termination)",
                self.rho_sqs.len()
            );
        }
    }

    pub fn alpha_f64(&self, k: usize) -> f64 {
        self.alpha(k).to_f64()
    }

    pub fn rho_f64(&self, k: usize) -> f64 {
        self.rho_sq(k).to_f64().max(0.0).sqrt()
    }

    /// Whether alpha_k is available, directly or by zero extension.
    pub fn covers(&self, k: usize) -> bool {
        k < self.alphas.len() || self.terminated_at.is_some()
    }

    pub fn alphas(&self) -> &[K] {
        &self.alphas
    }
}

/// Runs the Schur algorithm, extracting `count` parameters (fewer if a
/// |alpha| = 1 termination is reached first).
pub fn schur_algorithm<K: Scalar>(
    f: &TruncatedSeries<K>,
    count: usize,
) -> Result<VerblunskySequence<K>> {
    if f.valid_order() < count {
        return Err(Error::InsufficientOrder {
            available: f.valid_order(),
            requested: count,
        });
    }
    let mut seq = VerblunskySequence {
        alphas: Vec::with_capacity(count),
        rho_sqs: Vec::with_capacity(count),
        terminated_at: None,
    };
    let mut cur = f.clone();
    for k in 0..count {
        let alpha = cur.coeff(0).clone();
        if alpha.abs_exceeds_one() {
            return Err(Error::NumericalBreakdown {
                index: k,
                value: alpha.to_f64(),
            });
        }
        if alpha.abs_is_one() {
            seq.push(alpha);
            seq.terminated_at = Some(k);
            return Ok(seq);
        }
        let next = if alpha.is_zero() {
            // A vanishing parameter makes the Möbius step the identity;
            // only the shift remains.
            cur.shift_down(1)?
        } else {
            let num = cur.add_constant(&alpha.neg());
            let den = cur.scale(&alpha.neg()).add_constant(&K::one());
            num.mul(&den.reciprocal()?).shift_down(1)?
        };
        seq.push(alpha);
        cur = next;
    }
    Ok(seq)
}

/// The nonzero subsequence xi_k = alpha_{mk-1} (k >= 1) of an m-fold
/// measure's parameters. Any nonzero alpha off the sieve is reported as an
/// upstream moment or series bug.
pub fn nonzero_xi<K: Scalar>(seq: &VerblunskySequence<K>, m: u32) -> Result<Vec<K>> {
    let m = m as usize;
    let mut xi = Vec::new();
    for (n, alpha) in seq.alphas().iter().enumerate() {
        if (n + 1) % m == 0 {
            xi.push(alpha.clone());
        } else if !sieve_zero(alpha) {
            return Err(Error::SieveViolation {
                index: n,
                value: alpha.to_string(),
                m: m as u32,
            });
        }
    }
    Ok(xi)
}

fn sieve_zero<K: Scalar>(alpha: &K) -> bool {
    if K::FIELD == "exact" {
        alpha.is_zero()
    } else {
        alpha.to_f64().abs() <= 1e-10
    }
}

/// xi_1..xi_count for the m-fold measure, through the compressed pipeline:
/// the Schur algorithm applied to the compressed Carathéodory function's
/// Schur series. One compressed step stands for one genuine step plus the
/// m - 1 pure shifts that the sieve zeros contribute, so the values are
/// those of the direct path at a fraction of the series order.
pub fn xi_for_measure<K: Scalar>(spec: &MeasureSpec, count: usize) -> Result<Vec<K>> {
    let compressed = compressed_caratheodory(spec, count + 1);
    let h: TruncatedSeries<K> = compressed.map();
    let seq = schur_algorithm(&schur_series(&h)?, count)?;
    Ok(seq.alphas().to_vec())
}

/// Verblunsky parameters alpha_0..alpha_{count-1} of the m-fold measure via
/// the compressed pipeline, with the sieve zeros filled back in.
pub fn verblunsky_for_measure<K: Scalar>(
    spec: &MeasureSpec,
    count: usize,
) -> Result<VerblunskySequence<K>> {
    let m = spec.fold() as usize;
    let xi_count = count.div_ceil(m);
    let xi = xi_for_measure::<K>(spec, xi_count)?;
    let mut seq = VerblunskySequence {
        alphas: Vec::with_capacity(count),
        rho_sqs: Vec::with_capacity(count),
        terminated_at: None,
    };
    for n in 0..count {
        let alpha = if (n + 1) % m == 0 {
            xi[(n + 1) / m - 1].clone()
        } else {
            K::zero()
        };
        let unit = alpha.abs_is_one();
        seq.push(alpha);
        if unit {
            seq.terminated_at = Some(n);
            break;
        }
    }
    Ok(seq)
}

/// Verblunsky parameters via the uncompressed pipeline: full Carathéodory
/// series, full Schur series, one algorithm step per parameter. Reference
/// path for the compressed route.
pub fn verblunsky_direct<K: Scalar>(
    spec: &MeasureSpec,
    count: usize,
) -> Result<VerblunskySequence<K>> {
    let f_cara: TruncatedSeries<K> =
        crate::measure::caratheodory_series(spec, count + 2).map();
    let f = schur_series(&f_cara)?;
    schur_algorithm(&f, count)
}
