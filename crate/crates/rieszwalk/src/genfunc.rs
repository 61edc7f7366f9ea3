//! Generating-function route to the origin amplitude of the Riesz walk:
//! path-weight coins, the one-sided continued fraction, and the closed form
//! for the generating function of Psi_t^L(0).
//!
//! The continued fraction lives in the variable s (the squared time
//! variable of the reduced walk): F_x(s) = s (F_{x+1}(s) + xi_{x+1}) /
//! (1 + xi_{x+1} F_{x+1}(s)), truncated with terminal value 0. Each level
//! contributes one factor of s, so truncating at depth d certifies the
//! coefficients through s^d. The origin generating function composes this
//! at s = z^4 and is an even function of z whose coefficients are exactly
//! the measure's moments.
//!
//! Everything here runs in exact rationals: the xi are rational and rho
//! never enters these formulas, so there is nothing to round.

use crate::measure::{moment, MeasureSpec};
use crate::scalar::{Rat, Scalar};
use crate::series::TruncatedSeries;
use crate::{Error, Result};

/// Per-site coin entries of the path-weight expansion and the four derived
/// passage blocks. For the Riesz walk a_x = d_x = rho_x, b_x = -c_x = xi_x,
/// so the determinant Delta_x = a_x d_x - b_x c_x is exactly 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PathWeightMatrices<K: Scalar> {
    pub a: K,
    pub b: K,
    pub c: K,
    pub d: K,
}

impl<K: Scalar> PathWeightMatrices<K> {
    pub fn new(a: K, b: K, c: K, d: K) -> Self {
        PathWeightMatrices { a, b, c, d }
    }

    /// The reflecting boundary at the origin: a_0 = d_0 = 0, b_0 = -c_0 = -1.
    pub fn boundary() -> Self {
        PathWeightMatrices {
            a: K::zero(),
            b: K::one().neg(),
            c: K::one(),
            d: K::zero(),
        }
    }

    pub fn delta(&self) -> K {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// Downward passage block [[0, 0], [b, a]].
    pub fn p_tilde(&self) -> [[K; 2]; 2] {
        [
            [K::zero(), K::zero()],
            [self.b.clone(), self.a.clone()],
        ]
    }

    /// Upward passage block [[d, c], [0, 0]].
    pub fn q_tilde(&self) -> [[K; 2]; 2] {
        [
            [self.d.clone(), self.c.clone()],
            [K::zero(), K::zero()],
        ]
    }

    /// Stay-and-turn block [[0, 0], [d, c]].
    pub fn r_tilde(&self) -> [[K; 2]; 2] {
        [
            [K::zero(), K::zero()],
            [self.d.clone(), self.c.clone()],
        ]
    }

    /// Stay-and-turn block [[b, c], [0, 0]].
    pub fn s_tilde(&self) -> [[K; 2]; 2] {
        [
            [self.b.clone(), self.c.clone()],
            [K::zero(), K::zero()],
        ]
    }
}

impl PathWeightMatrices<f64> {
    /// Coin entries of the pair-x Riesz coin with parameter xi.
    pub fn riesz_coin(xi: f64) -> Self {
        let rho = (1.0 - xi * xi).max(0.0).sqrt();
        PathWeightMatrices {
            a: rho,
            b: xi,
            c: -xi,
            d: rho,
        }
    }
}

/// One step of the downhill-side recursion: given the coin at site x - 1
/// and the value of the level-(x-1) fraction, produces the level-x value
/// f_x^(-) = s (c_{x-1} + Delta_{x-1} f_{x-1}) / (1 - b_{x-1} f_{x-1}).
pub fn fhat_minus_step<K: Scalar>(
    prev: &PathWeightMatrices<K>,
    f_prev: &K,
    s: &K,
) -> K {
    let num = prev.c.add(&prev.delta().mul(f_prev));
    let den = K::one().sub(&prev.b.mul(f_prev));
    s.mul(&num.div(&den))
}

/// Scalar evaluation of the continued fraction F_x at the point `s`,
/// truncated `depth` levels down (terminal value 0). `xi[i]` holds
/// xi_{i+1}; levels x+1 ..= x+depth must be covered.
pub fn fhat_plus_value<K: Scalar>(xi: &[K], x: usize, s: &K, depth: usize) -> K {
    assert!(depth >= 1, "continued fraction needs at least one level");
    assert!(
        xi.len() >= x + depth,
        "need xi up to index {} (have {})",
        x + depth,
        xi.len()
    );
    let mut value = K::zero();
    for level in (x + 1..=x + depth).rev() {
        let xl = &xi[level - 1];
        let num = value.add(xl);
        let den = K::one().add(&xl.mul(&value));
        value = s.mul(&num.div(&den));
    }
    value
}

/// Series-mode continued fraction in the variable s. The result is
/// truncated to min(order, depth): one factor of s per level makes depth
/// the certified order, and reporting more would overstate validity.
pub fn fhat_plus_series(
    xi: &[Rat],
    x: usize,
    depth: usize,
    order: usize,
) -> Result<TruncatedSeries<Rat>> {
    if depth < 1 {
        return Err(Error::InvalidArgument(
            "continued fraction needs depth >= 1".into(),
        ));
    }
    if xi.len() < x + depth {
        return Err(Error::InvalidArgument(format!(
            "need xi up to index {} for site {x} at depth {depth}, have {}",
            x + depth,
            xi.len()
        )));
    }
    let work = order.min(depth);
    let one = <Rat as Scalar>::one();
    let mut value = TruncatedSeries::<Rat>::zero(work);
    for level in (x + 1..=x + depth).rev() {
        let xl = &xi[level - 1];
        let num = value.add_constant(xl);
        let den = value.scale(xl).add_constant(&one);
        value = num
            .mul(&den.reciprocal()?)
            .shift_up(1)
            .truncated(work);
    }
    Ok(value)
}

/// Generating function of the origin amplitude of the Riesz walk,
/// Psi_hat(z) = (1 + xi_1 F_1(z^4)) / ((1 - xi_1 z^4) + (xi_1 - z^4) F_1(z^4)),
/// as an exact series in z to the requested order. The continued-fraction
/// depth defaults to order/2 + 2, comfortably past the certified need.
pub fn psi_hat_origin(spec: &MeasureSpec, order: usize) -> Result<TruncatedSeries<Rat>> {
    psi_hat_origin_with_depth(spec, order, order / 2 + 2)
}

pub fn psi_hat_origin_with_depth(
    spec: &MeasureSpec,
    order: usize,
    depth: usize,
) -> Result<TruncatedSeries<Rat>> {
    if spec.fold() != 4 {
        return Err(Error::InvalidArgument(format!(
            "the origin generating function is derived for the fold-4 (Riesz) walk, got m = {}",
            spec.fold()
        )));
    }
    let depth = depth.max(order / 4 + 1);
    let xi = crate::schur::xi_for_measure::<Rat>(spec, depth + 1)?;

    // Work in w = z^2; the continued fraction sits at s = w^2.
    let w_order = order / 2;
    let s_order = w_order / 2 + 1;
    let fs = fhat_plus_series(&xi, 1, depth, s_order)?;
    let fw = fs.compose_monomial(2)?.truncated(w_order);
    let xi1 = &xi[0];
    let one = <Rat as Scalar>::one();

    let numer = fw.scale(xi1).add_constant(&one);
    let denom = TruncatedSeries::constant(one.clone(), w_order)
        .sub(&TruncatedSeries::monomial(xi1.clone(), 2, w_order.max(2)).truncated(w_order))
        .add(&fw.scale(xi1))
        .sub(&fw.shift_up(2).truncated(w_order));
    let pw = numer.mul(&denom.reciprocal()?);
    Ok(pw.compose_monomial(2)?.truncated(order))
}

/// Origin block of the n-th power of the walk unitary, expressed through
/// moments: [[mu_n, mu_{n-1}], [mu_{n+1}, mu_n]] (mu_{-1} folds to mu_1).
pub fn origin_transfer(spec: &MeasureSpec, n: u64) -> [[Rat; 2]; 2] {
    let n = n as i64;
    [
        [moment(n, spec), moment(n - 1, spec)],
        [moment(n + 1, spec), moment(n, spec)],
    ]
}
