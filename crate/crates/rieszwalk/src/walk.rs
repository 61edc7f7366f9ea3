//! The CGMV walk: a banded unitary on the half-line assembled from
//! Verblunsky parameters, applied to two-component amplitude states.
//!
//! Position x carries the pair Psi(x) = [L(x), R(x)]; one step maps
//! Psi'(x) = P_{x-1} Psi(x-1) + R_x Psi(x) + Q_{x+1} Psi(x+1) with the
//! 2x2 blocks built from alpha and rho = sqrt(1 - alpha^2). The support
//! grows by at most one site per step, so states are dense prefixes.
//!
//! For the Riesz-type (fold 4) parameters the same dynamics factorizes into
//! alternating coin and shift steps ([`coin_shift_step`]); the block form is
//! the ground truth whenever the two could disagree.

use num_complex::Complex64 as C64;

use crate::measure::MeasureSpec;
use crate::scalar::Scalar;
use crate::schur::{verblunsky_for_measure, VerblunskySequence};
use crate::{Error, Result};

pub type Mat2 = [[f64; 2]; 2];

const ZERO_MAT: Mat2 = [[0.0, 0.0], [0.0, 0.0]];

fn apply(m: &Mat2, v: [C64; 2]) -> [C64; 2] {
    [
        v[0] * m[0][0] + v[1] * m[0][1],
        v[0] * m[1][0] + v[1] * m[1][1],
    ]
}

/// Walk state: time index plus the amplitude pairs on the occupied prefix.
#[derive(Clone, Debug)]
pub struct WalkState {
    t: usize,
    amps: Vec<[C64; 2]>,
}

impl WalkState {
    /// State [alpha, beta] concentrated at the origin; the initial state
    /// must be normalized to within 1e-12.
    pub fn origin(alpha: C64, beta: C64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "initial state norm^2 = {norm}, expected 1"
            )));
        }
        Ok(WalkState {
            t: 0,
            amps: vec![[alpha, beta]],
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn support_end(&self) -> usize {
        self.amps.len() - 1
    }

    /// Amplitude pair at x; zero beyond the occupied prefix.
    pub fn amp(&self, x: usize) -> [C64; 2] {
        if x < self.amps.len() {
            self.amps[x]
        } else {
            [C64::new(0.0, 0.0); 2]
        }
    }

    /// mu_t(x) = |L(x)|^2 + |R(x)|^2.
    pub fn probability(&self, x: usize) -> f64 {
        let [l, r] = self.amp(x);
        l.norm_sqr() + r.norm_sqr()
    }

    /// The probability row over the occupied prefix.
    pub fn distribution(&self) -> Vec<f64> {
        (0..self.amps.len()).map(|x| self.probability(x)).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps
            .iter()
            .map(|[l, r]| l.norm_sqr() + r.norm_sqr())
            .sum()
    }

    /// Largest amplitude magnitude sitting in a component the parity rule
    /// forbids: at even t only L(even x) and R(odd x) may be occupied, at
    /// odd t only R(even x) and L(odd x). Zero for parity-clean states.
    pub fn parity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (x, [l, r]) in self.amps.iter().enumerate() {
            let l_allowed = (self.t + x) % 2 == 0;
            if !l_allowed {
                worst = worst.max(l.norm());
            } else {
                worst = worst.max(r.norm());
            }
        }
        worst
    }

    fn trim(mut amps: Vec<[C64; 2]>, t: usize) -> WalkState {
        while amps.len() > 1 {
            let [l, r] = amps[amps.len() - 1];
            if l == C64::new(0.0, 0.0) && r == C64::new(0.0, 0.0) {
                amps.pop();
            } else {
                break;
            }
        }
        WalkState { t, amps }
    }
}

/// The 2x2 blocks of the banded CGMV unitary, materialized once per run.
/// Index x covers 0..=max_x for each family (Q_0 is never referenced).
#[derive(Clone, Debug)]
pub struct CgmvBlocks {
    p: Vec<Mat2>,
    r: Vec<Mat2>,
    q: Vec<Mat2>,
    max_x: usize,
}

impl CgmvBlocks {
    pub fn max_x(&self) -> usize {
        self.max_x
    }

    pub fn p(&self, x: usize) -> &Mat2 {
        &self.p[x]
    }

    pub fn r(&self, x: usize) -> &Mat2 {
        &self.r[x]
    }

    pub fn q(&self, x: usize) -> &Mat2 {
        &self.q[x]
    }
}

/// Builds the blocks from alpha_0..alpha_{2 max_x + 1}. Parameters are real
/// for the symmetric measures handled here, so conjugations are trivial.
pub fn build_blocks<K: Scalar>(
    seq: &VerblunskySequence<K>,
    max_x: usize,
) -> Result<CgmvBlocks> {
    let needed = 2 * max_x + 1;
    if !seq.covers(needed) {
        return Err(Error::InsufficientParameters {
            needed,
            available: seq.len(),
        });
    }
    let a = |k: usize| seq.alpha_f64(k);
    let rho = |k: usize| seq.rho_f64(k);

    let mut p = Vec::with_capacity(max_x + 1);
    let mut r = Vec::with_capacity(max_x + 1);
    let mut q = Vec::with_capacity(max_x + 1);
    r.push([[a(0), rho(0)], [rho(0) * a(1), -a(0) * a(1)]]);
    q.push(ZERO_MAT);
    p.push([[rho(0) * rho(1), -a(0) * rho(1)], [0.0, 0.0]]);
    for x in 1..=max_x {
        let (e, o) = (2 * x, 2 * x + 1);
        p.push([[rho(e) * rho(o), -a(e) * rho(o)], [0.0, 0.0]]);
        r.push([
            [-a(e - 1) * a(e), -a(e - 1) * rho(e)],
            [rho(e) * a(o), -a(e) * a(o)],
        ]);
        q.push([[0.0, 0.0], [rho(e - 1) * a(e), rho(e - 1) * rho(e)]]);
    }
    Ok(CgmvBlocks { p, r, q, max_x })
}

/// One application of the banded unitary.
pub fn step(state: &WalkState, blocks: &CgmvBlocks) -> Result<WalkState> {
    let se = state.support_end();
    if se + 1 > blocks.max_x {
        return Err(Error::BlockCoverage {
            required: se + 1,
            built: blocks.max_x,
        });
    }
    let zero = C64::new(0.0, 0.0);
    let mut out = vec![[zero; 2]; se + 2];
    for (x, slot) in out.iter_mut().enumerate() {
        let mut acc = [zero; 2];
        if x >= 1 && x - 1 <= se {
            let v = apply(blocks.p(x - 1), state.amps[x - 1]);
            acc[0] += v[0];
            acc[1] += v[1];
        }
        if x <= se {
            let v = apply(blocks.r(x), state.amps[x]);
            acc[0] += v[0];
            acc[1] += v[1];
        }
        if x + 1 <= se {
            let v = apply(blocks.q(x + 1), state.amps[x + 1]);
            acc[0] += v[0];
            acc[1] += v[1];
        }
        *slot = acc;
    }
    Ok(WalkState::trim(out, state.t + 1))
}

/// Coins of the factorized (coin/shift) form of the Riesz-type walk:
/// xi_x and rho_x per pair index x >= 1, with the reflecting boundary
/// xi_0 = -1, rho_0 = 0 built into the step.
#[derive(Clone, Debug)]
pub struct FactorizedCoins {
    xi: Vec<f64>,
    rho: Vec<f64>,
}

impl FactorizedCoins {
    /// Builds from the nonzero parameters xi_1, xi_2, ... in order.
    pub fn from_xi(xi: &[f64]) -> Self {
        FactorizedCoins {
            xi: xi.to_vec(),
            rho: xi.iter().map(|x| (1.0 - x * x).max(0.0).sqrt()).collect(),
        }
    }

    /// xi_x for x >= 1.
    fn coin(&self, x: usize) -> Result<(f64, f64)> {
        match self.xi.get(x - 1) {
            Some(&xi) => Ok((xi, self.rho[x - 1])),
            None => Err(Error::BlockCoverage {
                required: x,
                built: self.xi.len(),
            }),
        }
    }
}

/// One step of the factorized dynamics. From even time the walk shifts
/// (L up, R down one site); from odd time coins act on the pairs
/// (2x - 1, 2x), with the origin reflection sending R(0) to L(0). Two
/// consecutive steps reproduce two applications of [`step`].
pub fn coin_shift_step(state: &WalkState, coins: &FactorizedCoins) -> Result<WalkState> {
    let defect = state.parity_defect();
    if defect > 1e-12 {
        return Err(Error::ParityViolation {
            t: state.t,
            defect,
        });
    }
    let zero = C64::new(0.0, 0.0);
    let se = state.support_end();
    let mut out = vec![[zero; 2]; se + 2];
    if state.t % 2 == 0 {
        // Shift: L'(x) = L(x-1), R'(x) = R(x+1).
        for (x, slot) in out.iter_mut().enumerate() {
            let l = if x >= 1 { state.amp(x - 1)[0] } else { zero };
            let r = state.amp(x + 1)[1];
            *slot = [l, r];
        }
    } else {
        // Coins on pairs (2x-1, 2x); the boundary coin at the virtual pair
        // (-1, 0) reduces to L'(0) = R(0).
        out[0][0] = state.amps[0][1];
        let mut x = 1;
        while 2 * x - 1 <= se {
            let (xi, rho) = coins.coin(x)?;
            let in_l = state.amps[2 * x - 1][0];
            let in_r = state.amp(2 * x)[1];
            out[2 * x - 1][1] = in_l * xi + in_r * rho;
            out[2 * x][0] = in_l * rho - in_r * xi;
            x += 1;
        }
    }
    Ok(WalkState::trim(out, state.t + 1))
}

/// Which arithmetic carries the Verblunsky extraction. The evolution itself
/// always runs in doubles; rho is irrational either way.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Exact,
    Double,
}

/// Exact arithmetic is the default as long as the parameter budget is
/// moderate; past that the bignum cost grows superlinearly while the double
/// path stays within a few ulps of it.
pub fn default_precision(alpha_count: usize) -> Precision {
    if alpha_count <= 256 {
        Precision::Exact
    } else {
        Precision::Double
    }
}

fn alpha_budget(t_max: usize) -> usize {
    // Blocks at position x consume alpha up to index 2x + 2 and the evolved
    // support reaches position t, so the budget is ~2T, not T.
    2 * t_max + 6
}

/// Materializes the walk operator for the m-fold measure, large enough to
/// evolve `t_max` steps from the origin.
pub fn operator_for(
    spec: &MeasureSpec,
    t_max: usize,
    precision: Precision,
) -> Result<CgmvBlocks> {
    let count = alpha_budget(t_max);
    let max_x = t_max + 1;
    match precision {
        Precision::Exact => {
            let seq = verblunsky_for_measure::<crate::scalar::Rat>(spec, count)?;
            build_blocks(&seq, max_x)
        }
        Precision::Double => {
            let seq = verblunsky_for_measure::<f64>(spec, count)?;
            build_blocks(&seq, max_x)
        }
    }
}

/// Runs the full pipeline (moments -> Schur series -> Verblunsky -> blocks
/// -> steps), feeding every state from t = 0 to t = t_max to `visit`.
pub fn evolve_with<F: FnMut(&WalkState)>(
    initial: (C64, C64),
    spec: &MeasureSpec,
    t_max: usize,
    precision: Precision,
    mut visit: F,
) -> Result<()> {
    let blocks = operator_for(spec, t_max, precision)?;
    let mut state = WalkState::origin(initial.0, initial.1)?;
    visit(&state);
    for _ in 0..t_max {
        state = step(&state, &blocks)?;
        visit(&state);
    }
    Ok(())
}

/// As [`evolve_with`], collecting the trajectory; precision defaults by the
/// size of the parameter budget.
pub fn evolve(
    initial: (C64, C64),
    spec: &MeasureSpec,
    t_max: usize,
) -> Result<Vec<WalkState>> {
    let precision = default_precision(alpha_budget(t_max));
    let mut states = Vec::with_capacity(t_max + 1);
    evolve_with(initial, spec, t_max, precision, |s| states.push(s.clone()))?;
    Ok(states)
}
