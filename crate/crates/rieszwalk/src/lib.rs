//! Quantum walks on the half-line built from measures on the unit circle via
//! the CGMV construction, with the Riesz walk as the principal instance.
//!
//! The pipeline runs in five stages, one module each:
//!
//! 1. [`measure`] — moments of the m-fold Riesz-type measures and the
//!    Carathéodory/Schur series built from them;
//! 2. [`series`] — truncated formal power series arithmetic underneath;
//! 3. [`schur`] — the Schur algorithm extracting Verblunsky parameters;
//! 4. [`walk`] — the banded CGMV unitary and state evolution;
//! 5. [`genfunc`] / [`analysis`] — the continued-fraction generating function
//!    of the origin amplitude, closed-form return probabilities, and the
//!    self-similarity checkers.
//!
//! Everything upstream of the evolution can run in exact rational arithmetic;
//! the same code runs over `f64` for speed. See the `cli` module for the
//! command-line front end.

pub mod analysis;
pub mod cli;
pub mod genfunc;
pub mod measure;
pub mod scalar;
pub mod schur;
pub mod series;
pub mod walk;

use thiserror::Error;

/// Errors shared across the pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    /// Constant term of a series is zero (or numerically indistinguishable
    /// from zero), so no reciprocal exists.
    #[error("non-invertible series: constant term {0} is zero or too close to it")]
    NonInvertibleSeries(String),

    /// A series was divided by z^k although some coefficient below degree k
    /// is nonzero. In the Schur iteration this is the canary for index bugs.
    #[error("series not divisible by z^{power}: coefficient {value} at degree {degree} is nonzero")]
    NotDivisible {
        power: usize,
        degree: usize,
        value: String,
    },

    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The series handed to `schur_series` does not have constant term 1.
    #[error("not a Carathéodory series: constant term is {0}, expected 1")]
    NotCaratheodory(String),

    /// The input series is too short for the requested number of Schur
    /// iterations.
    #[error("series order {available} supports at most {available} Verblunsky parameters, {requested} requested")]
    InsufficientOrder { available: usize, requested: usize },

    /// A Schur iterate left the closed unit disk beyond tolerance, which in
    /// the double field signals accumulated rounding; rerun on the exact path.
    #[error("numerical breakdown at Schur step {index}: |alpha| = {value} > 1; use the exact path")]
    NumericalBreakdown { index: usize, value: f64 },

    /// A Verblunsky parameter expected to vanish by the m-fold sieve did not.
    #[error("sieve violation: alpha_{index} = {value} should vanish for the {m}-fold measure")]
    SieveViolation {
        index: usize,
        value: String,
        m: u32,
    },

    /// A Verblunsky sequence is too short to build the requested operator.
    #[error("insufficient Verblunsky parameters: need alpha_0..alpha_{needed}, have {available}")]
    InsufficientParameters { needed: usize, available: usize },

    /// Evolution ran past the sites covered by the materialized blocks.
    #[error("block coverage exhausted: state requires blocks up to x = {required}, built up to {built}")]
    BlockCoverage { required: usize, built: usize },

    /// The factorized step was handed a state violating the parity invariant.
    #[error("parity violation at time {t}: offending amplitude magnitude {defect}")]
    ParityViolation { t: usize, defect: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub use analysis::{return_prob_closed_form, return_prob_simple, s_sum};
pub use measure::{moment, signed_digits, MeasureSpec, SignedDigitRep};
pub use scalar::{Rat, Scalar};
pub use schur::{schur_algorithm, VerblunskySequence};
pub use series::TruncatedSeries;
pub use walk::{evolve, Precision, WalkState};
