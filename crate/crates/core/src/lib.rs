//! Quantum-like representation of classical probabilistic data.
//!
//! Given the marginals of two dichotomous observables `a` and `b` together
//! with a doubly stochastic matrix of transition probabilities
//! `p(b = β | a = α)`, this crate measures how far the data departs from the
//! formula of total probability, and, when the departure is small enough
//! (`|λ| ≤ 1`, the *trigonometric* case), builds a normalized complex
//! amplitude `ψ` that reproduces both marginals through Born's rule.
//!
//! Modules, bottom-up:
//!
//! - [`prob_model`]: contexts, validation, estimation from counts.
//! - [`interference`]: total-probability predictions, interference
//!   coefficients, classification and relative phases.
//! - [`representation`]: the amplitude construction, operator bases,
//!   Born probabilities and expectations.
//! - [`bloch`]: Bloch sphere coordinates and point colors.
//! - [`sweep`]: grid sweeps producing point clouds.
//! - [`cli`]: the `qlra` command line front end.

pub mod bloch;
pub mod cli;
pub mod error;
pub mod interference;
pub mod prob_model;
pub mod representation;
pub mod sweep;

pub use bloch::{color_of, from_bloch, to_bloch, BlochPoint, Rgb};
pub use error::{QlraError, Result};
pub use interference::{
    classify, ftp_prediction, interference_coefficient, interference_reconstruct, profile,
    relative_phases, Classification, InterferenceProfile, SignBranch,
};
pub use prob_model::{
    estimate_context, validate_context, ContextData, Outcome, SampleCounts, Spectrum,
    TransitionMatrix, ValidContext, DEFAULT_TOLERANCE,
};
pub use representation::{
    a_canonical_basis, a_interference_basis, b_basis, born_probabilities, decompose, expectation,
    inner_product, represent, round_trip, BasisLabel, ComplexVector2, Observable, OperatorBasis,
    QLState,
};
pub use sweep::{rc_fraction, run_sweep, SweepConfig, SweepPoint, SweepResult, SweepSign};
