//! Interference of probabilities.
//!
//! For a valid context the `b` marginal splits into the total-probability
//! prediction plus an interference term:
//!
//! ```text
//! p^b_β = Σ_α p^a_α p(β|α) + 2 λ_β √(Π_α p^a_α p(β|α))
//! ```
//!
//! `λ_β` is the coefficient of interference. When both `|λ_β| ≤ 1` the data is
//! trigonometric and `λ_β = cos φ_β` defines the relative phases; otherwise it
//! is hyperbolic and no phases are produced.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{QlraError, Result};
use crate::prob_model::{Outcome, ValidContext};

/// Slack above `|λ| = 1` still treated as the boundary, absorbing rounding.
pub const RC_GUARD: f64 = 1e-12;

/// Maximum allowed `|λ₁ + λ₂|`; doubly stochastic data forces `λ₂ = -λ₁`.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Trigonometric,
    Hyperbolic,
}

/// Which of the two conjugate phase choices `φ₁ = ±arccos λ₁` to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignBranch {
    #[default]
    Plus,
    Minus,
}

impl SignBranch {
    pub fn as_str(self) -> &'static str {
        match self {
            SignBranch::Plus => "plus",
            SignBranch::Minus => "minus",
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            SignBranch::Plus => 1.0,
            SignBranch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferenceProfile {
    pub lambda: [f64; 2],
    /// `None` for hyperbolic data.
    pub phases: Option<[f64; 2]>,
    pub classification: Classification,
    pub sign_branch: SignBranch,
}

/// `Σ_α p^a_α p(β|α)`.
pub fn ftp_prediction(c: &ValidContext, beta: Outcome) -> f64 {
    Outcome::BOTH
        .iter()
        .map(|&alpha| c.pa(alpha) * c.matrix.get(beta, alpha))
        .sum()
}

// 2 √(Π_α p^a_α p(β|α)), strictly positive for valid contexts.
fn interference_scale(c: &ValidContext, beta: Outcome) -> f64 {
    let product: f64 = Outcome::BOTH
        .iter()
        .map(|&alpha| c.pa(alpha) * c.matrix.get(beta, alpha))
        .product();
    2.0 * product.sqrt()
}

pub fn interference_coefficient(c: &ValidContext, beta: Outcome) -> f64 {
    (c.pb(beta) - ftp_prediction(c, beta)) / interference_scale(c, beta)
}

/// Right-hand side of the interference formula; equals `p^b_β` up to rounding.
pub fn interference_reconstruct(c: &ValidContext, beta: Outcome) -> f64 {
    ftp_prediction(c, beta) + interference_coefficient(c, beta) * interference_scale(c, beta)
}

pub fn lambdas(c: &ValidContext) -> [f64; 2] {
    [
        interference_coefficient(c, Outcome::First),
        interference_coefficient(c, Outcome::Second),
    ]
}

pub fn classify_lambdas(lambda: &[f64; 2]) -> Classification {
    let max = lambda[0].abs().max(lambda[1].abs());
    if max <= 1.0 + RC_GUARD {
        Classification::Trigonometric
    } else {
        Classification::Hyperbolic
    }
}

pub fn classify(c: &ValidContext) -> Classification {
    classify_lambdas(&lambdas(c))
}

fn wrap_angle(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(TAU);
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// `(φ₁, φ₂)` in `[0, 2π)` with `cos φ₁ = λ₁` and `φ₂ = φ₁ + π (mod 2π)`.
pub fn relative_phases(lambda1: f64, sign: SignBranch) -> Result<(f64, f64)> {
    if !(lambda1.abs() <= 1.0 + RC_GUARD) {
        return Err(QlraError::OutOfRange(lambda1));
    }
    let base = lambda1.clamp(-1.0, 1.0).acos();
    let phi1 = match sign {
        SignBranch::Plus => base,
        SignBranch::Minus => wrap_angle(TAU - base),
    };
    Ok((phi1, wrap_angle(phi1 + PI)))
}

/// Whether `φ₂ - φ₁ = π (mod 2π)` within `tol`.
pub fn phase_constraint_holds(phases: (f64, f64), tol: f64) -> bool {
    let offset = (phases.1 - phases.0 - PI).rem_euclid(TAU);
    offset.min(TAU - offset) <= tol
}

/// Coefficients, classification and (for trigonometric data) phases.
///
/// `λ₂` is computed on its own and cross-checked against `-λ₁`.
pub fn profile(c: &ValidContext, sign: SignBranch) -> Result<InterferenceProfile> {
    let lambda = lambdas(c);
    if (lambda[0] + lambda[1]).abs() > CONSISTENCY_TOLERANCE {
        return Err(QlraError::InconsistentInterference {
            lambda1: lambda[0],
            lambda2: lambda[1],
        });
    }
    let classification = classify_lambdas(&lambda);
    let phases = match classification {
        Classification::Trigonometric => {
            let (phi1, phi2) = relative_phases(lambda[0], sign)?;
            Some([phi1, phi2])
        }
        Classification::Hyperbolic => None,
    };
    Ok(InterferenceProfile {
        lambda,
        phases,
        classification,
        sign_branch: sign,
    })
}
