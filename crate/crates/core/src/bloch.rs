//! Bloch sphere coordinates of trigonometric contexts.
//!
//! In the canonical `a` basis the state reads `cos θ |0⟩ + sin θ e^{iφ} |1⟩`
//! with `cos²θ = p^a_{α1}`, `sin²θ = p^a_{α2}` and `cos φ = λ_{β1}`, which
//! gives
//!
//! ```text
//! x = 2 √(p^a_{α1} p^a_{α2}) λ_{β1}
//! y = ±2 √(p^a_{α1} p^a_{α2}) √(1 - λ_{β1}²)
//! z = p^a_{α1} - p^a_{α2}
//! ```

use serde::Serialize;

use crate::error::{QlraError, Result};
use crate::interference::{self, Classification, SignBranch};
use crate::prob_model::{ContextData, TransitionMatrix, ValidContext, DEFAULT_TOLERANCE};
use crate::representation::{a_canonical_basis, decompose, QLState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rgb {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub color: Rgb,
    pub branch: SignBranch,
}

impl BlochPoint {
    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }
}

/// Red follows `q`, green follows `p`, blue is off: small `(q, p)` is dark,
/// large `(q, p)` is yellow.
pub fn color_of(q: f64, p: f64) -> Rgb {
    Rgb { r: q, g: p, b: 0.0 }
}

/// Bloch point of `c`, or `NotTrigonometric` when there is nothing to plot.
pub fn to_bloch(c: &ValidContext, sign: SignBranch) -> Result<BlochPoint> {
    let profile = interference::profile(c, sign)?;
    if profile.classification == Classification::Hyperbolic {
        return Err(QlraError::NotTrigonometric {
            max_abs_lambda: profile.lambda[0].abs().max(profile.lambda[1].abs()),
        });
    }
    let lambda = profile.lambda[0].clamp(-1.0, 1.0);
    let radius = 2.0 * (c.pa[0] * c.pa[1]).sqrt();
    Ok(BlochPoint {
        x: radius * lambda,
        y: sign.sign() * radius * (1.0 - lambda * lambda).sqrt(),
        z: c.pa[0] - c.pa[1],
        color: color_of(c.q(), c.p()),
        branch: sign,
    })
}

/// Bloch point read off the state itself: amplitude moduli and relative
/// phase of its coordinates in the canonical `a` basis.
pub fn bloch_from_state(s: &QLState) -> Result<BlochPoint> {
    let basis = a_canonical_basis(&s.source.matrix)?;
    let [c0, c1] = decompose(s, &basis);
    let (cos_theta, sin_theta) = (c0.norm(), c1.norm());
    let phi = c1.arg() - c0.arg();
    let sin_2theta = 2.0 * cos_theta * sin_theta;
    Ok(BlochPoint {
        x: sin_2theta * phi.cos(),
        y: sin_2theta * phi.sin(),
        z: cos_theta * cos_theta - sin_theta * sin_theta,
        color: color_of(s.source.q(), s.source.p()),
        branch: s.profile.sign_branch,
    })
}

/// Inverse of [`to_bloch`] for a given transition matrix; used as a test
/// oracle. The sign of `y` is not needed.
pub fn from_bloch(pt: &BlochPoint, m: &TransitionMatrix) -> Result<ValidContext> {
    if !(pt.z.abs() < 1.0) {
        return Err(QlraError::Degenerate(pt.z));
    }
    let m = m.check(DEFAULT_TOLERANCE)?;
    let q = (1.0 + pt.z) / 2.0;
    let lambda = pt.x / (2.0 * (q * (1.0 - q)).sqrt());
    let [[m11, m12], _] = m.entries();
    let p = q * m11 + (1.0 - q) * m12 + 2.0 * lambda * (q * m11 * (1.0 - q) * m12).sqrt();
    crate::prob_model::validate_context(
        &ContextData::new([q, 1.0 - q], [p, 1.0 - p], m),
        DEFAULT_TOLERANCE,
    )
}
