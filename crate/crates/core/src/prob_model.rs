//! Probabilistic contexts for two dichotomous observables.
//!
//! A context bundles the marginals `p^a = (q, 1 - q)` and `p^b = (p, 1 - p)`
//! collected on two independent samples with the matrix of transition
//! probabilities `p(b = β | a = α)`, indexed `[β][α]`. Only strictly positive
//! data with a doubly stochastic transition matrix is accepted.

use std::ops::Deref;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{QlraError, Result};

/// Tolerance used by validation when the caller does not supply one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

// Sums that are off by a few ulps are treated as rounding, even with tol = 0.
const ROUNDING_FLOOR: f64 = 8.0 * f64::EPSILON;

/// Index of an outcome of a dichotomous observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    First,
    Second,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::First, Outcome::Second];

    pub fn index(self) -> usize {
        match self {
            Outcome::First => 0,
            Outcome::Second => 1,
        }
    }

    pub fn other(self) -> Outcome {
        match self {
            Outcome::First => Outcome::Second,
            Outcome::Second => Outcome::First,
        }
    }
}

/// Real-valued outcome labels `(α₁, α₂)` and `(β₁, β₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    a_labels: [f64; 2],
    b_labels: [f64; 2],
}

impl Spectrum {
    pub fn new(a_labels: [f64; 2], b_labels: [f64; 2]) -> Result<Self> {
        if a_labels[0] == a_labels[1] || !a_labels.iter().all(|v| v.is_finite()) {
            return Err(QlraError::InvalidSpectrum(format!("a labels {a_labels:?}")));
        }
        if b_labels[0] == b_labels[1] || !b_labels.iter().all(|v| v.is_finite()) {
            return Err(QlraError::InvalidSpectrum(format!("b labels {b_labels:?}")));
        }
        Ok(Spectrum { a_labels, b_labels })
    }

    pub fn a_labels(&self) -> [f64; 2] {
        self.a_labels
    }

    pub fn b_labels(&self) -> [f64; 2] {
        self.b_labels
    }
}

impl Default for Spectrum {
    /// `α = β = (+1, -1)`.
    fn default() -> Self {
        Spectrum {
            a_labels: [1.0, -1.0],
            b_labels: [1.0, -1.0],
        }
    }
}

/// 2×2 matrix of transition probabilities, `entries[β][α] = p(b = β | a = α)`.
///
/// Construction does not validate; use [`TransitionMatrix::check`] or go
/// through [`validate_context`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    entries: [[f64; 2]; 2],
}

impl TransitionMatrix {
    pub fn new(entries: [[f64; 2]; 2]) -> Self {
        TransitionMatrix { entries }
    }

    /// The doubly stochastic matrix `[[P, 1 - P], [1 - P, P]]`.
    pub fn from_transition_probability(transition: f64) -> Result<Self> {
        if !(transition > 0.0 && transition < 1.0) {
            return Err(QlraError::NonPositive {
                what: "transition probability P and 1 - P".into(),
                value: if transition <= 0.0 || transition.is_nan() {
                    transition
                } else {
                    1.0 - transition
                },
            });
        }
        let off = 1.0 - transition;
        Ok(TransitionMatrix::new([
            [transition, off],
            [off, transition],
        ]))
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.entries
    }

    /// `p(b = beta | a = alpha)`.
    pub fn get(&self, beta: Outcome, alpha: Outcome) -> f64 {
        self.entries[beta.index()][alpha.index()]
    }

    pub fn row_sums(&self) -> [f64; 2] {
        [
            self.entries[0][0] + self.entries[0][1],
            self.entries[1][0] + self.entries[1][1],
        ]
    }

    pub fn column_sums(&self) -> [f64; 2] {
        [
            self.entries[0][0] + self.entries[1][0],
            self.entries[0][1] + self.entries[1][1],
        ]
    }

    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        self.check(tol).is_ok()
    }

    /// Validates positivity, column and row sums, and returns the matrix
    /// projected exactly onto the doubly stochastic family `[[d, 1-d], [1-d, d]]`.
    pub fn check(&self, tol: f64) -> Result<TransitionMatrix> {
        let slack = tol.max(ROUNDING_FLOOR);
        for (beta, row) in self.entries.iter().enumerate() {
            for (alpha, &value) in row.iter().enumerate() {
                ensure_positive(&format!("p(b{}|a{})", beta + 1, alpha + 1), value)?;
            }
        }
        for (alpha, sum) in self.column_sums().into_iter().enumerate() {
            if (sum - 1.0).abs() > slack {
                return Err(QlraError::NotNormalized {
                    what: format!("transition matrix column a{}", alpha + 1),
                    sum,
                });
            }
        }
        for (row, sum) in self.row_sums().into_iter().enumerate() {
            if (sum - 1.0).abs() > slack {
                return Err(QlraError::NotDoublyStochastic { row, sum });
            }
        }

        let [[m11, m12], [m21, m22]] = self.entries;
        if m11 == m22 && m12 == m21 && m11 + m12 == 1.0 {
            return Ok(*self);
        }
        // A 2×2 doubly stochastic matrix has equal diagonal and equal off-diagonal entries.
        let d = if m11 == m22 && m12 == m21 && (m11 + m12 - 1.0).abs() <= ROUNDING_FLOOR {
            m11
        } else {
            let diagonal = m11 + m22;
            let off_diagonal = m12 + m21;
            diagonal / (diagonal + off_diagonal)
        };
        Ok(TransitionMatrix::new([[d, 1.0 - d], [1.0 - d, d]]))
    }
}

/// Candidate probabilistic data, not yet validated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextData {
    pub spectrum: Spectrum,
    pub pa: [f64; 2],
    pub pb: [f64; 2],
    pub matrix: TransitionMatrix,
}

impl ContextData {
    pub fn new(pa: [f64; 2], pb: [f64; 2], matrix: TransitionMatrix) -> Self {
        ContextData {
            spectrum: Spectrum::default(),
            pa,
            pb,
            matrix,
        }
    }

    /// `p^a = (q, 1 - q)`, `p^b = (p, 1 - p)` and the symmetric matrix built
    /// from `P`. A `P` outside the open unit interval yields a matrix that
    /// fails validation.
    pub fn from_parameters(q: f64, p: f64, transition: f64) -> Self {
        let off = 1.0 - transition;
        ContextData::new(
            [q, 1.0 - q],
            [p, 1.0 - p],
            TransitionMatrix::new([[transition, off], [off, transition]]),
        )
    }

    pub fn with_spectrum(mut self, spectrum: Spectrum) -> Self {
        self.spectrum = spectrum;
        self
    }
}

/// A context that passed [`validate_context`]: strictly positive, marginals
/// summing to exactly one, transition matrix exactly doubly stochastic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ValidContext(ContextData);

impl ValidContext {
    /// Shorthand for validating `ContextData::from_parameters(q, p, P)` at the
    /// default tolerance.
    pub fn from_parameters(q: f64, p: f64, transition: f64) -> Result<Self> {
        validate_context(
            &ContextData::from_parameters(q, p, transition),
            DEFAULT_TOLERANCE,
        )
    }

    pub fn data(&self) -> &ContextData {
        &self.0
    }

    pub fn pa(&self, alpha: Outcome) -> f64 {
        self.0.pa[alpha.index()]
    }

    pub fn pb(&self, beta: Outcome) -> f64 {
        self.0.pb[beta.index()]
    }

    /// `q = p^a_{α1}`.
    pub fn q(&self) -> f64 {
        self.0.pa[0]
    }

    /// `p = p^b_{β1}`.
    pub fn p(&self) -> f64 {
        self.0.pb[0]
    }

    /// `P = p(b = β1 | a = α1)`.
    pub fn transition_probability(&self) -> f64 {
        self.0.matrix.entries[0][0]
    }
}

impl Deref for ValidContext {
    type Target = ContextData;

    fn deref(&self) -> &ContextData {
        &self.0
    }
}

fn ensure_positive(what: &str, value: f64) -> Result<()> {
    // Also rejects NaN.
    if value > 0.0 {
        Ok(())
    } else {
        Err(QlraError::NonPositive {
            what: what.to_string(),
            value,
        })
    }
}

fn normalize_pair(what: &str, pair: [f64; 2], tol: f64) -> Result<[f64; 2]> {
    let sum = pair[0] + pair[1];
    let deviation = (sum - 1.0).abs();
    if deviation > tol.max(ROUNDING_FLOOR) {
        return Err(QlraError::NotNormalized {
            what: what.to_string(),
            sum,
        });
    }
    if sum == 1.0 {
        return Ok(pair);
    }
    // x + (1 - x) == 1 holds exactly in binary floating point for x in (0, 1).
    let first = if deviation <= ROUNDING_FLOOR {
        pair[0]
    } else {
        pair[0] / sum
    };
    Ok([first, 1.0 - first])
}

/// Checks positivity, normalization and double stochasticity within `tol`,
/// repairing in-tolerance normalization errors.
pub fn validate_context(c: &ContextData, tol: f64) -> Result<ValidContext> {
    for (name, pair) in [("p^a", c.pa), ("p^b", c.pb)] {
        for (i, &value) in pair.iter().enumerate() {
            ensure_positive(&format!("{name}{}", i + 1), value)?;
        }
    }
    let matrix = c.matrix.check(tol)?;
    let pa = normalize_pair("p^a", c.pa, tol)?;
    let pb = normalize_pair("p^b", c.pb, tol)?;
    Ok(ValidContext(ContextData {
        spectrum: c.spectrum,
        pa,
        pb,
        matrix,
    }))
}

/// Raw frequency counts from the two samples.
///
/// `b_counts` comes from its own sample; `cond_counts[β][α]` counts `b = β`
/// inside the sub-sample where `a = α` was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleCounts {
    pub a_counts: [u64; 2],
    pub b_counts: [u64; 2],
    pub cond_counts: [[u64; 2]; 2],
}

impl SampleCounts {
    pub fn from_json_str(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| QlraError::InvalidCounts(e.to_string()))
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| QlraError::InvalidCounts(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    fn totals(&self) -> Result<(u64, u64, [u64; 2])> {
        let a_total = self.a_counts[0] + self.a_counts[1];
        let b_total = self.b_counts[0] + self.b_counts[1];
        let columns = [
            self.cond_counts[0][0] + self.cond_counts[1][0],
            self.cond_counts[0][1] + self.cond_counts[1][1],
        ];
        if a_total == 0 {
            return Err(QlraError::InvalidCounts("a sample is empty".into()));
        }
        if b_total == 0 {
            return Err(QlraError::InvalidCounts("b sample is empty".into()));
        }
        if let Some(alpha) = columns.iter().position(|&t| t == 0) {
            return Err(QlraError::InvalidCounts(format!(
                "no conditional observations for a = a{}",
                alpha + 1
            )));
        }
        Ok((a_total, b_total, columns))
    }
}

/// Relative frequencies of `counts`, validated with `tol` for double
/// stochasticity.
pub fn estimate_context(counts: &SampleCounts, tol: f64) -> Result<ValidContext> {
    let (a_total, b_total, columns) = counts.totals()?;
    let ratio = |n: u64, d: u64| n as f64 / d as f64;
    let pa = [
        ratio(counts.a_counts[0], a_total),
        ratio(counts.a_counts[1], a_total),
    ];
    let pb = [
        ratio(counts.b_counts[0], b_total),
        ratio(counts.b_counts[1], b_total),
    ];
    let mut entries = [[0.0; 2]; 2];
    for (beta, row) in entries.iter_mut().enumerate() {
        for (alpha, cell) in row.iter_mut().enumerate() {
            *cell = ratio(counts.cond_counts[beta][alpha], columns[alpha]);
        }
    }
    validate_context(
        &ContextData::new(pa, pb, TransitionMatrix::new(entries)),
        tol,
    )
}
