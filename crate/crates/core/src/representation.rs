//! Complex amplitudes for trigonometric contexts.
//!
//! The state lives in the two dimensional space of functions on the `b`
//! outcomes, with
//!
//! ```text
//! ψ(β) = √(p^a_{α1} p(β|α1)) + e^{iφ_β} √(p^a_{α2} p(β|α2))
//! ```
//!
//! so that `|ψ(β)|² = p^b_β`. Expressed in the `a` basis built from the
//! square roots of the transition matrix, the same state also reproduces
//! `p^a_α`.

use std::ops::{Add, Index, Mul};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{QlraError, Result};
use crate::interference::{
    self, phase_constraint_holds, Classification, InterferenceProfile, SignBranch,
};
use crate::prob_model::{
    ContextData, Outcome, Spectrum, TransitionMatrix, ValidContext, DEFAULT_TOLERANCE,
};

pub type Matrix2 = [[Complex64; 2]; 2];

/// Element of `Φ(X_b, C)`: the values of a function at `β₁` and `β₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexVector2(pub [Complex64; 2]);

impl ComplexVector2 {
    pub fn new(first: Complex64, second: Complex64) -> Self {
        ComplexVector2([first, second])
    }

    pub fn real(first: f64, second: f64) -> Self {
        ComplexVector2::new(Complex64::new(first, 0.0), Complex64::new(second, 0.0))
    }

    pub fn components(&self) -> [Complex64; 2] {
        self.0
    }

    pub fn conj(&self) -> Self {
        ComplexVector2([self.0[0].conj(), self.0[1].conj()])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.is_finite())
    }

    pub fn max_abs_diff(&self, other: &ComplexVector2) -> f64 {
        (self.0[0] - other.0[0])
            .norm()
            .max((self.0[1] - other.0[1]).norm())
    }
}

impl Index<usize> for ComplexVector2 {
    type Output = Complex64;

    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl Add for ComplexVector2 {
    type Output = ComplexVector2;

    fn add(self, rhs: ComplexVector2) -> ComplexVector2 {
        ComplexVector2([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl Mul<ComplexVector2> for Complex64 {
    type Output = ComplexVector2;

    fn mul(self, rhs: ComplexVector2) -> ComplexVector2 {
        ComplexVector2([self * rhs.0[0], self * rhs.0[1]])
    }
}

/// `⟨u, v⟩ = Σ_β u(β) conj(v(β))`, linear in the first argument.
pub fn inner_product(u: &ComplexVector2, v: &ComplexVector2) -> Complex64 {
    u.0[0] * v.0[0].conj() + u.0[1] * v.0[1].conj()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisLabel {
    /// Delta functions at `β₁`, `β₂`.
    BStandard,
    /// Phase dependent `a` basis `f^a_α`.
    AInterference,
    /// Phase free `a` basis `e^a_α`, depends only on the transition matrix.
    ACanonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OperatorBasis {
    pub vectors: [ComplexVector2; 2],
    pub label: BasisLabel,
}

impl OperatorBasis {
    pub fn gram(&self) -> Matrix2 {
        let v = &self.vectors;
        [
            [inner_product(&v[0], &v[0]), inner_product(&v[0], &v[1])],
            [inner_product(&v[1], &v[0]), inner_product(&v[1], &v[1])],
        ]
    }

    /// Largest entry of `|G - I|` for the Gram matrix `G`.
    pub fn orthonormality_defect(&self) -> f64 {
        let gram = self.gram();
        let mut defect: f64 = 0.0;
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                let identity = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((g - identity).norm());
            }
        }
        defect
    }

    pub fn is_orthonormal(&self, tol: f64) -> bool {
        self.orthonormality_defect() <= tol
    }

    /// `(⟨ψ, v₁⟩, ⟨ψ, v₂⟩)`.
    pub fn coordinates(&self, psi: &ComplexVector2) -> [Complex64; 2] {
        [
            inner_product(psi, &self.vectors[0]),
            inner_product(psi, &self.vectors[1]),
        ]
    }

    /// `Σ cᵢ vᵢ`.
    pub fn reconstruct(&self, coefficients: [Complex64; 2]) -> ComplexVector2 {
        coefficients[0] * self.vectors[0] + coefficients[1] * self.vectors[1]
    }
}

pub fn b_basis() -> OperatorBasis {
    OperatorBasis {
        vectors: [
            ComplexVector2::real(1.0, 0.0),
            ComplexVector2::real(0.0, 1.0),
        ],
        label: BasisLabel::BStandard,
    }
}

/// `f^a_{α1} = (√p(β1|α1), √p(β2|α1))`,
/// `f^a_{α2} = (e^{iφ₁} √p(β1|α2), e^{iφ₂} √p(β2|α2))`, without any checks.
pub fn interference_vectors(m: &TransitionMatrix, phases: (f64, f64)) -> [ComplexVector2; 2] {
    let root = |beta, alpha| m.get(beta, alpha).sqrt();
    [
        ComplexVector2::real(
            root(Outcome::First, Outcome::First),
            root(Outcome::Second, Outcome::First),
        ),
        ComplexVector2::new(
            Complex64::from_polar(root(Outcome::First, Outcome::Second), phases.0),
            Complex64::from_polar(root(Outcome::Second, Outcome::Second), phases.1),
        ),
    ]
}

/// Phase dependent `a` basis; orthonormal only when `φ₂ - φ₁ = π (mod 2π)`.
pub fn a_interference_basis(m: &TransitionMatrix, phases: (f64, f64)) -> Result<OperatorBasis> {
    if !phase_constraint_holds(phases, DEFAULT_TOLERANCE) {
        return Err(QlraError::PhaseConstraintViolated {
            phi1: phases.0,
            phi2: phases.1,
        });
    }
    let m = m.check(DEFAULT_TOLERANCE)?;
    Ok(OperatorBasis {
        vectors: interference_vectors(&m, phases),
        label: BasisLabel::AInterference,
    })
}

/// `e^a_{α1} = (√p(β1|α1), √p(β2|α1))`, `e^a_{α2} = (√p(β1|α2), -√p(β2|α2))`.
pub fn a_canonical_basis(m: &TransitionMatrix) -> Result<OperatorBasis> {
    let m = m.check(DEFAULT_TOLERANCE)?;
    let root = |beta, alpha| m.get(beta, alpha).sqrt();
    Ok(OperatorBasis {
        vectors: [
            ComplexVector2::real(
                root(Outcome::First, Outcome::First),
                root(Outcome::Second, Outcome::First),
            ),
            ComplexVector2::real(
                root(Outcome::First, Outcome::Second),
                -root(Outcome::Second, Outcome::Second),
            ),
        ],
        label: BasisLabel::ACanonical,
    })
}

/// Hermitian operator diagonal in `basis` with the given eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observable {
    pub basis: OperatorBasis,
    pub eigenvalues: [f64; 2],
}

impl Observable {
    pub fn new(basis: OperatorBasis, eigenvalues: [f64; 2]) -> Self {
        Observable { basis, eigenvalues }
    }

    /// The multiplication operator `b̂ψ(β) = β ψ(β)`.
    pub fn b(spectrum: &Spectrum) -> Self {
        Observable::new(b_basis(), spectrum.b_labels())
    }

    /// `â`, diagonal in the canonical `a` basis.
    pub fn a(c: &ValidContext) -> Result<Self> {
        Ok(Observable::new(
            a_canonical_basis(&c.matrix)?,
            c.spectrum.a_labels(),
        ))
    }

    /// `Σᵢ λᵢ vᵢ vᵢ†`.
    pub fn matrix(&self) -> Matrix2 {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (v, &lambda) in self.basis.vectors.iter().zip(&self.eigenvalues) {
            for (j, row) in out.iter_mut().enumerate() {
                for (k, cell) in row.iter_mut().enumerate() {
                    *cell += lambda * v[j] * v[k].conj();
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let m = self.matrix();
        (0..2).all(|j| (0..2).all(|k| (m[j][k] - m[k][j].conj()).norm() <= tol))
    }

    pub fn apply(&self, psi: &ComplexVector2) -> ComplexVector2 {
        let m = self.matrix();
        ComplexVector2::new(
            m[0][0] * psi[0] + m[0][1] * psi[1],
            m[1][0] * psi[0] + m[1][1] * psi[1],
        )
    }
}

/// A normalized amplitude together with the data it was built from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QLState {
    pub psi: ComplexVector2,
    pub source: ValidContext,
    pub profile: InterferenceProfile,
}

/// `ψ(β) = √(p^a_{α1} p(β|α1)) + e^{iφ_β} √(p^a_{α2} p(β|α2))` for arbitrary
/// phases. Born's rule for both observables needs the phases from
/// [`interference::relative_phases`].
pub fn amplitude_with_phases(c: &ValidContext, phases: (f64, f64)) -> ComplexVector2 {
    let component = |beta: Outcome, phase: f64| {
        let direct = (c.pa(Outcome::First) * c.matrix.get(beta, Outcome::First)).sqrt();
        let shifted = (c.pa(Outcome::Second) * c.matrix.get(beta, Outcome::Second)).sqrt();
        Complex64::new(direct, 0.0) + Complex64::from_polar(shifted, phase)
    };
    ComplexVector2::new(
        component(Outcome::First, phases.0),
        component(Outcome::Second, phases.1),
    )
}

/// Builds the state of a trigonometric context; hyperbolic data has none.
pub fn represent(c: &ValidContext, sign: SignBranch) -> Result<QLState> {
    let profile = interference::profile(c, sign)?;
    let phases = match (profile.classification, profile.phases) {
        (Classification::Trigonometric, Some([phi1, phi2])) => (phi1, phi2),
        _ => {
            return Err(QlraError::NotTrigonometric {
                max_abs_lambda: profile.lambda[0].abs().max(profile.lambda[1].abs()),
            })
        }
    };
    Ok(QLState {
        psi: amplitude_with_phases(c, phases),
        source: *c,
        profile,
    })
}

pub fn decompose(s: &QLState, basis: &OperatorBasis) -> [Complex64; 2] {
    basis.coordinates(&s.psi)
}

/// `(|⟨ψ, v₁⟩|², |⟨ψ, v₂⟩|²)`.
pub fn born_probabilities(s: &QLState, basis: &OperatorBasis) -> [f64; 2] {
    decompose(s, basis).map(|c| c.norm_sqr())
}

/// Spectral form `Σᵢ λᵢ |⟨ψ, vᵢ⟩|²`.
pub fn expectation(s: &QLState, obs: &Observable) -> f64 {
    born_probabilities(s, &obs.basis)
        .iter()
        .zip(&obs.eigenvalues)
        .map(|(prob, lambda)| prob * lambda)
        .sum()
}

/// Operator form `⟨Âψ, ψ⟩`; real up to rounding for Hermitian `Â`.
pub fn operator_expectation(psi: &ComplexVector2, obs: &Observable) -> Complex64 {
    inner_product(&obs.apply(psi), psi)
}

/// Represents `c` and reads both marginals back through Born's rule.
pub fn round_trip(c: &ValidContext, sign: SignBranch) -> Result<ContextData> {
    let s = represent(c, sign)?;
    let pb = born_probabilities(&s, &b_basis());
    let pa = born_probabilities(&s, &a_canonical_basis(&c.matrix)?);
    Ok(ContextData {
        spectrum: c.spectrum,
        pa,
        pb,
        matrix: c.matrix,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx(q: f64, p: f64, t: f64) -> ValidContext {
        ValidContext::from_parameters(q, p, t).unwrap()
    }

    fn assert_c(actual: Complex64, expected: Complex64, tol: f64) {
        assert!((actual - expected).norm() <= tol, "{actual} vs {expected}");
    }

    #[test]
    fn inner_product_examples() {
        let e1 = ComplexVector2::real(1.0, 0.0);
        let e2 = ComplexVector2::real(0.0, 1.0);
        assert_eq!(inner_product(&e1, &e1), c64(1.0, 0.0));
        assert_eq!(inner_product(&e1, &e2), c64(0.0, 0.0));
        let v = ComplexVector2::new(c64(0.5, 0.5), c64(0.5, -0.5));
        assert_eq!(inner_product(&v, &v), c64(1.0, 0.0));
    }

    #[test]
    fn inner_product_is_sesquilinear() {
        let u = ComplexVector2::new(c64(0.3, -1.2), c64(2.0, 0.7));
        let v = ComplexVector2::new(c64(-0.4, 0.1), c64(0.9, 1.5));
        let a = c64(0.2, 1.1);
        assert_c(inner_product(&u, &v), inner_product(&v, &u).conj(), 1e-15);
        assert_c(
            inner_product(&(a * u), &v),
            a * inner_product(&u, &v),
            1e-14,
        );
        assert_c(
            inner_product(&u, &(a * v)),
            a.conj() * inner_product(&u, &v),
            1e-14,
        );
    }

    #[test]
    fn represent_symmetric_context() {
        let s = represent(&ctx(0.5, 0.5, 0.5), SignBranch::Plus).unwrap();
        assert_c(s.psi[0], c64(0.5, 0.5), 1e-15);
        assert_c(s.psi[1], c64(0.5, -0.5), 1e-15);
        let s = represent(&ctx(0.5, 0.5, 0.5), SignBranch::Minus).unwrap();
        assert_c(s.psi[0], c64(0.5, -0.5), 1e-15);
        assert_c(s.psi[1], c64(0.5, 0.5), 1e-15);
    }

    #[test]
    fn represent_three_quarters() {
        let s = represent(&ctx(0.5, 0.75, 0.5), SignBranch::Plus).unwrap();
        // 0.5 + 0.5 e^{iπ/3} and 0.5 + 0.5 e^{i4π/3}, evaluated at 40 digits.
        assert_c(s.psi[0], c64(0.75, 0.4330127018922193), 1e-15);
        assert_c(s.psi[1], c64(0.25, -0.4330127018922193), 1e-15);
        assert!((s.psi[0].norm_sqr() - 0.75).abs() < 1e-15);
        assert!((s.psi[1].norm_sqr() - 0.25).abs() < 1e-15);
        assert_eq!(s.source.p(), 0.75);
    }

    #[test]
    fn hyperbolic_context_has_no_state() {
        assert!(matches!(
            represent(&ctx(0.5, 0.99, 0.01), SignBranch::Plus),
            Err(QlraError::NotTrigonometric { .. })
        ));
    }

    #[test]
    fn boundary_context_has_real_amplitudes() {
        let c = ctx(0.9, 0.8, 0.5);
        let plus = represent(&c, SignBranch::Plus).unwrap();
        let minus = represent(&c, SignBranch::Minus).unwrap();
        assert_eq!(plus.psi, minus.psi);
        assert!(plus.psi[0].im.abs() < 1e-15 && plus.psi[1].im.abs() < 1e-15);
    }

    #[test]
    fn b_basis_is_standard() {
        let b = b_basis();
        assert_eq!(b.vectors[0], ComplexVector2::real(1.0, 0.0));
        assert_eq!(b.vectors[1], ComplexVector2::real(0.0, 1.0));
        assert!(b.is_orthonormal(0.0));
        let s = represent(&ctx(0.3, 0.4, 0.2), SignBranch::Plus).unwrap();
        assert_eq!(born_probabilities(&s, &b)[0], s.psi[0].norm_sqr());
    }

    #[test]
    fn interference_basis_examples() {
        let half = TransitionMatrix::from_transition_probability(0.5).unwrap();
        let f = a_interference_basis(&half, (PI / 2.0, 3.0 * PI / 2.0)).unwrap();
        let r = 0.5f64.sqrt();
        assert_c(f.vectors[1][0], c64(0.0, r), 1e-15);
        assert_c(f.vectors[1][1], c64(0.0, -r), 1e-15);
        assert!(inner_product(&f.vectors[0], &f.vectors[1]).norm() < 1e-15);

        let tenth = TransitionMatrix::from_transition_probability(0.1).unwrap();
        let f = a_interference_basis(&tenth, (0.0, PI)).unwrap();
        assert_c(f.vectors[0][0], c64(0.1f64.sqrt(), 0.0), 1e-15);
        assert_c(f.vectors[0][1], c64(0.9f64.sqrt(), 0.0), 1e-15);
        assert_c(f.vectors[1][0], c64(0.9f64.sqrt(), 0.0), 1e-15);
        assert_c(f.vectors[1][1], c64(-(0.1f64.sqrt()), 0.0), 1e-15);

        assert!(matches!(
            a_interference_basis(&half, (PI / 3.0, PI / 2.0)),
            Err(QlraError::PhaseConstraintViolated { .. })
        ));
    }

    #[test]
    fn canonical_basis_examples() {
        let r = 0.5f64.sqrt();
        let e = a_canonical_basis(&TransitionMatrix::from_transition_probability(0.5).unwrap())
            .unwrap();
        assert_eq!(e.vectors[0], ComplexVector2::real(r, r));
        assert_eq!(e.vectors[1], ComplexVector2::real(r, -r));
        let e = a_canonical_basis(&TransitionMatrix::from_transition_probability(0.1).unwrap())
            .unwrap();
        assert_eq!(
            e.vectors[1],
            ComplexVector2::real(0.9f64.sqrt(), -(0.1f64.sqrt()))
        );
        assert!(e.is_orthonormal(1e-15));
        assert!(matches!(
            a_canonical_basis(&TransitionMatrix::new([[0.3, 0.6], [0.7, 0.4]])),
            Err(QlraError::NotDoublyStochastic { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx(0.3, 0.4, 0.2);
        let s = represent(&c, SignBranch::Plus).unwrap();
        let phases = s.profile.phases.unwrap();
        let f = a_interference_basis(&c.matrix, (phases[0], phases[1])).unwrap();
        let coeffs = decompose(&s, &f);
        assert_c(coeffs[0], c64(0.3f64.sqrt(), 0.0), 1e-15);
        assert_c(coeffs[1], c64(0.7f64.sqrt(), 0.0), 1e-15);
        assert!(f.reconstruct(coeffs).max_abs_diff(&s.psi) < 1e-15);
        assert_eq!(decompose(&s, &b_basis()), s.psi.components());

        let s = represent(&ctx(0.5, 0.75, 0.5), SignBranch::Plus).unwrap();
        let e = a_canonical_basis(&s.source.matrix).unwrap();
        let probs = born_probabilities(&s, &e);
        assert!((probs[0] - 0.5).abs() < 1e-15 && (probs[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn born_probability_examples() {
        let s = represent(&ctx(0.5, 0.75, 0.5), SignBranch::Plus).unwrap();
        let b = born_probabilities(&s, &b_basis());
        assert!((b[0] - 0.75).abs() < 1e-15 && (b[1] - 0.25).abs() < 1e-15);
        let s = represent(&ctx(0.5, 0.5, 0.5), SignBranch::Plus).unwrap();
        for basis in [b_basis(), a_canonical_basis(&s.source.matrix).unwrap()] {
            let probs = born_probabilities(&s, &basis);
            assert!((probs[0] - 0.5).abs() < 1e-15 && (probs[1] - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn expectation_examples() {
        let s = represent(&ctx(0.5, 0.75, 0.5), SignBranch::Plus).unwrap();
        let b = Observable::b(&Spectrum::default());
        assert!((expectation(&s, &b) - 0.5).abs() < 1e-15);
        let labelled = Observable::new(b_basis(), [2.0, 7.0]);
        assert!((expectation(&s, &labelled) - 3.25).abs() < 1e-14);
        let s = represent(&ctx(0.5, 0.5, 0.5), SignBranch::Plus).unwrap();
        assert!(expectation(&s, &b).abs() < 1e-15);
        let a = Observable::a(&s.source).unwrap();
        assert!(a.is_hermitian(1e-15));
        assert!(expectation(&s, &a).abs() < 1e-15);
    }

    #[test]
    fn round_trip_examples() {
        for (q, p, t) in [
            (0.5, 0.75, 0.5),
            (0.3, 0.4, 0.2),
            (0.5, 0.5, 0.5),
            (0.5, 0.5, 0.1),
        ] {
            let c = ctx(q, p, t);
            let back = round_trip(&c, SignBranch::Plus).unwrap();
            for i in 0..2 {
                assert!((back.pa[i] - c.pa[i]).abs() <= 1e-12);
                assert!((back.pb[i] - c.pb[i]).abs() <= 1e-12);
            }
            assert_eq!(back.matrix, c.matrix);
        }
        assert!(round_trip(&ctx(0.5, 0.99, 0.01), SignBranch::Plus).is_err());
    }

    fn trigonometric() -> impl Strategy<Value = ValidContext> {
        (0.01f64..0.99, 0.01f64..0.99, 0.01f64..0.99)
            .prop_map(|(q, p, t)| ctx(q, p, t))
            .prop_filter("RC", |c| {
                interference::classify(c) == Classification::Trigonometric
            })
    }

    proptest! {
        #[test]
        fn born_rule_holds_on_both_sides(c in trigonometric(), minus in any::<bool>()) {
            let sign = if minus { SignBranch::Minus } else { SignBranch::Plus };
            let s = represent(&c, sign).unwrap();
            prop_assert!((s.psi.norm_sqr() - 1.0).abs() <= 1e-12);
            let pb = born_probabilities(&s, &b_basis());
            let pa = born_probabilities(&s, &a_canonical_basis(&c.matrix).unwrap());
            for i in 0..2 {
                prop_assert!((pb[i] - c.pb[i]).abs() <= 1e-12);
                prop_assert!((pa[i] - c.pa[i]).abs() <= 1e-12);
            }
        }

        #[test]
        fn mirrored_phases_break_a_side_born_rule(c in trigonometric()) {
            let phi1 = interference::profile(&c, SignBranch::Plus).unwrap().phases.unwrap()[0];
            prop_assume!(phi1.sin().abs() > 0.1);
            let psi = amplitude_with_phases(&c, (phi1, PI - phi1));
            let e = a_canonical_basis(&c.matrix).unwrap();
            let pa = e.coordinates(&psi)[0].norm_sqr();
            prop_assert!((pa - c.pa[0]).abs() > 1e-6);
        }

        #[test]
        fn bases_are_orthonormal(t in 1e-6f64..1.0 - 1e-6, phi in 0.0f64..std::f64::consts::TAU) {
            let m = TransitionMatrix::from_transition_probability(t).unwrap();
            prop_assert!(a_canonical_basis(&m).unwrap().is_orthonormal(1e-12));
            let f = a_interference_basis(&m, (phi, (phi + PI) % std::f64::consts::TAU)).unwrap();
            prop_assert!(f.is_orthonormal(1e-12));
        }

        #[test]
        fn decomposition_reconstructs(c in trigonometric()) {
            let s = represent(&c, SignBranch::Plus).unwrap();
            let phases = s.profile.phases.unwrap();
            for basis in [
                b_basis(),
                a_canonical_basis(&c.matrix).unwrap(),
                a_interference_basis(&c.matrix, (phases[0], phases[1])).unwrap(),
            ] {
                let back = basis.reconstruct(decompose(&s, &basis));
                prop_assert!(back.max_abs_diff(&s.psi) <= 1e-12);
            }
        }

        #[test]
        fn sign_branches_are_conjugate(c in trigonometric()) {
            let plus = represent(&c, SignBranch::Plus).unwrap();
            let minus = represent(&c, SignBranch::Minus).unwrap();
            prop_assert!(plus.psi.conj().max_abs_diff(&minus.psi) <= 1e-12);
            let e = a_canonical_basis(&c.matrix).unwrap();
            for basis in [b_basis(), e] {
                let a = born_probabilities(&plus, &basis);
                let b = born_probabilities(&minus, &basis);
                prop_assert!((a[0] - b[0]).abs() <= 1e-12 && (a[1] - b[1]).abs() <= 1e-12);
            }
        }

        #[test]
        fn operator_and_spectral_expectations_agree(
            c in trigonometric(),
            l1 in -10.0f64..10.0,
            l2 in -10.0f64..10.0,
        ) {
            let s = represent(&c, SignBranch::Plus).unwrap();
            let b = Observable::new(b_basis(), [l1, l2]);
            prop_assert!(b.is_hermitian(1e-12));
            let op = operator_expectation(&s.psi, &b);
            prop_assert!(op.im.abs() <= 1e-12);
            prop_assert!((op.re - (l1 * c.pb[0] + l2 * c.pb[1])).abs() <= 1e-12);
            prop_assert!((expectation(&s, &b) - op.re).abs() <= 1e-12);
        }
    }
}
