//! Density matrices, projective POVM elements, and the parametrized
//! projector family used by the explicit Bell-state strategy.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Tolerance for Hermiticity, idempotence, trace, and completeness checks.
pub const QUANTUM_TOL: f64 = 1e-9;

/// A valid quantum state: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        if !mat.is_square() || !mat.all_finite() {
            return Err(Error::InvalidQuantumStrategy(
                "density matrix must be square with finite entries".into(),
            ));
        }
        if !mat.is_hermitian(QUANTUM_TOL) {
            return Err(Error::InvalidQuantumStrategy(
                "density matrix is not Hermitian".into(),
            ));
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > QUANTUM_TOL || trace.im.abs() > QUANTUM_TOL {
            return Err(Error::InvalidQuantumStrategy(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let min_eig = mat.hermitian_eigenvalues()[0];
        if min_eig < -QUANTUM_TOL {
            return Err(Error::InvalidQuantumStrategy(format!(
                "density matrix has negative eigenvalue {min_eig}"
            )));
        }
        Ok(Self { mat })
    }

    /// The pure state v·v† of a unit vector.
    pub fn pure(v: &[Complex64]) -> Result<Self> {
        Self::new(ComplexMatrix::outer(v))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.mat.hermitian_eigenvalues()
    }
}

/// The maximally entangled two-qubit state (|00⟩ + |11⟩)/√2 as a density
/// matrix: entries 1/2 at positions (0,0), (0,3), (3,0), (3,3).
pub fn bell_state() -> DensityMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = [
        Complex64::new(s, 0.0),
        Complex64::ZERO,
        Complex64::ZERO,
        Complex64::new(s, 0.0),
    ];
    DensityMatrix::pure(&v).expect("Bell state is a valid density matrix")
}

/// A projective POVM element. The `Zero` and `Identity` variants stand in
/// for the degenerate projectors that the finite parametrization only
/// reaches in the μ → ∞ limit.
#[derive(Debug, Clone, PartialEq)]
pub enum PovmElement {
    Zero(usize),
    Identity(usize),
    Proj(ComplexMatrix),
}

impl PovmElement {
    pub fn dim(&self) -> usize {
        match self {
            PovmElement::Zero(d) | PovmElement::Identity(d) => *d,
            PovmElement::Proj(m) => m.rows(),
        }
    }

    /// Materializes the element as a matrix.
    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            PovmElement::Zero(d) => ComplexMatrix::zeros(*d, *d),
            PovmElement::Identity(d) => ComplexMatrix::identity(*d),
            PovmElement::Proj(m) => m.clone(),
        }
    }

    /// The complementary element I − P.
    pub fn complement(&self) -> PovmElement {
        match self {
            PovmElement::Zero(d) => PovmElement::Identity(*d),
            PovmElement::Identity(d) => PovmElement::Zero(*d),
            PovmElement::Proj(m) => {
                PovmElement::Proj(ComplexMatrix::identity(m.rows()).sub(m))
            }
        }
    }

    /// Block-diagonal direct sum of two elements.
    pub fn direct_sum(&self, other: &PovmElement) -> PovmElement {
        match (self, other) {
            (PovmElement::Zero(a), PovmElement::Zero(b)) => PovmElement::Zero(a + b),
            (PovmElement::Identity(a), PovmElement::Identity(b)) => PovmElement::Identity(a + b),
            _ => PovmElement::Proj(self.matrix().direct_sum(&other.matrix())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let PovmElement::Proj(m) = self {
            if !m.all_finite() || !m.is_hermitian(QUANTUM_TOL) {
                return Err(Error::InvalidQuantumStrategy(
                    "POVM element is not Hermitian".into(),
                ));
            }
            if !m.is_idempotent(QUANTUM_TOL) {
                return Err(Error::InvalidQuantumStrategy(
                    "POVM element is not idempotent".into(),
                ));
            }
        }
        Ok(())
    }
}

/// Parameters for [`projector_family`]: either a finite (μ, a, b, θ) tuple
/// or one of the two limiting diagonal projectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProjectorParams {
    Finite { mu: f64, a: f64, b: f64, theta: f64 },
    /// The μ → ∞ limit of (μ, μ, 0, 0): diag(1, 0).
    LimitUpper,
    /// The μ → ∞ limit of (μ, 0, μ, π): diag(0, 1).
    LimitLower,
}

impl ProjectorParams {
    /// The one-parameter slice of valid finite parameters through a given
    /// diagonal ratio: μ = (1 + a²)/a and b = 1/a for any a > 0.
    pub fn from_diagonal(a: f64, theta: f64) -> Self {
        ProjectorParams::Finite {
            mu: (1.0 + a * a) / a,
            a,
            b: 1.0 / a,
            theta,
        }
    }
}

/// Builds the 2×2 projector (1/μ)·[[a, e^{−iθ}], [e^{iθ}, b]].
///
/// The finite case requires μ = a + b, μa = 1 + a², μb = 1 + b², which
/// makes the result idempotent by construction.
pub fn projector_family(params: ProjectorParams) -> Result<PovmElement> {
    match params {
        ProjectorParams::LimitUpper => Ok(PovmElement::Proj(ComplexMatrix::from_real_rows(
            2,
            &[1.0, 0.0, 0.0, 0.0],
        ))),
        ProjectorParams::LimitLower => Ok(PovmElement::Proj(ComplexMatrix::from_real_rows(
            2,
            &[0.0, 0.0, 0.0, 1.0],
        ))),
        ProjectorParams::Finite { mu, a, b, theta } => {
            let checks = [
                ("mu = a + b", mu - (a + b)),
                ("mu*a = 1 + a^2", mu * a - (1.0 + a * a)),
                ("mu*b = 1 + b^2", mu * b - (1.0 + b * b)),
            ];
            for (name, residual) in checks {
                if residual.abs() > QUANTUM_TOL {
                    return Err(Error::ConstraintViolation(format!(
                        "{name} violated by {residual:e}"
                    )));
                }
            }
            let phase = Complex64::from_polar(1.0, theta);
            let m = ComplexMatrix::from_rows(
                2,
                &[
                    Complex64::new(a / mu, 0.0),
                    phase.conj() / mu,
                    phase / mu,
                    Complex64::new(b / mu, 0.0),
                ],
            );
            Ok(PovmElement::Proj(m))
        }
    }
}
