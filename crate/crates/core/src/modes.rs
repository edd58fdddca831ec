//! Normal modes of the damped oscillator.
//!
//! The companion matrix `A = [[0, 1], [−ω², −2γ]]` has eigenvalues
//! `λ∓ = −γ ∓ iω₁`. With
//!
//! ```text
//! U   = 1/√(2ω₁) · [[1, 1], [λ₋, λ₊]]
//! U⁻¹ = −i/√(2ω₁) · [[λ₊, −1], [−λ₋, 1]]
//! ```
//!
//! the mode vector `(z, z*) = U⁻¹ (x, p)` evolves as `z(t) = e^{λ₋t} z(0)` and
//! `z*(t) = e^{λ₊t} z*(0)`.

use std::ops::Mul;

use num_complex::Complex64;

use crate::classical::{ClassicalState, OscillatorParams};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Largest `|z* − conj(z)|` accepted by [`from_modes`].
const CONJUGATE_SLACK: f64 = 1e-9;

/// Dense 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2([[one, zero], [zero, one]])
    }

    pub fn diag(a: Complex64, b: Complex64) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Mat2([[a, zero], [zero, b]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Mat2(m.map(|row| row.map(|v| Complex64::new(v, 0.0))))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Mat2(self.0.map(|row| row.map(|v| v * s)))
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Mat2(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenData {
    pub lambda_minus: Complex64,
    pub lambda_plus: Complex64,
    pub omega1: f64,
}

pub fn eigen_data(params: &OscillatorParams) -> EigenData {
    let w1 = params.omega1();
    let g = params.gamma();
    EigenData {
        lambda_minus: Complex64::new(-g, -w1),
        lambda_plus: Complex64::new(-g, w1),
        omega1: w1,
    }
}

/// The diagonalizing matrix `U` and its inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformPair {
    pub forward: Mat2,
    pub inverse: Mat2,
}

impl TransformPair {
    /// `U · diag(λ₋, λ₊) · U⁻¹`, which should equal the companion matrix.
    pub fn reconstruct(&self, eig: &EigenData) -> Mat2 {
        self.forward * Mat2::diag(eig.lambda_minus, eig.lambda_plus) * self.inverse
    }
}

pub fn transform_pair(params: &OscillatorParams) -> TransformPair {
    let eig = eigen_data(params);
    let norm = 1.0 / (2.0 * eig.omega1).sqrt();
    let one = Complex64::new(1.0, 0.0);
    let forward = Mat2([[one, one], [eig.lambda_minus, eig.lambda_plus]]).scale(Complex64::new(norm, 0.0));
    let inverse = Mat2([[eig.lambda_plus, -one], [-eig.lambda_minus, one]]).scale(-I * norm);
    TransformPair { forward, inverse }
}

/// Complex mode amplitude `z` and its partner `z*`.
///
/// For modes built from a real phase-space point, `z_conj == z.conj()`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePair {
    pub z: Complex64,
    pub z_conj: Complex64,
}

impl ModePair {
    /// A mode pair consistent with real phase-space data.
    pub fn from_z(z: Complex64) -> Self {
        Self { z, z_conj: z.conj() }
    }

    pub fn max_abs_diff(&self, other: &ModePair) -> f64 {
        (self.z - other.z).norm().max((self.z_conj - other.z_conj).norm())
    }
}

/// `z = (ω₁x + i(p + γx))/√(2ω₁)`, `z* = (ω₁x − i(p + γx))/√(2ω₁)`.
pub fn to_modes(params: &OscillatorParams, s: &ClassicalState) -> ModePair {
    let w1 = params.omega1();
    let norm = (2.0 * w1).sqrt();
    let re = w1 * s.x / norm;
    let im = (s.p + params.gamma() * s.x) / norm;
    ModePair {
        z: Complex64::new(re, im),
        z_conj: Complex64::new(re, -im),
    }
}

/// Applies `U` to the mode vector and returns the real phase-space point.
pub fn from_modes(params: &OscillatorParams, m: &ModePair) -> Result<ClassicalState> {
    let mismatch = (m.z_conj - m.z.conj()).norm();
    if !(mismatch <= CONJUGATE_SLACK) {
        return Err(Error::InconsistentModePair(mismatch));
    }
    let [x, p] = transform_pair(params).forward.apply([m.z, m.z_conj]);
    Ok(ClassicalState::new(drop_residue(x), drop_residue(p)))
}

// For a conjugate pair U·(z, z*) is real up to rounding; the residue is discarded.
fn drop_residue(v: Complex64) -> f64 {
    v.re
}

/// Exact mode evolution `z(t) = e^{λ₋t} z(0)`, `z*(t) = e^{λ₊t} z*(0)`.
pub fn mode_flow(params: &OscillatorParams, m0: &ModePair, t: f64) -> ModePair {
    let eig = eigen_data(params);
    ModePair {
        z: (eig.lambda_minus * t).exp() * m0.z,
        z_conj: (eig.lambda_plus * t).exp() * m0.z_conj,
    }
}

/// Constant partial derivatives of the linear map `(x, p) ↦ (z, z*)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeJacobian {
    pub dz_dx: Complex64,
    pub dz_dp: Complex64,
    pub dzc_dx: Complex64,
    pub dzc_dp: Complex64,
}

pub fn mode_jacobian(params: &OscillatorParams) -> ModeJacobian {
    let w1 = params.omega1();
    let g = params.gamma();
    let norm = (2.0 * w1).sqrt();
    ModeJacobian {
        dz_dx: Complex64::new(w1, g) / norm,
        dz_dp: I / norm,
        dzc_dx: Complex64::new(w1, -g) / norm,
        dzc_dp: -I / norm,
    }
}

/// `{z*, z} = ∂z*/∂x ∂z/∂p − ∂z/∂x ∂z*/∂p`; equals `i` for every valid parameter set.
pub fn poisson_bracket_check(params: &OscillatorParams) -> Complex64 {
    let j = mode_jacobian(params);
    j.dzc_dx * j.dz_dp - j.dz_dx * j.dzc_dp
}
