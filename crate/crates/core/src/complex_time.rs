//! The damped dynamics as an undamped oscillator running in complex time.
//!
//! With `τ = (1 − iγ/ω₁)t` the mode equations become `dz/dτ = −iω₁z` and the
//! quantum evolution becomes `e^{−iτH̃}` with the real Hamiltonian
//! `H̃ = ħω₁(a†a + 1/2)`. The ground-state phase keeps using real time
//! `t = Re τ`, so the ground energy stays `ħω/2`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::classical::OscillatorParams;
use crate::modes::ModePair;
use crate::quantum::{self, check_time, EvolutionReport, FockState};
use crate::Result;

/// Per-coefficient agreement required between the two evolution pictures.
pub const EQUIVALENCE_TOL: f64 = 1e-12;

/// A point on the ray `τ = (1 − iγ/ω₁)t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTime {
    pub tau: Complex64,
    /// Real time, equal to `Re τ`.
    pub t: f64,
}

impl ComplexTime {
    pub fn tau_conj(&self) -> Complex64 {
        self.tau.conj()
    }

    /// `|τ|`, reported alongside `t` as an alternative notion of duration.
    pub fn modulus(&self) -> f64 {
        self.tau.norm()
    }
}

pub fn complex_time_of(params: &OscillatorParams, t: f64) -> Result<ComplexTime> {
    check_time(t)?;
    let slope = params.gamma() / params.omega1();
    // Re τ is t itself, not (1·t) from a complex product
    Ok(ComplexTime {
        tau: Complex64::new(t, 0.0 - slope * t),
        t,
    })
}

/// Level of `H̃ = ħω₁(a†a + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TildeSpectrumLine {
    pub n: usize,
    pub energy: f64,
}

pub fn tilde_spectrum(params: &OscillatorParams, n_max: usize) -> Vec<TildeSpectrumLine> {
    let quantum = params.hbar() * params.omega1();
    (0..=n_max)
        .map(|n| TildeSpectrumLine {
            n,
            energy: quantum * (n as f64 + 0.5),
        })
        .collect()
}

/// Classical `H̃ = ω₁ z z*` evaluated on a mode pair.
pub fn tilde_hamiltonian(params: &OscillatorParams, m: &ModePair) -> Complex64 {
    params.omega1() * m.z * m.z_conj
}

/// Mode evolution `z(τ) = e^{−iω₁τ} z(0)`, `z*(τ*) = e^{iω₁τ*} z*(0)`.
pub fn mode_flow_tau(params: &OscillatorParams, m0: &ModePair, t: f64) -> Result<ModePair> {
    let ct = complex_time_of(params, t)?;
    let i_w1 = Complex64::new(0.0, params.omega1());
    Ok(ModePair {
        z: (-i_w1 * ct.tau).exp() * m0.z,
        z_conj: (i_w1 * ct.tau_conj()).exp() * m0.z_conj,
    })
}

/// `e^{−iτħω₁n}` for the level `n`.
fn tau_factor(params: &OscillatorParams, n: usize, tau: Complex64) -> Complex64 {
    let scale = params.hbar() * params.omega1() * n as f64;
    // −iτs = s·Im τ − i s·Re τ
    let magnitude = (tau.im * scale).exp();
    let (s, c) = (tau.re * params.hbar() * params.omega1() * n as f64).sin_cos();
    Complex64::new(magnitude * c, -magnitude * s)
}

/// Evolution in complex time: `ψ_n(τ) = e^{−itħω/2} e^{−iτħω₁n} ψ_n`.
pub fn evolve_tau(params: &OscillatorParams, psi0: &FockState, t: f64) -> Result<EvolutionReport> {
    let ct = complex_time_of(params, t)?;
    let g = quantum::ground_phase(params, ct.t);
    let amplitudes = psi0
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, &a)| g * tau_factor(params, n, ct.tau) * a)
        .collect();
    Ok(EvolutionReport::new(t, FockState::from_amplitudes(amplitudes)?))
}

/// One row of [`picture_equivalence_report`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalencePoint {
    pub t: f64,
    pub tau: Complex64,
    /// `max_n |ψ_n^{complex H}(t) − ψ_n^{complex τ}(t)|`; infinite if `t` was invalid.
    pub max_deviation: f64,
    pub passed: bool,
}

/// Compares [`quantum::evolve`] with [`evolve_tau`] at each time.
///
/// Invalid times are reported as failed rows, not errors. Rows come back in
/// the order of `times`.
pub fn picture_equivalence_report(
    params: &OscillatorParams,
    psi0: &FockState,
    times: &[f64],
) -> Vec<EquivalencePoint> {
    times
        .par_iter()
        .map(|&t| {
            let compare = || -> Result<(Complex64, f64)> {
                let h = quantum::evolve(params, psi0, t)?;
                let tau = evolve_tau(params, psi0, t)?;
                let ct = complex_time_of(params, t)?;
                Ok((ct.tau, h.state.max_coeff_diff(&tau.state)?))
            };
            match compare() {
                Ok((tau, dev)) => EquivalencePoint {
                    t,
                    tau,
                    max_deviation: dev,
                    passed: dev <= EQUIVALENCE_TOL,
                },
                Err(_) => EquivalencePoint {
                    t,
                    tau: Complex64::new(f64::NAN, f64::NAN),
                    max_deviation: f64::INFINITY,
                    passed: false,
                },
            }
        })
        .collect()
}
