//! Quantized damped oscillator in a truncated Fock basis.
//!
//! The Hamiltonian `H = ħ(ω₁ − iγ)(a†a + 1/2)` is normal but not self-adjoint.
//! Its ground energy is fixed to the γ-independent value `ħω/2`, so the
//! levels are `E_n = ħ(ω₁ − iγ)n + ħω/2` and evolution under `e^{−itH}` acts
//! on each number-state coefficient separately:
//!
//! ```text
//! ψ_n(t) = e^{−itħω/2} · e^{−tħγn} · e^{−itħω₁n} · ψ_n
//! ```
//!
//! Because the evolution is diagonal in the number basis, truncating at `N`
//! levels is exact for any state supported below `N`. Evolved states are not
//! renormalized: the loss of norm is the dissipation.

use num_complex::Complex64;
use rand::Rng;

use crate::classical::OscillatorParams;
use crate::{Error, Result};

/// Norms below this are treated as numerically extinct.
pub const EXTINCT_NORM_SQ: f64 = 1e-300;

/// One complex energy level `E_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLine {
    pub n: usize,
    pub energy: Complex64,
}

/// Ground energy `ħω/2`, independent of the damping.
pub fn ground_energy(params: &OscillatorParams) -> f64 {
    0.5 * params.hbar() * params.omega()
}

/// Levels `E_n = ħ(ω₁ − iγ)n + ħω/2` for `n = 0..=n_max`.
pub fn spectrum(params: &OscillatorParams, n_max: usize) -> Vec<SpectrumLine> {
    let hbar = params.hbar();
    let e0 = ground_energy(params);
    (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            // 0.0 - 0.0 keeps the ground level's imaginary part at +0
            let im = 0.0 - hbar * params.gamma() * nf;
            SpectrumLine {
                n,
                energy: Complex64::new(hbar * params.omega1() * nf + e0, im),
            }
        })
        .collect()
}

/// The uncorrected levels `ħ(ω₁ − iγ)(n + 1/2)`.
///
/// Not physical for `γ > 0`: the ground level picks up a damping-dependent
/// shift. Kept only for comparison against [`spectrum`].
pub fn naive_spectrum(params: &OscillatorParams, n_max: usize) -> Vec<SpectrumLine> {
    let coeff = params.hbar() * Complex64::new(params.omega1(), -params.gamma());
    (0..=n_max)
        .map(|n| SpectrumLine {
            n,
            energy: coeff * (n as f64 + 0.5),
        })
        .collect()
}

/// Amplitudes `ψ₀ … ψ_{N−1}` over number states.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amplitudes: Vec<Complex64>,
}

impl FockState {
    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroState);
        }
        if let Some(index) = amplitudes.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::NonFiniteAmplitude { index });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes the amplitudes to unit norm. Returns the state together
    /// with the factor the amplitudes were multiplied by.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<(Self, f64)> {
        let raw = Self::from_amplitudes(amplitudes)?;
        let norm_sq = raw.norm_sq();
        if !(norm_sq > 0.0) || !norm_sq.is_finite() {
            return Err(Error::ZeroState);
        }
        let factor = 1.0 / norm_sq.sqrt();
        let amplitudes = raw.amplitudes.into_iter().map(|a| a * factor).collect();
        Ok((Self { amplitudes }, factor))
    }

    /// Number state `|n⟩` in a space of dimension `dim`.
    pub fn basis(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::DimensionMismatch { left: n + 1, right: dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[n] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// A random normalized state with Gaussian real and imaginary parts.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Self {
        assert!(dim > 0, "Fock dimension must be positive");
        loop {
            let amps: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                .collect();
            if let Ok((state, _)) = Self::normalized(amps) {
                return state;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes.get(n).copied().unwrap_or_default()
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect(),
        }
    }

    fn check_dim(&self, other: &FockState) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Euclidean distance `‖self − other‖`.
    pub fn distance(&self, other: &FockState) -> Result<f64> {
        self.check_dim(other)?;
        let sq: f64 = self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok(sq.sqrt())
    }

    /// Largest per-coefficient modulus `max_n |self_n − other_n|`.
    pub fn max_coeff_diff(&self, other: &FockState) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Box–Muller
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Result of evolving a state to time `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionReport {
    pub time: f64,
    pub state: FockState,
    /// `Σ|ψ_n(t)|²`; decays below 1 when `γ > 0`.
    pub norm_sq: f64,
    /// `ψ₀(t)`.
    pub ground_overlap: Complex64,
}

impl EvolutionReport {
    pub fn new(time: f64, state: FockState) -> Self {
        let norm_sq = state.norm_sq();
        let ground_overlap = state.amplitude(0);
        Self { time, state, norm_sq, ground_overlap }
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::NegativeTime(t));
    }
    Ok(())
}

/// `e^{−itħω/2}`: the γ-independent ground-state phase shared by both
/// evolution pictures.
pub fn ground_phase(params: &OscillatorParams, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -(t * ground_energy(params)))
}

/// `e^{−tħγn} e^{−itħω₁n}`, evaluated directly for each level.
fn excitation_factor(params: &OscillatorParams, n: usize, t: f64) -> Complex64 {
    let nf = n as f64;
    let decay = (-(t * params.hbar() * params.gamma() * nf)).exp();
    let (s, c) = (t * params.hbar() * params.omega1() * nf).sin_cos();
    Complex64::new(decay * c, -decay * s)
}

/// Non-unitary evolution `ψ(t) = e^{−itH} ψ` for `t ≥ 0`.
///
/// The input need not be normalized, so evolved states can be evolved again.
pub fn evolve(params: &OscillatorParams, psi0: &FockState, t: f64) -> Result<EvolutionReport> {
    check_time(t)?;
    let g = ground_phase(params, t);
    let amplitudes = psi0
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, &a)| g * excitation_factor(params, n, t) * a)
        .collect();
    Ok(EvolutionReport::new(t, FockState { amplitudes }))
}

/// The coefficient `e^{−itħω/2} ψ₀` the state settles onto as `t → ∞`.
pub fn asymptotic_state(params: &OscillatorParams, psi0: &FockState, t: f64) -> Result<Complex64> {
    if params.gamma() <= 0.0 {
        return Err(Error::Undamped);
    }
    check_time(t)?;
    Ok(ground_phase(params, t) * psi0.amplitude(0))
}

/// Distance of `ψ(t)` from its limit `e^{−itħω/2}ψ₀|0⟩` and the bound
/// `e^{−ħγt} √(Σ_{n≥1}|ψ_n|²)` it must respect.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SettlingCheck {
    pub distance: f64,
    pub bound: f64,
}

impl SettlingCheck {
    pub fn holds(&self, slack: f64) -> bool {
        self.distance <= self.bound + slack
    }
}

pub fn settling_check(params: &OscillatorParams, psi0: &FockState, t: f64) -> Result<SettlingCheck> {
    let limit = asymptotic_state(params, psi0, t)?;
    let report = evolve(params, psi0, t)?;
    let mut limit_state = vec![Complex64::new(0.0, 0.0); psi0.dim()];
    limit_state[0] = limit;
    let distance = report.state.distance(&FockState { amplitudes: limit_state })?;
    let excited: f64 = psi0.amplitudes.iter().skip(1).map(|a| a.norm_sqr()).sum();
    let bound = (-(params.hbar() * params.gamma() * t)).exp() * excited.sqrt();
    Ok(SettlingCheck { distance, bound })
}

/// `⟨n⟩ = Σ n|ψ_n|² / Σ|ψ_n|²` of the evolved state.
pub fn number_expectation(report: &EvolutionReport) -> Result<f64> {
    if !(report.norm_sq >= EXTINCT_NORM_SQ) {
        return Err(Error::ExtinctState(report.norm_sq));
    }
    let weighted: f64 = report
        .state
        .amplitudes
        .iter()
        .enumerate()
        .map(|(n, a)| n as f64 * a.norm_sqr())
        .sum();
    Ok(weighted / report.norm_sq)
}

/// `√1 · ψ₀* ψ₁`, the lowest term of `⟨ψ|a|ψ⟩`. Its modulus decays at rate `ħγ`.
pub fn first_moment_coefficient(state: &FockState) -> Complex64 {
    state.amplitude(0).conj() * state.amplitude(1)
}
