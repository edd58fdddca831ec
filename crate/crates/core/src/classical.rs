//! Classical damped oscillator `ẍ + 2γẋ + ω²x = 0` with unit mass.
//!
//! Phase space uses `p = ẋ`; with the mass fixed to 1, velocity and canonical
//! momentum coincide.

use std::f64::consts::TAU;

use crate::ode;
use crate::{Error, Result};

/// Physical constants of the underdamped oscillator.
///
/// Construction enforces `ω > γ ≥ 0` and `ħ > 0`. `γ = 0` (no damping) is
/// allowed so that undamped limits can be compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    omega: f64,
    gamma: f64,
    hbar: f64,
}

impl OscillatorParams {
    pub fn new(omega: f64, gamma: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("omega", omega), ("gamma", gamma), ("hbar", hbar)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if omega <= 0.0 {
            return Err(Error::NonPositiveOmega(omega));
        }
        if gamma < 0.0 {
            return Err(Error::NegativeGamma(gamma));
        }
        if hbar <= 0.0 {
            return Err(Error::NonPositiveHbar(hbar));
        }
        if omega == gamma {
            return Err(Error::CriticallyDamped(omega));
        }
        if omega < gamma {
            return Err(Error::Overdamped { omega, gamma });
        }
        let params = Self { omega, gamma, hbar };
        // ω slightly above γ can still round ω₁ to zero
        if params.omega1() <= 0.0 {
            return Err(Error::CriticallyDamped(omega));
        }
        Ok(params)
    }

    /// Parameters with `ħ = 1`.
    pub fn unit_hbar(omega: f64, gamma: f64) -> Result<Self> {
        Self::new(omega, gamma, 1.0)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Reduced frequency `ω₁ = √(ω² − γ²)`.
    pub fn omega1(&self) -> f64 {
        // factored form keeps precision when γ is close to ω
        ((self.omega - self.gamma) * (self.omega + self.gamma)).sqrt()
    }

    /// Companion matrix of `dX/dt = AX`, row-major.
    pub fn companion_matrix(&self) -> [[f64; 2]; 2] {
        [[0.0, 1.0], [-self.omega * self.omega, -2.0 * self.gamma]]
    }

    /// A horizon over which the motion has visibly decayed: `10/γ`, or ten
    /// undamped periods when `γ = 0`.
    pub fn decay_horizon(&self) -> f64 {
        if self.gamma > 0.0 {
            10.0 / self.gamma
        } else {
            10.0 * TAU / self.omega
        }
    }
}

/// Reduced frequency of the damped motion.
pub fn derived_frequency(params: &OscillatorParams) -> f64 {
    params.omega1()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ClassicalState {
    pub x: f64,
    pub p: f64,
}

impl ClassicalState {
    pub fn new(x: f64, p: f64) -> Self {
        Self { x, p }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite()
    }

    pub(crate) fn to_array(self) -> [f64; 2] {
        [self.x, self.p]
    }

    pub(crate) fn from_array(a: [f64; 2]) -> Self {
        Self { x: a[0], p: a[1] }
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(&self, other: &ClassicalState) -> f64 {
        (self.x - other.x).abs().max((self.p - other.p).abs())
    }
}

/// `(A, θ)` of the general solution `x(t) = A e^{−γt} sin(ω₁t + θ)`.
///
/// Canonical form: `A ≥ 0`, `θ ∈ [0, 2π)`, and `θ = 0` whenever `A = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePhase {
    amplitude: f64,
    phase: f64,
}

impl AmplitudePhase {
    /// Normalizes the inputs: a negative amplitude flips the phase by π.
    pub fn new(amplitude: f64, phase: f64) -> Self {
        let (amplitude, phase) = if amplitude < 0.0 {
            (-amplitude, phase + std::f64::consts::PI)
        } else {
            (amplitude, phase)
        };
        if amplitude == 0.0 {
            return Self { amplitude: 0.0, phase: 0.0 };
        }
        Self { amplitude, phase: normalize_angle(phase) }
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// A sampled trajectory; `times` strictly increasing and `states.len() == times.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<ClassicalState>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, ClassicalState)> {
        Some((*self.times.last()?, *self.states.last()?))
    }

    /// Maximum componentwise deviation from the closed-form solution.
    pub fn max_error_against(&self, params: &OscillatorParams, ap: &AmplitudePhase) -> f64 {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, s)| s.max_abs_diff(&analytic_solution(params, ap, t)))
            .fold(0.0, f64::max)
    }
}

/// Closed-form state at time `t`.
pub fn analytic_solution(params: &OscillatorParams, ap: &AmplitudePhase, t: f64) -> ClassicalState {
    let w1 = params.omega1();
    let g = params.gamma();
    let env = ap.amplitude * (-g * t).exp();
    let (s, c) = (w1 * t + ap.phase).sin_cos();
    ClassicalState {
        x: env * s,
        p: env * (w1 * c - g * s),
    }
}

/// Inverts the closed form at `t = 0`: `x = A sin θ`, `p + γx = A ω₁ cos θ`.
pub fn amplitude_phase_from_state(params: &OscillatorParams, s0: &ClassicalState) -> AmplitudePhase {
    let sin_part = s0.x;
    let cos_part = (s0.p + params.gamma() * s0.x) / params.omega1();
    let amplitude = sin_part.hypot(cos_part);
    if amplitude == 0.0 {
        return AmplitudePhase::new(0.0, 0.0);
    }
    AmplitudePhase::new(amplitude, sin_part.atan2(cos_part))
}

/// Right-hand side of `dX/dt = AX + f(t)(0, 1)ᵀ`.
pub(crate) fn affine_rhs(params: &OscillatorParams, s: &[f64; 2], force: f64) -> [f64; 2] {
    let w2 = params.omega() * params.omega();
    [s[1], -w2 * s[0] - 2.0 * params.gamma() * s[1] + force]
}

/// RK4 integration of the homogeneous system from `t = 0` to `t_end`.
pub fn integrate_homogeneous(
    params: &OscillatorParams,
    s0: &ClassicalState,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory> {
    let times = ode::time_grid(t_end, dt, &[])?;
    let states = ode::integrate_on_grid(&times, s0.to_array(), |_, s, _| affine_rhs(params, s, 0.0))
        .into_iter()
        .map(ClassicalState::from_array)
        .collect();
    Ok(Trajectory { times, states })
}
