//! Classical oscillator under an external control field:
//! `ẍ + 2γẋ + ω²x = f(t)`, i.e. `dX/dt = AX + f(t)(0, 1)ᵀ`.
//!
//! Piecewise-constant signals take the new level at a breakpoint. The
//! integration grid always contains every breakpoint, and inside one step the
//! RK4 stages all see the level that was latched at the start of the step.

use std::str::FromStr;

use crate::classical::{affine_rhs, ClassicalState, OscillatorParams};
use crate::ode;
use crate::{Error, Result};

/// An external drive `f(t)`.
pub trait Drive {
    /// Point value `f(t)`.
    fn value(&self, t: f64) -> f64;

    /// Value seen by an RK4 stage at `t` inside the step starting at `step_start`.
    fn stage_value(&self, t: f64, step_start: f64) -> f64 {
        let _ = step_start;
        self.value(t)
    }

    /// Discontinuities that the integration grid must contain.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ControlSignal {
    Zero,
    Constant(f64),
    /// `amplitude · sin(frequency · t + phase)`.
    Sinusoid { amplitude: f64, frequency: f64, phase: f64 },
    /// Level `levels[k]` on `[breakpoints[k], breakpoints[k+1])`; zero before
    /// the first breakpoint.
    PiecewiseConstant { breakpoints: Vec<f64>, levels: Vec<f64> },
}

impl ControlSignal {
    pub fn constant(level: f64) -> Result<Self> {
        finite("constant level", level)?;
        Ok(Self::Constant(level))
    }

    pub fn sinusoid(amplitude: f64, frequency: f64, phase: f64) -> Result<Self> {
        finite("sinusoid amplitude", amplitude)?;
        finite("sinusoid frequency", frequency)?;
        finite("sinusoid phase", phase)?;
        Ok(Self::Sinusoid { amplitude, frequency, phase })
    }

    pub fn piecewise(steps: Vec<(f64, f64)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::InvalidSignal("piecewise signal needs at least one breakpoint".into()));
        }
        for (i, &(t, level)) in steps.iter().enumerate() {
            finite("piecewise breakpoint", t)?;
            finite("piecewise level", level)?;
            if i > 0 && !(t > steps[i - 1].0) {
                return Err(Error::UnorderedBreakpoints(i));
            }
        }
        let (breakpoints, levels) = steps.into_iter().unzip();
        Ok(Self::PiecewiseConstant { breakpoints, levels })
    }

    /// Re-checks the invariants; enum values can be built directly.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Zero => Ok(()),
            Self::Constant(f) => Self::constant(*f).map(drop),
            Self::Sinusoid { amplitude, frequency, phase } => {
                Self::sinusoid(*amplitude, *frequency, *phase).map(drop)
            }
            Self::PiecewiseConstant { breakpoints, levels } => {
                if breakpoints.len() != levels.len() {
                    return Err(Error::InvalidSignal("breakpoint/level count mismatch".into()));
                }
                Self::piecewise(breakpoints.iter().copied().zip(levels.iter().copied()).collect()).map(drop)
            }
        }
    }
}

fn finite(what: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSignal(format!("{what} must be finite, got {v}")))
    }
}

impl Drive for ControlSignal {
    fn value(&self, t: f64) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Constant(f) => *f,
            Self::Sinusoid { amplitude, frequency, phase } => amplitude * (frequency * t + phase).sin(),
            Self::PiecewiseConstant { breakpoints, levels } => {
                let k = breakpoints.partition_point(|&b| b <= t);
                if k == 0 {
                    0.0
                } else {
                    levels[k - 1]
                }
            }
        }
    }

    fn stage_value(&self, t: f64, step_start: f64) -> f64 {
        match self {
            Self::PiecewiseConstant { .. } => self.value(step_start),
            _ => self.value(t),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        match self {
            Self::PiecewiseConstant { breakpoints, .. } => breakpoints.clone(),
            _ => Vec::new(),
        }
    }
}

/// Sum of several signals.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition(pub Vec<ControlSignal>);

impl Drive for Superposition {
    fn value(&self, t: f64) -> f64 {
        self.0.iter().map(|s| s.value(t)).sum()
    }

    fn stage_value(&self, t: f64, step_start: f64) -> f64 {
        self.0.iter().map(|s| s.stage_value(t, step_start)).sum()
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self.0.iter().flat_map(|s| s.breakpoints()).collect();
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }
}

/// Parses `zero`, `constant:F`, `sin:A,ν,φ` and `pwc:t0=f0,t1=f1,…`.
impl FromStr for ControlSignal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = match s.split_once(':') {
            Some((k, r)) => (k.trim(), r.trim()),
            None => (s, ""),
        };
        let num = |v: &str| -> Result<f64> {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidSignal(format!("not a number: `{v}`")))
        };
        match kind {
            "zero" | "0" if rest.is_empty() => Ok(Self::Zero),
            "constant" | "const" => Self::constant(num(rest)?),
            "sin" | "sinusoid" => {
                let vals = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
                match vals[..] {
                    [a, w, phi] => Self::sinusoid(a, w, phi),
                    [a, w] => Self::sinusoid(a, w, 0.0),
                    _ => Err(Error::InvalidSignal(format!("sin expects A,freq[,phase], got `{rest}`"))),
                }
            }
            "pwc" => {
                let steps = rest
                    .split(',')
                    .map(|item| {
                        let (t, f) = item
                            .split_once('=')
                            .ok_or_else(|| Error::InvalidSignal(format!("pwc entry `{item}` is not t=level")))?;
                        Ok((num(t)?, num(f)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Self::piecewise(steps)
            }
            _ => Err(Error::InvalidSignal(format!("unknown signal `{s}`"))),
        }
    }
}

/// Sampled driven motion; `drive[i] = f(times[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivenTrajectory {
    pub times: Vec<f64>,
    pub states: Vec<ClassicalState>,
    pub drive: Vec<f64>,
}

impl DrivenTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn terminal(&self) -> Option<ClassicalState> {
        self.states.last().copied()
    }
}

/// RK4 integration of the driven system from `t = 0` to `t_end`.
pub fn integrate_driven<D: Drive + ?Sized>(
    params: &OscillatorParams,
    s0: &ClassicalState,
    f: &D,
    t_end: f64,
    dt: f64,
) -> Result<DrivenTrajectory> {
    let times = ode::time_grid(t_end, dt, &f.breakpoints())?;
    let states = ode::integrate_on_grid(&times, s0.to_array(), |t, s, t0| {
        affine_rhs(params, s, f.stage_value(t, t0))
    })
    .into_iter()
    .map(ClassicalState::from_array)
    .collect();
    let drive = times.iter().map(|&t| f.value(t)).collect();
    Ok(DrivenTrajectory { times, states, drive })
}

/// Step-response style summary of a driven run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseMetrics {
    pub peak_abs_x: f64,
    /// First grid time after which `x` stays within 1% of its terminal value;
    /// `None` when only the terminal sample itself is inside the band.
    pub settling_time: Option<f64>,
    pub terminal: ClassicalState,
}

/// Relative half-width of the settling band.
pub const SETTLING_BAND: f64 = 0.01;

pub fn response_metrics(traj: &DrivenTrajectory) -> Option<ResponseMetrics> {
    let terminal = traj.terminal()?;
    let peak_abs_x = traj.states.iter().map(|s| s.x.abs()).fold(0.0, f64::max);
    let band = SETTLING_BAND * terminal.x.abs().max(1e-9);
    let last_outside = traj.states.iter().rposition(|s| (s.x - terminal.x).abs() > band);
    let settling_time = match last_outside {
        None => Some(traj.times[0]),
        Some(i) if i + 2 < traj.len() => Some(traj.times[i + 1]),
        Some(_) => None,
    };
    Some(ResponseMetrics { peak_abs_x, settling_time, terminal })
}
