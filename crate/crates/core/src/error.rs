use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("omega must be > 0, got {0}")]
    NonPositiveOmega(f64),

    #[error("gamma must be >= 0, got {0}")]
    NegativeGamma(f64),

    #[error("hbar must be > 0, got {0}")]
    NonPositiveHbar(f64),

    #[error("critically damped oscillator (omega == gamma == {0}) is not supported")]
    CriticallyDamped(f64),

    #[error("overdamped oscillator (omega = {omega} < gamma = {gamma}) is not supported")]
    Overdamped { omega: f64, gamma: f64 },

    #[error("invalid time step: t_end = {t_end}, dt = {dt} (need t_end > 0 and 0 < dt <= t_end)")]
    InvalidStep { t_end: f64, dt: f64 },

    #[error("time must be finite and >= 0, got {0}")]
    NegativeTime(f64),

    #[error("mode pair is not a conjugate pair: |z* - conj(z)| = {0:e}")]
    InconsistentModePair(f64),

    #[error("Fock state has no nonzero amplitude")]
    ZeroState,

    #[error("Fock state amplitude {index} is not finite")]
    NonFiniteAmplitude { index: usize },

    #[error("Fock dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state norm {0:e} underflowed; the state is numerically extinct")]
    ExtinctState(f64),

    #[error("operation requires gamma > 0")]
    Undamped,

    #[error("piecewise breakpoints must be strictly increasing (at index {0})")]
    UnorderedBreakpoints(usize),

    #[error("invalid control signal parameter: {0}")]
    InvalidSignal(String),

    #[error("{0}")]
    Parse(String),
}
