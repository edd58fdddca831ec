//! Damped simple harmonic oscillator, classical and quantized.
//!
//! The crate follows one system, `ẍ + 2γẋ + ω²x = 0` with unit mass, through
//! several equivalent descriptions:
//!
//! * [`classical`]: closed-form and RK4 solutions in phase space `(x, p)`.
//! * [`modes`]: the diagonalizing transform to complex mode variables `z, z*`,
//!   which evolve as pure exponentials `e^{λ∓ t}`.
//! * [`quantum`]: the quantized system with complex Hamiltonian
//!   `ħ(ω₁ − iγ)(a†a + 1/2)` and a γ-independent ground energy, evolved
//!   non-unitarily in a truncated Fock basis.
//! * [`complex_time`]: the same dynamics written as an undamped oscillator
//!   running in complex time `τ = (1 − iγ/ω₁)t`.
//! * [`driven`]: the classical oscillator under an external control field `f(t)`.
//!
//! The [`cli`] module backs the `dampq` binary and its `verify` report.

pub mod classical;
pub mod cli;
pub mod complex_time;
pub mod driven;
mod error;
pub mod modes;
pub mod ode;
pub mod quantum;

pub use classical::{AmplitudePhase, ClassicalState, OscillatorParams, Trajectory};
pub use complex_time::{ComplexTime, EquivalencePoint, TildeSpectrumLine};
pub use driven::{ControlSignal, DrivenTrajectory, ResponseMetrics};
pub use error::{Error, Result};
pub use modes::{EigenData, Mat2, ModePair, TransformPair};
pub use quantum::{EvolutionReport, FockState, SpectrumLine};

pub use num_complex::Complex64;
