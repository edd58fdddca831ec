//! Numerical checks of every identity the library relies on, for one
//! parameter set. Backs the `verify` command.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{
    amplitude_phase_from_state, analytic_solution, integrate_homogeneous, AmplitudePhase, ClassicalState,
    OscillatorParams,
};
use crate::complex_time::{self, complex_time_of, evolve_tau, mode_flow_tau, picture_equivalence_report};
use crate::driven::{integrate_driven, ControlSignal, Superposition};
use crate::modes::{self, eigen_data, from_modes, mode_flow, to_modes, transform_pair, Mat2, ModePair};
use crate::quantum::{self, evolve, naive_spectrum, number_expectation, settling_check, spectrum, FockState};
use crate::Result;

pub const EXACT: f64 = 0.0;
pub const MACHINE: f64 = 1e-12;
pub const FLOW: f64 = 1e-9;
pub const FINITE_DIFF: f64 = 1e-8;
pub const RK4_FINE: f64 = 1e-8;
pub const STEADY_STATE: f64 = 1e-6;
pub const SUPERPOSITION: f64 = 1e-9;
pub const MIN_CONVERGENCE_RATIO: f64 = 8.0;

/// Random states drawn per quantum check.
const STATES: usize = 16;
/// Sample times per trajectory check.
const TIMES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub measured: f64,
    pub bound: Bound,
    pub threshold: f64,
    pub status: Status,
}

impl Check {
    fn at_most(name: &'static str, measured: f64, threshold: f64) -> Self {
        let ok = measured <= threshold;
        Self { name, measured, bound: Bound::AtMost, threshold, status: pass_if(ok) }
    }

    fn at_least(name: &'static str, measured: f64, threshold: f64) -> Self {
        let ok = measured >= threshold;
        Self { name, measured, bound: Bound::AtLeast, threshold, status: pass_if(ok) }
    }

    fn skip(name: &'static str, bound: Bound, threshold: f64) -> Self {
        Self { name, measured: f64::NAN, bound, threshold, status: Status::Skip }
    }

    fn from_result(name: &'static str, r: Result<Check>) -> Check {
        r.unwrap_or(Check {
            name,
            measured: f64::NAN,
            bound: Bound::AtMost,
            threshold: f64::NAN,
            status: Status::Fail,
        })
    }
}

fn pass_if(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

type QuantumCheck = fn(&OscillatorParams, &[FockState], &[f64]) -> Result<Check>;

/// Runs every check. Deterministic for a given `(params, dim, seed)`.
pub fn run_verification(params: &OscillatorParams, dim: usize, seed: u64) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = dim.max(2);
    let states: Vec<FockState> = (0..STATES).map(|_| FockState::random(&mut rng, dim)).collect();
    let phase_points: Vec<ClassicalState> = (0..STATES)
        .map(|_| ClassicalState::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0) * params.omega()))
        .collect();
    let horizon = params.decay_horizon();
    let times: Vec<f64> = (0..TIMES).map(|k| horizon * k as f64 / (TIMES - 1) as f64).collect();

    let mut checks = vec![
        eigen_conjugate_pair(params),
        characteristic_roots(params),
        similarity(params),
        inverse_pair(params),
        determinant_product(params),
        bracket(params),
        bracket_finite_difference(params),
        mode_round_trip(params, &phase_points),
        flow_consistency(params, &phase_points, &times),
        mode_modulus_decay(params, &times),
        Check::from_result("rk4_vs_closed_form", rk4_vs_closed_form(params)),
        Check::from_result("rk4_convergence_ratio", rk4_convergence(params)),
        decay_envelope(params, &times),
        amplitude_phase_round_trip(params, &mut rng),
        spectrum_exact_imaginary(params),
        spectrum_formula(params),
        naive_ground_shift(params),
    ];
    let quantum_checks: [(&'static str, QuantumCheck); 11] = [
        ("norm_decay_formula", norm_decay_formula),
        ("semigroup", semigroup),
        ("norm_monotonicity", norm_monotonicity),
        ("settling_bound", settling_bound),
        ("number_expectation_nonincreasing", number_expectation_monotone),
        ("first_moment_rate", first_moment_rate),
        ("picture_equivalence", picture_equivalence),
        ("conjugate_picture", conjugate_picture),
        ("real_part_of_tau", real_part_of_tau),
        ("mode_flow_tau_equivalence", |p, _, t| mode_flow_tau_equivalence(p, t)),
        ("tilde_spectrum_undamped_limit", |p, _, _| tilde_spectrum_limit(p)),
    ];
    for (name, f) in quantum_checks {
        checks.push(Check::from_result(name, f(params, &states, &times)));
    }
    checks.push(Check::from_result("driven_zero_drive_reduction", zero_drive_reduction(params)));
    checks.push(Check::from_result("driven_constant_steady_state", constant_steady_state(params)));
    checks.push(Check::from_result("driven_superposition", superposition(params)));
    checks.push(Check::from_result("driven_convergence_ratio", driven_convergence(params)));
    checks
}

fn eigen_conjugate_pair(params: &OscillatorParams) -> Check {
    let e = eigen_data(params);
    let dev = (e.lambda_plus - e.lambda_minus.conj())
        .norm()
        .max((e.lambda_minus.re + params.gamma()).abs())
        .max((e.lambda_plus.im - params.omega1()).abs());
    Check::at_most("eigen_conjugate_pair", dev, EXACT)
}

fn characteristic_roots(params: &OscillatorParams) -> Check {
    let e = eigen_data(params);
    let w2 = params.omega() * params.omega();
    let dev = [e.lambda_minus, e.lambda_plus]
        .iter()
        .map(|&l| (l * l + 2.0 * params.gamma() * l + w2).norm() / w2)
        .fold(0.0, f64::max);
    Check::at_most("characteristic_roots_relative", dev, MACHINE)
}

fn similarity(params: &OscillatorParams) -> Check {
    let tp = transform_pair(params);
    let a = Mat2::from_real(params.companion_matrix());
    Check::at_most("similarity_UDU^-1_eq_A", tp.reconstruct(&eigen_data(params)).max_abs_diff(&a), MACHINE)
}

fn inverse_pair(params: &OscillatorParams) -> Check {
    let tp = transform_pair(params);
    let id = Mat2::identity();
    let dev = (tp.forward * tp.inverse).max_abs_diff(&id).max((tp.inverse * tp.forward).max_abs_diff(&id));
    Check::at_most("inverse_pair_UU^-1_eq_I", dev, MACHINE)
}

fn determinant_product(params: &OscillatorParams) -> Check {
    let tp = transform_pair(params);
    Check::at_most("det_U_det_U^-1_eq_1", (tp.forward.det() * tp.inverse.det() - 1.0).norm(), MACHINE)
}

fn bracket(params: &OscillatorParams) -> Check {
    let dev = (modes::poisson_bracket_check(params) - Complex64::i()).norm();
    Check::at_most("poisson_bracket_eq_i", dev, MACHINE)
}

fn bracket_finite_difference(params: &OscillatorParams) -> Check {
    let h = 1e-3;
    let at = |x: f64, p: f64| to_modes(params, &ClassicalState::new(x, p));
    let (xp, xm, pp, pm) = (at(h, 0.0), at(-h, 0.0), at(0.0, h), at(0.0, -h));
    let dz_dx = (xp.z - xm.z) / (2.0 * h);
    let dzc_dx = (xp.z_conj - xm.z_conj) / (2.0 * h);
    let dz_dp = (pp.z - pm.z) / (2.0 * h);
    let dzc_dp = (pp.z_conj - pm.z_conj) / (2.0 * h);
    let b = dzc_dx * dz_dp - dz_dx * dzc_dp;
    Check::at_most("poisson_bracket_finite_difference", (b - Complex64::i()).norm(), FINITE_DIFF)
}

fn mode_round_trip(params: &OscillatorParams, points: &[ClassicalState]) -> Check {
    let dev = points
        .iter()
        .map(|s| match from_modes(params, &to_modes(params, s)) {
            Ok(back) => back.max_abs_diff(s),
            Err(_) => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    Check::at_most("mode_round_trip", dev, MACHINE)
}

fn flow_consistency(params: &OscillatorParams, points: &[ClassicalState], times: &[f64]) -> Check {
    let mut dev = 0.0f64;
    for s0 in points {
        let ap = amplitude_phase_from_state(params, s0);
        let m0 = to_modes(params, s0);
        for &t in times {
            let via_modes = from_modes(params, &mode_flow(params, &m0, t));
            let d = match via_modes {
                Ok(s) => s.max_abs_diff(&analytic_solution(params, &ap, t)),
                Err(_) => f64::INFINITY,
            };
            dev = dev.max(d);
        }
    }
    Check::at_most("mode_flow_matches_closed_form", dev, FLOW)
}

fn mode_modulus_decay(params: &OscillatorParams, times: &[f64]) -> Check {
    let m0 = ModePair::from_z(Complex64::new(0.6, -0.8));
    let dev = times
        .iter()
        .map(|&t| {
            let ratio = mode_flow(params, &m0, t).z.norm() / m0.z.norm();
            (ratio / (-params.gamma() * t).exp() - 1.0).abs()
        })
        .fold(0.0, f64::max);
    Check::at_most("mode_modulus_decay_relative", dev, MACHINE)
}

/// Horizon for fine RK4 runs, capped so the check stays cheap for weak damping.
fn rk4_horizon(params: &OscillatorParams) -> f64 {
    params.decay_horizon().min(100.0 / params.omega().max(1.0))
}

fn rk4_vs_closed_form(params: &OscillatorParams) -> Result<Check> {
    let s0 = ClassicalState::new(0.0, params.omega1());
    let ap = amplitude_phase_from_state(params, &s0);
    let traj = integrate_homogeneous(params, &s0, rk4_horizon(params), 1e-4)?;
    Ok(Check::at_most("rk4_vs_closed_form", traj.max_error_against(params, &ap), RK4_FINE))
}

fn rk4_convergence(params: &OscillatorParams) -> Result<Check> {
    let s0 = ClassicalState::new(1.0, 0.0);
    let ap = amplitude_phase_from_state(params, &s0);
    let t_end = params.decay_horizon().min(20.0 * std::f64::consts::PI / params.omega());
    let dt = 0.1 / params.omega();
    let coarse = integrate_homogeneous(params, &s0, t_end, dt)?.max_error_against(params, &ap);
    let fine = integrate_homogeneous(params, &s0, t_end, dt / 2.0)?.max_error_against(params, &ap);
    Ok(Check::at_least("rk4_convergence_ratio", coarse / fine, MIN_CONVERGENCE_RATIO))
}

fn decay_envelope(params: &OscillatorParams, times: &[f64]) -> Check {
    let ap = AmplitudePhase::new(1.3, 0.4);
    let w1 = params.omega1();
    let dev = times
        .iter()
        .map(|&t| {
            let s = analytic_solution(params, &ap, t);
            let lhs = s.x * s.x + ((s.p + params.gamma() * s.x) / w1).powi(2);
            let rhs = ap.amplitude().powi(2) * (-2.0 * params.gamma() * t).exp();
            (lhs / rhs - 1.0).abs()
        })
        .fold(0.0, f64::max);
    Check::at_most("decay_envelope_relative", dev, MACHINE)
}

fn amplitude_phase_round_trip(params: &OscillatorParams, rng: &mut ChaCha8Rng) -> Check {
    let mut dev = 0.0f64;
    for _ in 0..STATES {
        let ap = AmplitudePhase::new(rng.gen_range(0.1..3.0), rng.gen_range(0.0..std::f64::consts::TAU));
        let back = amplitude_phase_from_state(params, &analytic_solution(params, &ap, 0.0));
        let dphase = (back.phase() - ap.phase()).abs();
        let dphase = dphase.min(std::f64::consts::TAU - dphase);
        dev = dev.max((back.amplitude() - ap.amplitude()).abs()).max(dphase);
    }
    Check::at_most("amplitude_phase_round_trip", dev, MACHINE)
}

fn spectrum_exact_imaginary(params: &OscillatorParams) -> Check {
    let dev = spectrum(params, 64)
        .iter()
        .map(|l| (l.energy.im - (0.0 - params.hbar() * params.gamma() * l.n as f64)).abs())
        .fold(0.0, f64::max);
    let ground_real = spectrum(params, 0)[0].energy.im == 0.0;
    Check::at_most("spectrum_imaginary_parts_exact", if ground_real { dev } else { f64::INFINITY }, EXACT)
}

fn spectrum_formula(params: &OscillatorParams) -> Check {
    let coeff = params.hbar() * Complex64::new(params.omega1(), -params.gamma());
    let e0 = params.hbar() * params.omega() / 2.0;
    let dev = spectrum(params, 64)
        .iter()
        .map(|l| {
            let expected = coeff * l.n as f64 + e0;
            (l.energy - expected).norm() / expected.norm()
        })
        .fold(0.0, f64::max);
    Check::at_most("spectrum_formula_relative", dev, MACHINE)
}

fn naive_ground_shift(params: &OscillatorParams) -> Check {
    let hbar = params.hbar();
    let expected = hbar * Complex64::new(params.omega1(), -params.gamma()) / 2.0 - hbar * params.omega() / 2.0;
    let diff = naive_spectrum(params, 0)[0].energy - spectrum(params, 0)[0].energy;
    Check::at_most("naive_minus_corrected_ground", (diff - expected).norm(), MACHINE)
}

fn norm_decay_formula(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    let mut dev = 0.0f64;
    for psi in states {
        for &t in times {
            let r = evolve(params, psi, t)?;
            let expected: f64 = psi
                .amplitudes()
                .iter()
                .enumerate()
                .map(|(n, a)| a.norm_sqr() * (-2.0 * params.hbar() * params.gamma() * n as f64 * t).exp())
                .sum();
            dev = dev.max((r.norm_sq - expected).abs());
        }
    }
    Ok(Check::at_most("norm_decay_formula", dev, MACHINE))
}

fn semigroup(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    let mut dev = 0.0f64;
    for psi in states {
        for w in times.windows(2) {
            let (t1, t2) = (w[0], w[1] - w[0]);
            let two_step = evolve(params, &evolve(params, psi, t1)?.state, t2)?;
            let one_step = evolve(params, psi, t1 + t2)?;
            dev = dev.max(two_step.state.max_coeff_diff(&one_step.state)?);
        }
    }
    Ok(Check::at_most("semigroup", dev, MACHINE))
}

fn norm_monotonicity(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    // γ > 0: number of non-decreasing steps while the excited population is
    // still resolvable. γ = 0: worst deviation from 1.
    let mut dev = 0.0f64;
    for psi in states {
        let ground = psi.amplitude(0).norm_sqr();
        let norms = times
            .iter()
            .map(|&t| evolve(params, psi, t).map(|r| r.norm_sq))
            .collect::<Result<Vec<f64>>>()?;
        if params.gamma() > 0.0 {
            let violations = norms
                .windows(2)
                .filter(|w| w[0] - ground > 1e-10 * w[0] && !(w[1] < w[0]))
                .count();
            dev += violations as f64;
        } else {
            dev = dev.max(norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max));
        }
    }
    let tol = if params.gamma() > 0.0 { EXACT } else { MACHINE };
    Ok(Check::at_most("norm_monotonicity", dev, tol))
}

fn settling_bound(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    if params.gamma() <= 0.0 {
        return Ok(Check::skip("settling_bound", Bound::AtMost, EXACT));
    }
    let mut excess = f64::NEG_INFINITY;
    for psi in states {
        for &t in times {
            let c = settling_check(params, psi, t)?;
            // the normalized-state bound e^{−ħγt} as well as the tighter one
            let loose = (-(params.hbar() * params.gamma() * t)).exp();
            excess = excess.max(c.distance - c.bound).max(c.distance - loose);
        }
    }
    Ok(Check::at_most("settling_bound", excess.max(0.0), 1e-15))
}

fn number_expectation_monotone(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    let mut dev = 0.0f64;
    for psi in states {
        let mut prev = f64::INFINITY;
        for &t in times {
            let n = number_expectation(&evolve(params, psi, t)?)?;
            if params.gamma() > 0.0 {
                dev = dev.max(n - prev);
            } else if prev.is_finite() {
                dev = dev.max((n - prev).abs());
            }
            prev = n;
        }
    }
    Ok(Check::at_most("number_expectation_nonincreasing", dev.max(0.0), MACHINE))
}

fn first_moment_rate(params: &OscillatorParams, _states: &[FockState], _times: &[f64]) -> Result<Check> {
    let psi = FockState::normalized(vec![Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.9)])?.0;
    let (t1, t2) = (0.0, params.decay_horizon() / 20.0);
    let c1 = quantum::first_moment_coefficient(&evolve(params, &psi, t1)?.state).norm();
    let c2 = quantum::first_moment_coefficient(&evolve(params, &psi, t2)?.state).norm();
    let rate = -(c2 / c1).ln() / (t2 - t1);
    let mut dev = (rate - params.hbar() * params.gamma()).abs();
    if params.hbar() == 1.0 {
        let m0 = ModePair::from_z(Complex64::new(1.0, 0.0));
        let classical = -(mode_flow(params, &m0, t2).z.norm()).ln() / t2;
        dev = dev.max((rate - classical).abs());
    }
    Ok(Check::at_most("first_moment_rate", dev, FLOW))
}

fn picture_equivalence(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    let dev = states
        .iter()
        .flat_map(|psi| picture_equivalence_report(params, psi, times))
        .map(|p| p.max_deviation)
        .fold(0.0, f64::max);
    Ok(Check::at_most("picture_equivalence", dev, complex_time::EQUIVALENCE_TOL))
}

fn conjugate_picture(params: &OscillatorParams, states: &[FockState], times: &[f64]) -> Result<Check> {
    let mut dev = 0.0f64;
    for psi in states {
        for &t in times {
            let ct = complex_time_of(params, t)?;
            let forward = evolve_tau(params, psi, t)?.state.conj();
            let ground = Complex64::from_polar(1.0, t * quantum::ground_energy(params));
            let rate = Complex64::new(0.0, params.hbar() * params.omega1());
            for (n, a) in psi.conj().amplitudes().iter().enumerate() {
                let b = ground * (rate * ct.tau_conj() * n as f64).exp() * a;
                dev = dev.max((b - forward.amplitude(n)).norm());
            }
        }
    }
    Ok(Check::at_most("conjugate_picture", dev, MACHINE))
}

fn real_part_of_tau(params: &OscillatorParams, _states: &[FockState], times: &[f64]) -> Result<Check> {
    let mut dev = 0.0f64;
    for &t in times {
        let ct = complex_time_of(params, t)?;
        dev = dev.max((ct.tau.re - t).abs());
        dev = dev.max((ct.tau.im + params.gamma() / params.omega1() * t).abs());
    }
    Ok(Check::at_most("real_part_of_tau", dev, EXACT))
}

fn mode_flow_tau_equivalence(params: &OscillatorParams, times: &[f64]) -> Result<Check> {
    let m0 = ModePair::from_z(Complex64::new(-0.4, 1.2));
    let mut dev = 0.0f64;
    for &t in times {
        dev = dev.max(mode_flow_tau(params, &m0, t)?.max_abs_diff(&mode_flow(params, &m0, t)));
    }
    Ok(Check::at_most("mode_flow_tau_equivalence", dev, MACHINE))
}

fn tilde_spectrum_limit(params: &OscillatorParams) -> Result<Check> {
    let undamped = OscillatorParams::new(params.omega(), 0.0, params.hbar())?;
    let dev = complex_time::tilde_spectrum(&undamped, 64)
        .iter()
        .map(|l| {
            let expected = (l.n as f64 + 0.5) * params.hbar() * params.omega();
            (l.energy - expected).abs() / expected
        })
        .fold(0.0, f64::max);
    Ok(Check::at_most("tilde_spectrum_undamped_limit", dev, 1e-15))
}

fn zero_drive_reduction(params: &OscillatorParams) -> Result<Check> {
    let s0 = ClassicalState::new(0.0, params.omega1());
    let t_end = rk4_horizon(params).min(10.0);
    let free = integrate_homogeneous(params, &s0, t_end, 1e-3)?;
    let driven = integrate_driven(params, &s0, &ControlSignal::Zero, t_end, 1e-3)?;
    let dev = if free.times != driven.times {
        f64::INFINITY
    } else {
        free.states.iter().zip(&driven.states).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    };
    Ok(Check::at_most("driven_zero_drive_reduction", dev, EXACT))
}

fn constant_steady_state(params: &OscillatorParams) -> Result<Check> {
    if params.gamma() <= 0.0 {
        return Ok(Check::skip("driven_constant_steady_state", Bound::AtMost, STEADY_STATE));
    }
    let force = params.omega() * params.omega();
    let t_end = 20.0 / params.gamma();
    let dt = (1e-3 / params.omega().max(1.0)).max(t_end / 2e5);
    let traj = integrate_driven(params, &ClassicalState::default(), &ControlSignal::constant(force)?, t_end, dt)?;
    let x = traj.terminal().map(|s| s.x).unwrap_or(f64::NAN);
    Ok(Check::at_most("driven_constant_steady_state", (x - 1.0).abs(), STEADY_STATE))
}

fn superposition(params: &OscillatorParams) -> Result<Check> {
    let f1 = ControlSignal::sinusoid(1.0, params.omega1(), 0.3)?;
    let f2 = ControlSignal::piecewise(vec![(0.5, 2.0), (1.75, -1.0)])?;
    let both = Superposition(vec![f1.clone(), f2.clone()]);
    let rest = ClassicalState::default();
    // binary step so the breakpoints are already grid points and all runs share one grid
    let (t_end, dt) = (5.0, 1.0 / 1024.0);
    let a = integrate_driven(params, &rest, &f1, t_end, dt)?;
    let b = integrate_driven(params, &rest, &f2, t_end, dt)?;
    let ab = integrate_driven(params, &rest, &both, t_end, dt)?;
    if a.times != ab.times || b.times != ab.times {
        return Ok(Check::at_most("driven_superposition", f64::INFINITY, SUPERPOSITION));
    }
    let dev = ab
        .states
        .iter()
        .zip(a.states.iter().zip(&b.states))
        .map(|(s, (sa, sb))| s.max_abs_diff(&ClassicalState::new(sa.x + sb.x, sa.p + sb.p)))
        .fold(0.0, f64::max);
    Ok(Check::at_most("driven_superposition", dev, SUPERPOSITION))
}

fn driven_convergence(params: &OscillatorParams) -> Result<Check> {
    let f = ControlSignal::sinusoid(params.omega().powi(2), params.omega1(), 0.0)?;
    let s0 = ClassicalState::new(0.5, 0.0);
    let t_end = 10.0 / params.omega();
    let dt = 0.1 / params.omega();
    let reference = integrate_driven(params, &s0, &f, t_end, dt / 8.0)?;
    let err = |h: f64| -> Result<f64> {
        let run = integrate_driven(params, &s0, &f, t_end, h)?;
        // compare on the shared coarse grid points
        let stride = ((dt / 8.0).recip() * h).round() as usize;
        Ok(run
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| s.max_abs_diff(&reference.states[(i * stride).min(reference.len() - 1)]))
            .fold(0.0, f64::max))
    };
    let ratio = err(dt)? / err(dt / 2.0)?;
    Ok(Check::at_least("driven_convergence_ratio", ratio, MIN_CONVERGENCE_RATIO))
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}
