use std::f64::consts::TAU;

use dampq::classical::{
    amplitude_phase_from_state, analytic_solution, integrate_homogeneous, AmplitudePhase, ClassicalState,
};
use dampq::complex_time::{complex_time_of, evolve_tau, mode_flow_tau, tilde_spectrum};
use dampq::driven::{integrate_driven, ControlSignal, Superposition};
use dampq::modes::{eigen_data, from_modes, mode_flow, poisson_bracket_check, to_modes, transform_pair, Mat2, ModePair};
use dampq::quantum::{evolve, first_moment_coefficient, number_expectation, settling_check, spectrum};
use dampq::{Complex64, FockState, OscillatorParams};
use proptest::prelude::*;
use rand::SeedableRng;

fn params_strategy() -> impl Strategy<Value = OscillatorParams> {
    (0.2f64..5.0, 0.0f64..0.999, 0.1f64..3.0)
        .prop_map(|(omega, ratio, hbar)| OscillatorParams::new(omega, omega * ratio, hbar).unwrap())
}

fn damped_params_strategy() -> impl Strategy<Value = OscillatorParams> {
    (0.2f64..5.0, 0.05f64..0.999, 0.1f64..3.0)
        .prop_map(|(omega, ratio, hbar)| OscillatorParams::new(omega, omega * ratio, hbar).unwrap())
}

fn state_strategy(max_dim: usize) -> impl Strategy<Value = FockState> {
    (1..=max_dim, any::<u64>()).prop_map(|(dim, seed)| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        FockState::random(&mut rng, dim)
    })
}

fn angle_diff(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decay_envelope(p in params_strategy(), a in 0.01f64..5.0, theta in 0.0f64..TAU, t in 0.0f64..20.0) {
        let ap = AmplitudePhase::new(a, theta);
        let s = analytic_solution(&p, &ap, t);
        let lhs = s.x * s.x + ((s.p + p.gamma() * s.x) / p.omega1()).powi(2);
        let rhs = a * a * (-2.0 * p.gamma() * t).exp();
        prop_assume!(rhs > 1e-250);
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_phase_round_trip(p in params_strategy(), a in 1e-3f64..10.0, theta in 0.0f64..TAU) {
        let ap = AmplitudePhase::new(a, theta);
        let back = amplitude_phase_from_state(&p, &analytic_solution(&p, &ap, 0.0));
        prop_assert!((back.amplitude() - a).abs() < 1e-12 * a.max(1.0));
        prop_assert!(angle_diff(back.phase(), theta) < 1e-12);
        prop_assert!(back.phase() >= 0.0 && back.phase() < TAU);
    }

    #[test]
    fn eigen_pair_is_conjugate(p in params_strategy()) {
        let e = eigen_data(&p);
        prop_assert_eq!(e.lambda_plus, e.lambda_minus.conj());
        prop_assert_eq!(e.lambda_minus.re, -p.gamma());
        prop_assert_eq!(e.lambda_plus.im, p.omega1());
    }

    #[test]
    fn similarity_and_bracket(p in params_strategy()) {
        let tp = transform_pair(&p);
        let a = Mat2::from_real(p.companion_matrix());
        prop_assert!(tp.reconstruct(&eigen_data(&p)).max_abs_diff(&a) < 1e-12);
        prop_assert!((poisson_bracket_check(&p) - Complex64::i()).norm() < 1e-12);
    }

    #[test]
    fn mode_flow_matches_closed_form(
        p in params_strategy(), x in -2.0f64..2.0, v in -2.0f64..2.0, t in 0.0f64..10.0
    ) {
        let s0 = ClassicalState::new(x, v);
        let ap = amplitude_phase_from_state(&p, &s0);
        let m = mode_flow(&p, &to_modes(&p, &s0), t);
        let s = from_modes(&p, &m).unwrap();
        prop_assert!(s.max_abs_diff(&analytic_solution(&p, &ap, t)) < 1e-9);
        let ratio = m.z.norm() / to_modes(&p, &s0).z.norm();
        prop_assume!(ratio.is_finite());
        prop_assert!((ratio / (-p.gamma() * t).exp() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mode_round_trip(p in params_strategy(), x in -10.0f64..10.0, v in -10.0f64..10.0) {
        let s = ClassicalState::new(x, v);
        prop_assert!(from_modes(&p, &to_modes(&p, &s)).unwrap().max_abs_diff(&s) < 1e-12 * (1.0 + x.abs() + v.abs()));
    }

    #[test]
    fn mode_flow_tau_equals_mode_flow(p in params_strategy(), re in -2.0f64..2.0, im in -2.0f64..2.0, t in 0.0f64..10.0) {
        let m0 = ModePair::from_z(Complex64::new(re, im));
        let a = mode_flow_tau(&p, &m0, t).unwrap();
        let b = mode_flow(&p, &m0, t);
        prop_assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn tau_real_part_is_t(p in params_strategy(), t in 0.0f64..1e3) {
        let ct = complex_time_of(&p, t).unwrap();
        prop_assert_eq!(ct.tau.re, t);
        prop_assert!(ct.tau.im <= 0.0);
    }

    #[test]
    fn spectrum_construction(p in params_strategy()) {
        for line in spectrum(&p, 64) {
            prop_assert_eq!(line.energy.im, 0.0 - p.hbar() * p.gamma() * line.n as f64);
        }
        prop_assert_eq!(spectrum(&p, 0)[0].energy.im, 0.0);
    }

    #[test]
    fn tilde_spectrum_real_increasing(p in params_strategy()) {
        let lines = tilde_spectrum(&p, 32);
        prop_assert!(lines.windows(2).all(|w| w[1].energy > w[0].energy));
        let undamped = OscillatorParams::new(p.omega(), 0.0, p.hbar()).unwrap();
        for l in tilde_spectrum(&undamped, 32) {
            let expected = (l.n as f64 + 0.5) * p.hbar() * p.omega();
            prop_assert!((l.energy - expected).abs() <= 1e-15 * expected);
        }
    }

    #[test]
    fn semigroup(p in params_strategy(), psi in state_strategy(64), t1 in 0.0f64..5.0, t2 in 0.0f64..5.0) {
        let two = evolve(&p, &evolve(&p, &psi, t1).unwrap().state, t2).unwrap();
        let one = evolve(&p, &psi, t1 + t2).unwrap();
        prop_assert!(two.state.max_coeff_diff(&one.state).unwrap() < 1e-12);
    }

    #[test]
    fn norm_strictly_decreasing(p in damped_params_strategy(), psi in state_strategy(16), t in 0.0f64..2.0, dt in 0.01f64..1.0) {
        prop_assume!(psi.dim() > 1);
        let a = evolve(&p, &psi, t).unwrap();
        let b = evolve(&p, &psi, t + dt).unwrap();
        let ground = psi.amplitude(0).norm_sqr();
        prop_assume!(a.norm_sq - ground > 1e-10);
        prop_assert!(b.norm_sq < a.norm_sq);
        prop_assert!(number_expectation(&b).unwrap() <= number_expectation(&a).unwrap() + 1e-15);
    }

    #[test]
    fn undamped_norm_conserved(omega in 0.2f64..5.0, hbar in 0.1f64..3.0, psi in state_strategy(64), t in 0.0f64..100.0) {
        let p = OscillatorParams::new(omega, 0.0, hbar).unwrap();
        prop_assert!((evolve(&p, &psi, t).unwrap().norm_sq - 1.0).abs() < 1e-12);
    }

    #[test]
    fn settling_bound(p in damped_params_strategy(), psi in state_strategy(32), t in 0.0f64..10.0) {
        let c = settling_check(&p, &psi, t).unwrap();
        prop_assert!(c.distance <= c.bound + 1e-15);
        prop_assert!(c.distance <= (-(p.hbar() * p.gamma() * t)).exp() + 1e-15);
    }

    #[test]
    fn first_moment_decays_at_hbar_gamma(p in damped_params_strategy(), psi in state_strategy(8), t in 0.01f64..3.0) {
        let c0 = first_moment_coefficient(&psi).norm();
        prop_assume!(c0 > 1e-6);
        let ct = first_moment_coefficient(&evolve(&p, &psi, t).unwrap().state).norm();
        let rate = -(ct / c0).ln() / t;
        prop_assert!((rate - p.hbar() * p.gamma()).abs() < 1e-9);
    }

    // e^{−iτħω₁n} = e^{−itħ(ω₁−iγ)n}, both sides with the library's own complex exp
    #[test]
    fn complex_time_identity(p in damped_params_strategy(), n in 0usize..=64, frac in 0.0f64..1.0) {
        let t = frac * 10.0 / p.gamma();
        let tau = complex_time_of(&p, t).unwrap().tau;
        let lhs = (Complex64::new(0.0, -1.0) * tau * (p.hbar() * p.omega1() * n as f64)).exp();
        let rhs = (Complex64::new(0.0, -t) * (p.hbar() * Complex64::new(p.omega1(), -p.gamma()) * n as f64)).exp();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn pictures_agree(p in params_strategy(), psi in state_strategy(64), frac in 0.0f64..1.0) {
        let t = frac * p.decay_horizon();
        let a = evolve(&p, &psi, t).unwrap();
        let b = evolve_tau(&p, &psi, t).unwrap();
        prop_assert!(a.state.max_coeff_diff(&b.state).unwrap() < 1e-12);
    }

    // evolving the conjugated coefficients with e^{+iτ*H̃} (and phase e^{+itħω/2})
    // gives the conjugate of the τ evolution
    #[test]
    fn conjugate_picture(p in params_strategy(), psi in state_strategy(32), frac in 0.0f64..1.0) {
        let t = frac * p.decay_horizon();
        let ct = complex_time_of(&p, t).unwrap();
        let forward = evolve_tau(&p, &psi, t).unwrap().state.conj();
        let phase = Complex64::from_polar(1.0, t * p.hbar() * p.omega() / 2.0);
        for (n, a) in psi.conj().amplitudes().iter().enumerate() {
            let b = phase * (Complex64::new(0.0, p.hbar() * p.omega1()) * ct.tau_conj() * n as f64).exp() * a;
            prop_assert!((b - forward.amplitude(n)).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rk4_tracks_closed_form(
        omega in 0.5f64..5.0, ratio in 0.1f64..0.99, a in 0.1f64..2.0, theta in 0.0f64..TAU, dt in 5e-4f64..1e-3
    ) {
        let p = OscillatorParams::unit_hbar(omega, omega * ratio).unwrap();
        let ap = AmplitudePhase::new(a, theta);
        let s0 = analytic_solution(&p, &ap, 0.0);
        let traj = integrate_homogeneous(&p, &s0, p.decay_horizon().min(40.0), dt).unwrap();
        prop_assert!(traj.max_error_against(&p, &ap) < 1e-6);
    }

    #[test]
    fn rk4_fourth_order(omega in 0.5f64..5.0, ratio in 0.0f64..0.99) {
        let p = OscillatorParams::unit_hbar(omega, omega * ratio).unwrap();
        let s0 = ClassicalState::new(1.0, 0.0);
        let ap = amplitude_phase_from_state(&p, &s0);
        let t_end = p.decay_horizon().min(10.0);
        let dt = 0.1 / omega;
        let e1 = integrate_homogeneous(&p, &s0, t_end, dt).unwrap().max_error_against(&p, &ap);
        let e2 = integrate_homogeneous(&p, &s0, t_end, dt / 2.0).unwrap().max_error_against(&p, &ap);
        prop_assert!(e1 / e2 >= 8.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn driven_superposition(
        omega in 0.5f64..5.0, ratio in 0.0f64..0.99, amp in -3.0f64..3.0, freq in 0.0f64..5.0, level in -3.0f64..3.0
    ) {
        let p = OscillatorParams::unit_hbar(omega, omega * ratio).unwrap();
        let f1 = ControlSignal::sinusoid(amp, freq, 0.0).unwrap();
        let f2 = ControlSignal::piecewise(vec![(0.25, level), (1.5, -level)]).unwrap();
        let rest = ClassicalState::default();
        let dt = 1.0 / 256.0;
        let a = integrate_driven(&p, &rest, &f1, 3.0, dt).unwrap();
        let b = integrate_driven(&p, &rest, &f2, 3.0, dt).unwrap();
        let ab = integrate_driven(&p, &rest, &Superposition(vec![f1, f2]), 3.0, dt).unwrap();
        prop_assert_eq!(&a.times, &ab.times);
        for ((s, sa), sb) in ab.states.iter().zip(&a.states).zip(&b.states) {
            prop_assert!((s.x - sa.x - sb.x).abs() < 1e-9);
            prop_assert!((s.p - sa.p - sb.p).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_drive_is_homogeneous(p in params_strategy(), x in -1.0f64..1.0, v in -1.0f64..1.0, dt in 1e-3f64..0.1) {
        let s0 = ClassicalState::new(x, v);
        let free = integrate_homogeneous(&p, &s0, 2.0, dt).unwrap();
        let driven = integrate_driven(&p, &s0, &ControlSignal::Zero, 2.0, dt).unwrap();
        prop_assert_eq!(free.times, driven.times);
        prop_assert_eq!(free.states, driven.states);
    }
}

/// Halving dt against a dt/8 reference run, for a smooth and a switched drive.
#[test]
fn driven_fourth_order_convergence() {
    let p = OscillatorParams::unit_hbar(3.0, 0.4).unwrap();
    let s0 = ClassicalState::new(0.2, -0.1);
    let signals = [ControlSignal::sinusoid(2.0, 1.7, 0.4).unwrap(), "pwc:0=1,1.5=-2,3=0.5".parse().unwrap()];
    for f in signals {
        let dt = 0.05;
        let t_end = 6.0;
        let reference = integrate_driven(&p, &s0, &f, t_end, dt / 8.0).unwrap();
        let err = |h: f64| {
            let run = integrate_driven(&p, &s0, &f, t_end, h).unwrap();
            run.times
                .iter()
                .zip(&run.states)
                .map(|(t, s)| {
                    let i = reference.times.iter().position(|r| (r - t).abs() < 1e-12).unwrap();
                    s.max_abs_diff(&reference.states[i])
                })
                .fold(0.0, f64::max)
        };
        let ratio = err(dt) / err(dt / 2.0);
        assert!(ratio >= 8.0, "{f:?}: ratio {ratio}");
    }
}
