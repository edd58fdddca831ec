//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on usage or validation errors, 2 when a
//! verification check fails.

pub mod output;
pub mod state;
pub mod verify;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::classical::{self, amplitude_phase_from_state, analytic_solution, ClassicalState, OscillatorParams};
use crate::complex_time::{complex_time_of, picture_equivalence_report};
use crate::driven::{integrate_driven, response_metrics, ControlSignal};
use crate::quantum::{self, evolve, naive_spectrum, number_expectation, spectrum};
use crate::{ode, Error};

use output::{Cell, Fields, Format, Report, Table};
use state::SparseState;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;

/// Seed for the random states used by `verify`.
pub const DEFAULT_SEED: u64 = 20070123;

#[derive(Debug, Parser)]
#[command(name = "dampq", version, about = "Damped oscillator: classical, complex-Hamiltonian and complex-time dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complex energy levels E_n = ħ(ω₁ − iγ)n + ħω/2.
    Spectrum {
        #[command(flatten)]
        phys: PhysArgs,
        #[arg(long)]
        n_max: usize,
        /// Also list the uncorrected (non-physical) levels ħ(ω₁ − iγ)(n + 1/2).
        #[arg(long)]
        naive: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// RK4 trajectory of the free oscillator next to the closed form.
    Classical {
        #[command(flatten)]
        phys: PhysArgs,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p0: f64,
        #[command(flatten)]
        step: StepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Non-unitary evolution of a Fock state under the complex Hamiltonian.
    Evolve {
        #[command(flatten)]
        phys: PhysArgs,
        #[command(flatten)]
        fock: FockArgs,
        #[command(flatten)]
        step: StepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare complex-Hamiltonian and complex-time evolution.
    Equivalence {
        #[command(flatten)]
        phys: PhysArgs,
        #[command(flatten)]
        fock: FockArgs,
        /// Comma-separated sample times; alternative to --t-end/--dt.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        times: Option<Vec<f64>>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Classical oscillator driven by a control signal f(t).
    Driven {
        #[command(flatten)]
        phys: PhysArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        p0: f64,
        /// zero | constant:F | sin:A,freq,phase | pwc:t0=f0,t1=f1,...
        #[arg(long)]
        signal: String,
        #[command(flatten)]
        step: StepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quantum evolution at t_end over a grid of damping rates.
    Sweep {
        #[arg(long)]
        omega: f64,
        /// Comma-separated list, or start:stop:count.
        #[arg(long)]
        gammas: String,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[command(flatten)]
        fock: FockArgs,
        #[arg(long)]
        t_end: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check every identity numerically; exit 2 on any failure.
    Verify {
        #[command(flatten)]
        phys: PhysArgs,
        /// Fock dimension of the random test states.
        #[arg(long, default_value_t = 32)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct PhysArgs {
    #[arg(long)]
    pub omega: f64,
    #[arg(long)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
}

impl PhysArgs {
    fn params(&self) -> crate::Result<OscillatorParams> {
        OscillatorParams::new(self.omega, self.gamma, self.hbar)
    }
}

#[derive(Debug, Args)]
pub struct StepArgs {
    #[arg(long)]
    pub t_end: f64,
    #[arg(long)]
    pub dt: f64,
}

#[derive(Debug, Args)]
pub struct FockArgs {
    /// Sparse initial state "index:re[:im],...", normalized before use.
    #[arg(long)]
    pub state: String,
    /// Fock truncation; defaults to the highest listed index + 1.
    #[arg(long)]
    pub dim: Option<usize>,
}

impl FockArgs {
    fn build(&self) -> crate::Result<(quantum::FockState, f64)> {
        SparseState::parse(&self.state)?.build(self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OutputArgs {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

/// Outcome of a command before it is written.
struct Outcome {
    report: Report,
    /// Extra stderr diagnostics.
    notes: Vec<String>,
    verification_failed: bool,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let out_args = cli.command.output_args();
    let outcome = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    let format = out_args.format();
    if format == Format::Csv && !outcome.report.summary.is_empty() {
        let _ = stderr.write_all(outcome.report.summary_lines().as_bytes());
    }
    let written = match &out_args.out {
        Some(path) => File::create(path).and_then(|f| {
            let mut w = BufWriter::new(f);
            outcome.report.write(format, &mut w)?;
            w.flush()
        }),
        None => outcome.report.write(format, stdout).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if outcome.verification_failed {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    }
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

impl Command {
    fn output_args(&self) -> &OutputArgs {
        match self {
            Command::Spectrum { out, .. }
            | Command::Classical { out, .. }
            | Command::Evolve { out, .. }
            | Command::Equivalence { out, .. }
            | Command::Driven { out, .. }
            | Command::Sweep { out, .. }
            | Command::Verify { out, .. } => out,
        }
    }
}

fn param_fields(params: &OscillatorParams) -> Fields {
    vec![
        ("omega".into(), params.omega().into()),
        ("gamma".into(), params.gamma().into()),
        ("hbar".into(), params.hbar().into()),
        ("omega1".into(), params.omega1().into()),
    ]
}

fn report(command: &str, config: Fields, table: Table) -> Outcome {
    Outcome {
        report: Report { command: command.into(), config, table, summary: Vec::new() },
        notes: Vec::new(),
        verification_failed: false,
    }
}

fn execute(command: &Command) -> crate::Result<Outcome> {
    match command {
        Command::Spectrum { phys, n_max, naive, .. } => cmd_spectrum(&phys.params()?, *n_max, *naive),
        Command::Classical { phys, x0, p0, step, .. } => {
            cmd_classical(&phys.params()?, ClassicalState::new(*x0, *p0), step)
        }
        Command::Evolve { phys, fock, step, .. } => cmd_evolve(&phys.params()?, fock, step),
        Command::Equivalence { phys, fock, times, t_end, dt, .. } => {
            let times = sample_times(times.as_deref(), *t_end, *dt)?;
            cmd_equivalence(&phys.params()?, fock, &times)
        }
        Command::Driven { phys, x0, p0, signal, step, .. } => {
            let signal: ControlSignal = signal.parse()?;
            cmd_driven(&phys.params()?, ClassicalState::new(*x0, *p0), &signal, step)
        }
        Command::Sweep { omega, gammas, hbar, fock, t_end, .. } => {
            cmd_sweep(*omega, &parse_gammas(gammas)?, *hbar, fock, *t_end)
        }
        Command::Verify { phys, dim, seed, .. } => cmd_verify(&phys.params()?, *dim, *seed),
    }
}

fn sample_times(times: Option<&[f64]>, t_end: Option<f64>, dt: Option<f64>) -> crate::Result<Vec<f64>> {
    match (times, t_end) {
        (Some(ts), None) if !ts.is_empty() => Ok(ts.to_vec()),
        (None, Some(t_end)) => {
            let dt = dt.unwrap_or(t_end / 20.0);
            ode::time_grid(t_end, dt, &[])
        }
        _ => Err(Error::Parse("give either --times or --t-end [--dt]".into())),
    }
}

fn parse_gammas(spec: &str) -> crate::Result<Vec<f64>> {
    let bad = || Error::Parse(format!("--gammas `{spec}` is neither a list nor start:stop:count"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        return match count {
            0 => Err(bad()),
            1 => Ok(vec![start]),
            _ => Ok((0..count)
                .map(|k| start + (stop - start) * k as f64 / (count - 1) as f64)
                .collect()),
        };
    }
    spec.split(',').map(|g| g.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn cmd_spectrum(params: &OscillatorParams, n_max: usize, naive: bool) -> crate::Result<Outcome> {
    let lines = spectrum(params, n_max);
    let mut config = param_fields(params);
    config.push(("n_max".into(), n_max.into()));
    let table = if naive {
        let naive_lines = naive_spectrum(params, n_max);
        config.push(("naive_levels_are_physical".into(), false.into()));
        let mut t = Table::new(&["n", "re_E", "im_E", "re_E_naive_nonphysical", "im_E_naive_nonphysical"]);
        for (l, nl) in lines.iter().zip(&naive_lines) {
            t.push(vec![
                l.n.into(),
                l.energy.re.into(),
                l.energy.im.into(),
                nl.energy.re.into(),
                nl.energy.im.into(),
            ]);
        }
        t
    } else {
        let mut t = Table::new(&["n", "re_E", "im_E"]);
        for l in &lines {
            t.push(vec![l.n.into(), l.energy.re.into(), l.energy.im.into()]);
        }
        t
    };
    Ok(report("spectrum", config, table))
}

fn cmd_classical(params: &OscillatorParams, s0: ClassicalState, step: &StepArgs) -> crate::Result<Outcome> {
    if !s0.is_finite() {
        return Err(Error::Parse("initial state must be finite".into()));
    }
    let traj = classical::integrate_homogeneous(params, &s0, step.t_end, step.dt)?;
    let ap = amplitude_phase_from_state(params, &s0);
    let mut table = Table::new(&["t", "x", "p", "x_exact", "p_exact", "abs_err"]);
    let mut worst = 0.0f64;
    for (&t, s) in traj.times.iter().zip(&traj.states) {
        let exact = analytic_solution(params, &ap, t);
        let err = s.max_abs_diff(&exact);
        worst = worst.max(err);
        table.push(vec![t.into(), s.x.into(), s.p.into(), exact.x.into(), exact.p.into(), err.into()]);
    }
    let mut config = param_fields(params);
    config.extend([
        ("x0".into(), s0.x.into()),
        ("p0".into(), s0.p.into()),
        ("t_end".into(), step.t_end.into()),
        ("dt".into(), step.dt.into()),
    ]);
    let mut out = report("classical", config, table);
    out.report.summary = vec![
        ("amplitude".into(), ap.amplitude().into()),
        ("phase".into(), ap.phase().into()),
        ("max_abs_err".into(), worst.into()),
    ];
    Ok(out)
}

fn fock_fields(fock: &FockArgs, dim: usize, factor: f64) -> Fields {
    vec![
        ("state".into(), fock.state.clone().into()),
        ("dim".into(), dim.into()),
        ("normalization_factor".into(), factor.into()),
    ]
}

fn normalization_note(factor: f64) -> String {
    format!("note: initial state normalized by factor {}", output::format_real(factor))
}

fn cmd_evolve(params: &OscillatorParams, fock: &FockArgs, step: &StepArgs) -> crate::Result<Outcome> {
    let (psi0, factor) = fock.build()?;
    let times = ode::time_grid(step.t_end, step.dt, &[])?;
    let mut table = Table::new(&["t", "norm_sq", "ground_overlap_re", "ground_overlap_im", "n_expect"]);
    for &t in &times {
        let r = evolve(params, &psi0, t)?;
        let n = number_expectation(&r).ok();
        table.push(vec![
            t.into(),
            r.norm_sq.into(),
            r.ground_overlap.re.into(),
            r.ground_overlap.im.into(),
            n.into(),
        ]);
    }
    let mut config = param_fields(params);
    config.extend(fock_fields(fock, psi0.dim(), factor));
    config.extend([("t_end".into(), step.t_end.into()), ("dt".into(), step.dt.into())]);
    let mut out = report("evolve", config, table);
    out.notes.push(normalization_note(factor));
    Ok(out)
}

fn cmd_equivalence(params: &OscillatorParams, fock: &FockArgs, times: &[f64]) -> crate::Result<Outcome> {
    let (psi0, factor) = fock.build()?;
    let rows = picture_equivalence_report(params, &psi0, times);
    let mut table = Table::new(&["t", "tau_re", "tau_im", "max_deviation", "pass"]);
    for r in &rows {
        table.push(vec![r.t.into(), r.tau.re.into(), r.tau.im.into(), r.max_deviation.into(), r.passed.into()]);
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    let mut config = param_fields(params);
    config.extend(fock_fields(fock, psi0.dim(), factor));
    config.push(("tolerance".into(), crate::complex_time::EQUIVALENCE_TOL.into()));
    let mut out = report("equivalence", config, table);
    out.notes.push(normalization_note(factor));
    out.report.summary = vec![("failed_rows".into(), failed.into())];
    out.verification_failed = failed > 0;
    Ok(out)
}

fn cmd_driven(
    params: &OscillatorParams,
    s0: ClassicalState,
    signal: &ControlSignal,
    step: &StepArgs,
) -> crate::Result<Outcome> {
    if !s0.is_finite() {
        return Err(Error::Parse("initial state must be finite".into()));
    }
    let traj = integrate_driven(params, &s0, signal, step.t_end, step.dt)?;
    let mut table = Table::new(&["t", "x", "p", "f"]);
    for ((&t, s), &f) in traj.times.iter().zip(&traj.states).zip(&traj.drive) {
        table.push(vec![t.into(), s.x.into(), s.p.into(), f.into()]);
    }
    let metrics = response_metrics(&traj).expect("grid always has at least two points");
    let mut config = param_fields(params);
    config.extend([
        ("x0".into(), s0.x.into()),
        ("p0".into(), s0.p.into()),
        ("signal".into(), signal_echo(signal).into()),
        ("t_end".into(), step.t_end.into()),
        ("dt".into(), step.dt.into()),
    ]);
    let mut out = report("driven", config, table);
    out.report.summary = vec![
        ("peak_abs_x".into(), metrics.peak_abs_x.into()),
        ("settling_time".into(), metrics.settling_time.into()),
        ("terminal_x".into(), metrics.terminal.x.into()),
        ("terminal_p".into(), metrics.terminal.p.into()),
    ];
    Ok(out)
}

fn signal_echo(signal: &ControlSignal) -> String {
    let r = output::format_real;
    match signal {
        ControlSignal::Zero => "zero".into(),
        ControlSignal::Constant(f) => format!("constant:{}", r(*f)),
        ControlSignal::Sinusoid { amplitude, frequency, phase } => {
            format!("sin:{},{},{}", r(*amplitude), r(*frequency), r(*phase))
        }
        ControlSignal::PiecewiseConstant { breakpoints, levels } => {
            let items: Vec<String> = breakpoints.iter().zip(levels).map(|(t, f)| format!("{}={}", r(*t), r(*f))).collect();
            format!("pwc:{}", items.join(","))
        }
    }
}

fn cmd_sweep(omega: f64, gammas: &[f64], hbar: f64, fock: &FockArgs, t_end: f64) -> crate::Result<Outcome> {
    let (psi0, factor) = fock.build()?;
    quantum::check_time(t_end)?;
    let params: Vec<OscillatorParams> = gammas
        .iter()
        .map(|&g| OscillatorParams::new(omega, g, hbar))
        .collect::<crate::Result<_>>()?;
    let rows: Vec<Vec<Cell>> = params
        .par_iter()
        .enumerate()
        .map(|(idx, p)| -> crate::Result<Vec<Cell>> {
            let r = evolve(p, &psi0, t_end)?;
            let ct = complex_time_of(p, t_end)?;
            let eq = picture_equivalence_report(p, &psi0, &[t_end]);
            Ok(vec![
                idx.into(),
                p.omega().into(),
                p.gamma().into(),
                p.hbar().into(),
                fock.state.clone().into(),
                psi0.dim().into(),
                t_end.into(),
                p.omega1().into(),
                r.norm_sq.into(),
                r.ground_overlap.re.into(),
                r.ground_overlap.im.into(),
                number_expectation(&r).ok().into(),
                ct.tau.re.into(),
                ct.tau.im.into(),
                eq[0].max_deviation.into(),
            ])
        })
        .collect::<crate::Result<_>>()?;
    let mut table = Table::new(&[
        "index",
        "omega",
        "gamma",
        "hbar",
        "state",
        "dim",
        "t",
        "omega1",
        "norm_sq",
        "ground_overlap_re",
        "ground_overlap_im",
        "n_expect",
        "tau_re",
        "tau_im",
        "picture_deviation",
    ]);
    for row in rows {
        table.push(row);
    }
    let config = vec![
        ("omega".into(), omega.into()),
        ("gammas".into(), gammas.iter().map(|g| output::format_real(*g)).collect::<Vec<_>>().join(",").into()),
        ("hbar".into(), hbar.into()),
        ("state".into(), fock.state.clone().into()),
        ("dim".into(), psi0.dim().into()),
        ("normalization_factor".into(), factor.into()),
        ("t_end".into(), t_end.into()),
    ];
    let mut out = report("sweep", config, table);
    out.notes.push(normalization_note(factor));
    Ok(out)
}

fn cmd_verify(params: &OscillatorParams, dim: usize, seed: u64) -> crate::Result<Outcome> {
    let checks = verify::run_verification(params, dim, seed);
    let mut table = Table::new(&["check", "measured", "bound", "threshold", "status"]);
    for c in &checks {
        let bound = match c.bound {
            verify::Bound::AtMost => "<=",
            verify::Bound::AtLeast => ">=",
        };
        table.push(vec![c.name.into(), c.measured.into(), bound.into(), c.threshold.into(), c.status.as_str().into()]);
    }
    let failed = checks.iter().filter(|c| c.status == verify::Status::Fail).count();
    let mut config = param_fields(params);
    config.extend([("dim".into(), dim.into()), ("seed".into(), Cell::Int(seed as i64))]);
    let mut out = report("verify", config, table);
    out.report.summary = vec![("checks".into(), checks.len().into()), ("failed".into(), failed.into())];
    out.verification_failed = failed > 0;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["dampq"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spectrum_csv() {
        let (code, out, _) = run_capture(&["spectrum", "--omega", "5", "--gamma", "3", "--hbar", "1", "--n-max", "2"]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "n,re_E,im_E\n\
             0,2.5000000000000000e0,0.0000000000000000e0\n\
             1,6.5000000000000000e0,-3.0000000000000000e0\n\
             2,1.0500000000000000e1,-6.0000000000000000e0\n"
        );
    }

    #[test]
    fn critical_damping_is_a_usage_error() {
        let (code, out, err) = run_capture(&["spectrum", "--omega", "2", "--gamma", "2", "--n-max", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("critically damped"), "{err}");
    }

    #[test]
    fn bad_flags_exit_one() {
        assert_eq!(run_capture(&["spectrum", "--omega", "x"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["nonsense"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
        let (code, _, err) = run_capture(&[
            "driven", "--omega", "5", "--gamma", "3", "--signal", "pwc:2=1,1=0", "--t-end", "1", "--dt", "0.1",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("strictly increasing"));
    }

    #[test]
    fn gamma_lists() {
        assert_eq!(parse_gammas("0,1.5").unwrap(), vec![0.0, 1.5]);
        assert_eq!(parse_gammas("0:2:3").unwrap(), vec![0.0, 1.0, 2.0]);
        assert!(parse_gammas("0:2:0").is_err());
        assert!(parse_gammas("a").is_err());
    }

    #[test]
    fn equivalence_requires_times() {
        assert!(sample_times(None, None, None).is_err());
        assert_eq!(sample_times(Some(&[0.0, 1.0]), None, None).unwrap(), vec![0.0, 1.0]);
        assert_eq!(sample_times(None, Some(1.0), Some(0.5)).unwrap(), vec![0.0, 0.5, 1.0]);
    }
}
