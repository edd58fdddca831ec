//! Fixed-step classical Runge–Kutta integration on a deterministic time grid.

use crate::{Error, Result};

/// Relative slack used when deciding whether `t_end / dt` is an integer.
const GRID_SNAP: f64 = 1e-9;

/// Builds the integration grid `0, dt, 2dt, …, t_end`.
///
/// Grid points are computed as `k·dt` rather than by accumulation. When
/// `t_end` is not a multiple of `dt` the last step is shortened so the grid
/// lands exactly on `t_end`. Each breakpoint inside `(0, t_end)` is inserted
/// into the grid (replacing a grid point that lies within rounding distance).
pub fn time_grid(t_end: f64, dt: f64, breakpoints: &[f64]) -> Result<Vec<f64>> {
    if !(t_end.is_finite() && dt.is_finite() && t_end > 0.0 && dt > 0.0 && dt <= t_end) {
        return Err(Error::InvalidStep { t_end, dt });
    }
    let ratio = t_end / dt;
    let nearest = ratio.round();
    let steps = if (ratio - nearest).abs() <= GRID_SNAP * ratio.max(1.0) {
        nearest as usize
    } else {
        ratio.ceil() as usize
    };
    let mut grid: Vec<f64> = (0..steps).map(|k| k as f64 * dt).collect();
    grid.push(t_end);

    let snap = GRID_SNAP * dt;
    for &b in breakpoints {
        if !(b > 0.0 && b < t_end) {
            continue;
        }
        let idx = grid.partition_point(|&t| t < b);
        let near = [idx.wrapping_sub(1), idx]
            .into_iter()
            .filter(|&j| j > 0 && j + 1 < grid.len())
            .find(|&j| (grid[j] - b).abs() <= snap);
        match near {
            Some(j) => grid[j] = b,
            None => grid.insert(idx, b),
        }
    }
    grid.dedup();
    Ok(grid)
}

/// One classical RK4 step of `dy/dt = rhs(t, y)` from `t` to `t + h`.
pub fn rk4_step<const N: usize>(
    t: f64,
    y: &[f64; N],
    h: f64,
    rhs: impl Fn(f64, &[f64; N]) -> [f64; N],
) -> [f64; N] {
    let half = 0.5 * h;
    let k1 = rhs(t, y);
    let k2 = rhs(t + half, &axpy(y, half, &k1));
    let k3 = rhs(t + half, &axpy(y, half, &k2));
    let k4 = rhs(t + h, &axpy(y, h, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

/// Integrates over a prebuilt grid, returning one state per grid point.
///
/// `rhs` receives the stage time, the state and the start time of the
/// current step, so piecewise inputs can be latched per step.
pub fn integrate_on_grid<const N: usize>(
    grid: &[f64],
    y0: [f64; N],
    rhs: impl Fn(f64, &[f64; N], f64) -> [f64; N],
) -> Vec<[f64; N]> {
    let mut states = Vec::with_capacity(grid.len());
    let mut y = y0;
    states.push(y);
    for w in grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        y = rk4_step(t0, &y, t1 - t0, |t, s| rhs(t, s, t0));
        states.push(y);
    }
    states
}
