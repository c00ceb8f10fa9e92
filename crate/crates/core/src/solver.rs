//! One-dimensional root finding: Newton-Raphson with an optional
//! bisection fallback over a geometric grid scan.
//!
//! The estimating equations this crate solves all live on an open interval
//! `(lo, hi)` whose left edge is a pole, so the solver works on a bracket
//! and treats any iterate that escapes it as a failed Newton run. With
//! `fallback` enabled, failure triggers a 64-point log-spaced scan of the
//! bracket for sign changes, each refined by bisection. With `fallback`
//! disabled the solve reports non-convergence instead, which callers use to
//! detect estimating equations with no (reachable) root.

use thiserror::Error;

/// Number of grid points in the sign-change scan.
pub const SCAN_POINTS: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error("invalid bracket: lo = {lo}, hi = {hi}, x0 = {x0}")]
    InvalidBracket { lo: f64, hi: f64, x0: f64 },
    #[error("no sign change found in ({lo}, {hi}) and Newton iteration failed")]
    NoSignChange { lo: f64, hi: f64 },
}

/// Solver tuning knobs.
///
/// `root_tol` is relative to the problem's own scale (see
/// [`RootProblem::scale`]). The Newton search is restricted to
/// `(lo, n_upper)` where callers derive `lo` from `n_lower_offset`.
/// `fallback` enables the grid-scan bisection rescue when plain Newton
/// fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub root_tol: f64,
    pub max_iter: usize,
    pub n_lower_offset: f64,
    pub n_upper: f64,
    pub fallback: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            root_tol: 1e-10,
            max_iter: 200,
            n_lower_offset: 1e-6,
            n_upper: 1e7,
            fallback: true,
        }
    }
}

impl SolverConfig {
    /// Configuration for one-step-ahead prediction sweeps: plain
    /// Newton-Raphson with no bisection rescue, so segments whose
    /// equations Newton cannot reach fall through to the degenerate
    /// large-N estimate.
    pub fn prediction() -> Self {
        Self {
            fallback: false,
            ..Self::default()
        }
    }
}

/// A scalar root-finding problem. `scale` supplies the magnitude against
/// which the residual is judged; the default makes `root_tol` absolute.
pub trait RootProblem {
    fn eval(&self, x: f64) -> f64;

    /// Analytic derivative where available; the default is a central
    /// finite difference with step `max(1e-6, 1e-8 |x|)`.
    fn derivative(&self, x: f64) -> f64 {
        let h = (1e-8 * x.abs()).max(1e-6);
        (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
    }

    fn scale(&self, _x: f64) -> f64 {
        1.0
    }
}

/// Closure adapter for [`RootProblem`].
pub struct FnProblem<F, D = fn(f64) -> f64> {
    f: F,
    fprime: Option<D>,
}

impl<F: Fn(f64) -> f64> FnProblem<F> {
    pub fn new(f: F) -> Self {
        Self { f, fprime: None }
    }
}

impl<F: Fn(f64) -> f64, D: Fn(f64) -> f64> FnProblem<F, D> {
    pub fn with_derivative(f: F, fprime: D) -> Self {
        Self {
            f,
            fprime: Some(fprime),
        }
    }
}

impl<F: Fn(f64) -> f64, D: Fn(f64) -> f64> RootProblem for FnProblem<F, D> {
    fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    fn derivative(&self, x: f64) -> f64 {
        match &self.fprime {
            Some(d) => d(x),
            None => {
                let h = (1e-8 * x.abs()).max(1e-6);
                (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
            }
        }
    }
}

/// Outcome of a solve: the final iterate, iteration count, the
/// scale-relative residual there, and whether the residual met `root_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOutcome {
    pub root: f64,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

/// Plain Newton-Raphson restricted to `(lo, hi)`.
///
/// Returns `None` when the iteration escapes the bracket, meets a vanishing
/// or non-finite derivative, or exhausts `max_iter` without driving the
/// scaled residual below `root_tol`.
pub fn newton_only(
    problem: &dyn RootProblem,
    x0: f64,
    lo: f64,
    hi: f64,
    cfg: &SolverConfig,
) -> Option<SolveOutcome> {
    let mut x = x0.clamp(lo, hi);
    for iter in 0..cfg.max_iter {
        let fv = problem.eval(x);
        let sc = problem.scale(x).abs().max(f64::MIN_POSITIVE);
        if fv.is_finite() && fv.abs() <= cfg.root_tol * sc {
            return Some(SolveOutcome {
                root: x,
                iterations: iter,
                residual: fv.abs() / sc,
                converged: true,
            });
        }
        let dv = problem.derivative(x);
        if !fv.is_finite() || !dv.is_finite() || dv == 0.0 {
            return None;
        }
        let next = x - fv / dv;
        if !next.is_finite() || next <= lo || next >= hi {
            return None;
        }
        x = next;
    }
    None
}

/// Log-spaced scan of `[lo, hi]` returning every adjacent pair of grid
/// points whose function values have opposite sign (or a point evaluating
/// exactly to zero, returned as a degenerate pair).
pub fn scan_brackets(
    problem: &dyn RootProblem,
    lo: f64,
    hi: f64,
    points: usize,
) -> Vec<(f64, f64)> {
    debug_assert!(lo > 0.0 && hi > lo && points >= 2);
    let (llo, lhi) = (lo.ln(), hi.ln());
    let grid: Vec<f64> = (0..points)
        .map(|k| (llo + (lhi - llo) * k as f64 / (points - 1) as f64).exp())
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| problem.eval(x)).collect();
    let mut out = Vec::new();
    for k in 0..points - 1 {
        let (fa, fb) = (values[k], values[k + 1]);
        if !fa.is_finite() || !fb.is_finite() {
            continue;
        }
        if fa == 0.0 {
            out.push((grid[k], grid[k]));
        } else if (fa < 0.0) != (fb < 0.0) {
            out.push((grid[k], grid[k + 1]));
        }
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            out.push((hi, hi));
        }
    }
    out
}

/// Bisection on a sign-change bracket, run to scaled-residual convergence
/// or until the interval collapses to relative machine width.
pub fn bisect(
    problem: &dyn RootProblem,
    bracket: (f64, f64),
    cfg: &SolverConfig,
) -> SolveOutcome {
    let (mut a, mut b) = bracket;
    if a == b {
        return SolveOutcome {
            root: a,
            iterations: 0,
            residual: 0.0,
            converged: true,
        };
    }
    let mut fa = problem.eval(a);
    let mut iterations = 0;
    // 1074 halvings always collapse an f64 interval; cap well above that.
    for _ in 0..2048 {
        let mid = 0.5 * (a + b);
        let fm = problem.eval(mid);
        iterations += 1;
        let sc = problem.scale(mid).abs().max(f64::MIN_POSITIVE);
        // Stop on the scaled residual where possible; a bracket collapsed
        // to machine width locates the sign change exactly, which is as
        // converged as bisection gets.
        if fm == 0.0 || fm.abs() <= cfg.root_tol * sc || (b - a) <= 1e-14 * mid.abs() {
            return SolveOutcome {
                root: mid,
                iterations,
                residual: fm.abs() / sc,
                converged: true,
            };
        }
        if (fa < 0.0) != (fm < 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    let mid = 0.5 * (a + b);
    let sc = problem.scale(mid).abs().max(f64::MIN_POSITIVE);
    SolveOutcome {
        root: mid,
        iterations,
        residual: problem.eval(mid).abs() / sc,
        converged: true,
    }
}

/// Newton-Raphson with bisection fallback.
///
/// Runs plain Newton from `x0`; if that fails and `cfg.fallback` is set,
/// scans `(lo, hi)` for a sign change and bisects the first bracket found.
/// Errors with [`SolverError::NoSignChange`] when neither route produces a
/// root.
pub fn newton_solve(
    problem: &dyn RootProblem,
    x0: f64,
    lo: f64,
    hi: f64,
    cfg: &SolverConfig,
) -> Result<SolveOutcome, SolverError> {
    if lo >= hi || lo.is_nan() || hi.is_nan() || !x0.is_finite() {
        return Err(SolverError::InvalidBracket { lo, hi, x0 });
    }
    if let Some(out) = newton_only(problem, x0, lo, hi, cfg) {
        return Ok(out);
    }
    if cfg.fallback {
        let brackets = scan_brackets(problem, lo, hi, SCAN_POINTS);
        if let Some(&bracket) = brackets.first() {
            return Ok(bisect(problem, bracket, cfg));
        }
    }
    Err(SolverError::NoSignChange { lo, hi })
}
