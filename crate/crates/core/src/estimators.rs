//! Parameter estimation for the Jelinski-Moranda model.
//!
//! Each estimator reduces to a one-dimensional root problem in `N` after
//! profiling out `phi` in closed form:
//!
//! * MLE: score equations of the exponential likelihood.
//! * LSE: normal equations of the untransformed squared error.
//! * LogLSE: normal equations after a log transform of both sides.
//! * powLSE: normal equations after a power transform `x^alpha`; `alpha = 1`
//!   recovers LSE.
//!
//! All four root functions blow up at `N = n - 1` (the last hazard's pole)
//! and decay to zero as `N` grows, so the solve runs on the bracket
//! `(n - 1 + offset, n_upper)`. Data without reliability growth admits no
//! root; the estimating equations are then satisfied only in the degenerate
//! large-N limit, which [`boundary_estimate`] evaluates at the bracket cap.
//! `estimate` reports that case as a non-converged result rather than an
//! error so prediction pipelines can keep going.

use serde::Serialize;
use thiserror::Error;

use crate::jm::{FailureDataset, JmParams};
use crate::solver::{
    bisect, newton_only, scan_brackets, RootProblem, SolverConfig, SCAN_POINTS,
};

#[derive(Debug, Error, PartialEq)]
pub enum EstimateError {
    #[error("estimation requires at least 3 observations, got {0}")]
    TooFewObservations(usize),
    #[error("power index must be a nonzero finite real, got {0}")]
    InvalidAlpha(f64),
    #[error("failure times must be strictly positive")]
    NonPositiveTime,
    #[error("solver bracket is empty: n_upper = {n_upper} with {n} observations")]
    EmptyBracket { n_upper: f64, n: usize },
}

/// Which estimating-equation family to solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EstimatorKind {
    Mle,
    Lse,
    LogLse,
    PowLse { alpha: f64 },
}

impl std::fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EstimatorKind::Mle => write!(f, "MLE"),
            EstimatorKind::Lse => write!(f, "LSE"),
            EstimatorKind::LogLse => write!(f, "LogLSE"),
            EstimatorKind::PowLse { alpha } => write!(f, "powLSE({alpha})"),
        }
    }
}

/// Fitted parameters plus solver diagnostics.
///
/// `converged` means a root of the estimating equations was found; the
/// scaled residual there is `residual`. A non-converged result carries the
/// degenerate large-N estimate (see [`boundary_estimate`]) so downstream
/// prediction remains well-defined. `objective` is the minimized criterion
/// at the returned parameters (negative log-likelihood for MLE, the
/// respective squared-error objective otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimationResult {
    pub params: JmParams,
    pub kind: EstimatorKind,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
    pub objective: f64,
}

/// Precomputed sums for one dataset/estimator pair. `d_i = N - i + 1`
/// throughout.
struct System<'a> {
    times: &'a [f64],
    kind: EstimatorKind,
    sum_x: f64,
    /// `sum (i-1) x_i`
    sum_ix: f64,
    ln_x: Vec<f64>,
}

impl<'a> System<'a> {
    fn new(times: &'a [f64], kind: EstimatorKind) -> Self {
        let sum_x = times.iter().sum();
        let sum_ix = times
            .iter()
            .enumerate()
            .map(|(k, &x)| k as f64 * x)
            .sum();
        let ln_x = match kind {
            EstimatorKind::LogLse | EstimatorKind::PowLse { .. } => {
                times.iter().map(|x| x.ln()).collect()
            }
            _ => Vec::new(),
        };
        Self {
            times,
            kind,
            sum_x,
            sum_ix,
            ln_x,
        }
    }

    fn m(&self) -> f64 {
        self.times.len() as f64
    }

    /// Weighted mean failure index `sum (i-1) x_i / sum x_i`; the MLE root
    /// exists only when this exceeds `(n-1)/2`.
    fn growth_center(&self) -> f64 {
        self.sum_ix / self.sum_x
    }

    /// Raw root function and its magnitude scale at `n`.
    fn eval_scaled(&self, n: f64) -> (f64, f64) {
        let m = self.m();
        match self.kind {
            EstimatorKind::Mle => {
                let s1: f64 = (1..=self.times.len())
                    .map(|i| 1.0 / (n - i as f64 + 1.0))
                    .sum();
                let rhs = m / (n - self.growth_center());
                (s1 - rhs, s1.abs() + rhs.abs())
            }
            EstimatorKind::Lse => {
                let (mut a1, mut a2, mut s2, mut s3) = (0.0, 0.0, 0.0, 0.0);
                for (k, &x) in self.times.iter().enumerate() {
                    let d = n - k as f64;
                    let inv = 1.0 / d;
                    let inv2 = inv * inv;
                    a1 += x * inv;
                    a2 += x * inv2;
                    s2 += inv2;
                    s3 += inv2 * inv;
                }
                ((a2 * s2) - (a1 * s3), (a2 * s2).abs() + (a1 * s3).abs())
            }
            EstimatorKind::LogLse => {
                let (mut lbar, mut s1, mut t, mut tabs) = (0.0, 0.0, 0.0, 0.0);
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    let d = n - k as f64;
                    let l = lx + d.ln();
                    lbar += l;
                    s1 += 1.0 / d;
                    t += l / d;
                    tabs += l.abs() / d;
                }
                lbar /= self.m();
                (
                    lbar * s1 - t,
                    (lbar.abs() * s1 + tabs).max(f64::MIN_POSITIVE),
                )
            }
            EstimatorKind::PowLse { alpha } => {
                let (a, b, c, d_) = self.pow_sums(n, alpha);
                (a * b - c * d_, a * b + c * d_)
            }
        }
    }

    /// The four power sums of the transformed normal equations:
    /// `A = sum (x/d)^a`, `B = sum d^-(2a+1)`, `C = sum x^a d^-(a+1)`,
    /// `D = sum d^-2a`. Terms are computed in exp/log space so large
    /// magnitudes and exponents cannot overflow intermediate powers.
    fn pow_sums(&self, n: f64, alpha: f64) -> (f64, f64, f64, f64) {
        let (mut a, mut b, mut c, mut d_) = (0.0, 0.0, 0.0, 0.0);
        for (k, &lx) in self.ln_x.iter().enumerate() {
            let ld = (n - k as f64).ln();
            a += (alpha * (lx - ld)).exp();
            b += (-(2.0 * alpha + 1.0) * ld).exp();
            c += (alpha * lx - (alpha + 1.0) * ld).exp();
            d_ += (-2.0 * alpha * ld).exp();
        }
        (a, b, c, d_)
    }

    fn derivative_at(&self, n: f64) -> f64 {
        match self.kind {
            EstimatorKind::Mle => {
                let s2: f64 = (1..=self.times.len())
                    .map(|i| {
                        let d = n - i as f64 + 1.0;
                        1.0 / (d * d)
                    })
                    .sum();
                let r = n - self.growth_center();
                -s2 + self.m() / (r * r)
            }
            EstimatorKind::Lse => {
                let (mut a1, mut a2, mut a3, mut s2, mut s3, mut s4) =
                    (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
                for (k, &x) in self.times.iter().enumerate() {
                    let inv = 1.0 / (n - k as f64);
                    let inv2 = inv * inv;
                    a1 += x * inv;
                    a2 += x * inv2;
                    a3 += x * inv2 * inv;
                    s2 += inv2;
                    s3 += inv2 * inv;
                    s4 += inv2 * inv2;
                }
                -2.0 * a3 * s2 - a2 * s3 + 3.0 * a1 * s4
            }
            EstimatorKind::LogLse => {
                let m = self.m();
                let (mut lbar, mut s1, mut s2, mut t2) = (0.0, 0.0, 0.0, 0.0);
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    let d = n - k as f64;
                    let l = lx + d.ln();
                    lbar += l;
                    s1 += 1.0 / d;
                    s2 += 1.0 / (d * d);
                    t2 += l / (d * d);
                }
                lbar /= m;
                s1 * s1 / m - lbar * s2 - s2 + t2
            }
            EstimatorKind::PowLse { alpha } => {
                let (a, b, c, d_) = self.pow_sums(n, alpha);
                let (mut e, mut f_) = (0.0, 0.0);
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    let ld = (n - k as f64).ln();
                    e += (-(2.0 * alpha + 2.0) * ld).exp();
                    f_ += (alpha * lx - (alpha + 2.0) * ld).exp();
                }
                alpha * c * b - (2.0 * alpha + 1.0) * a * e + (alpha + 1.0) * f_ * d_
            }
        }
    }

    /// Closed-form `phi` given `N`.
    fn phi(&self, n: f64) -> f64 {
        match self.kind {
            EstimatorKind::Mle => self.m() / (n * self.sum_x - self.sum_ix),
            EstimatorKind::Lse => {
                let (mut a1, mut s2) = (0.0, 0.0);
                for (k, &x) in self.times.iter().enumerate() {
                    let d = n - k as f64;
                    a1 += x / d;
                    s2 += 1.0 / (d * d);
                }
                s2 / a1
            }
            EstimatorKind::LogLse => {
                let mut lbar = 0.0;
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    lbar += lx + (n - k as f64).ln();
                }
                (-lbar / self.m()).exp()
            }
            EstimatorKind::PowLse { alpha } => {
                let (a, _, _, d_) = self.pow_sums(n, alpha);
                ((d_.ln() - a.ln()) / alpha).exp()
            }
        }
    }

    /// The minimized criterion at `(N, phi)`.
    fn objective(&self, n: f64, phi: f64) -> f64 {
        match self.kind {
            EstimatorKind::Mle => {
                let mut log_lik = self.m() * phi.ln() - phi * (n * self.sum_x - self.sum_ix);
                for i in 1..=self.times.len() {
                    log_lik += (n - i as f64 + 1.0).ln();
                }
                -log_lik
            }
            EstimatorKind::Lse => {
                let mut s = 0.0;
                for (k, &x) in self.times.iter().enumerate() {
                    let r = x - 1.0 / (phi * (n - k as f64));
                    s += r * r;
                }
                s
            }
            EstimatorKind::LogLse => {
                let lphi = phi.ln();
                let mut s = 0.0;
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    let r = lx + lphi + (n - k as f64).ln();
                    s += r * r;
                }
                s
            }
            EstimatorKind::PowLse { alpha } => {
                let lphi = phi.ln();
                let mut s = 0.0;
                for (k, &lx) in self.ln_x.iter().enumerate() {
                    let r = (alpha * lx).exp() - (-alpha * (lphi + (n - k as f64).ln())).exp();
                    s += r * r;
                }
                s
            }
        }
    }
}

impl RootProblem for System<'_> {
    fn eval(&self, x: f64) -> f64 {
        self.eval_scaled(x).0
    }

    fn derivative(&self, x: f64) -> f64 {
        self.derivative_at(x)
    }

    fn scale(&self, x: f64) -> f64 {
        self.eval_scaled(x).1
    }
}

/// MLE root function `g(N)` (zero at the estimate).
pub fn mle_root_fn(times: &[f64], n: f64) -> f64 {
    System::new(times, EstimatorKind::Mle).eval(n)
}

/// LSE root function `h(N)` (zero at the estimate).
pub fn lse_root_fn(times: &[f64], n: f64) -> f64 {
    System::new(times, EstimatorKind::Lse).eval(n)
}

/// LogLSE root function (zero at the estimate); independent of log base.
pub fn loglse_root_fn(times: &[f64], n: f64) -> f64 {
    System::new(times, EstimatorKind::LogLse).eval(n)
}

/// powLSE root function `f(N)` for the given power index.
pub fn powlse_root_fn(times: &[f64], alpha: f64, n: f64) -> f64 {
    System::new(times, EstimatorKind::PowLse { alpha }).eval(n)
}

/// The degenerate large-N estimate: `N` at the bracket cap with `phi` from
/// the estimator's closed form there.
///
/// Every estimating equation decays to zero as `N` grows, so data without
/// a finite root is fit arbitrarily well by this limit; its predictions
/// approach the arithmetic (LSE/MLE), geometric (LogLSE), or power-mean
/// (powLSE) of the observed times.
pub fn boundary_estimate(times: &[f64], kind: EstimatorKind, n_upper: f64) -> JmParams {
    let sys = System::new(times, kind);
    JmParams {
        n: n_upper,
        phi: sys.phi(n_upper),
    }
}

/// Scaled residuals of both lines of an estimator's equation system at
/// `params`: `(root_equation, phi_equation)`. Both are near zero at a
/// converged estimate.
pub fn equation_residuals(times: &[f64], kind: EstimatorKind, params: JmParams) -> (f64, f64) {
    let sys = System::new(times, kind);
    let (f, scale) = sys.eval_scaled(params.n);
    let root_res = f.abs() / scale.max(f64::MIN_POSITIVE);
    let phi_closed = sys.phi(params.n);
    let phi_res = (params.phi - phi_closed).abs() / (params.phi.abs() + phi_closed.abs());
    (root_res, phi_res)
}

fn validate(times: &[f64], kind: EstimatorKind) -> Result<(), EstimateError> {
    if times.len() < 3 {
        return Err(EstimateError::TooFewObservations(times.len()));
    }
    if times.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
        return Err(EstimateError::NonPositiveTime);
    }
    if let EstimatorKind::PowLse { alpha } = kind {
        if !(alpha.is_finite() && alpha != 0.0) {
            return Err(EstimateError::InvalidAlpha(alpha));
        }
    }
    Ok(())
}

/// Fit `kind` to a slice of failure times.
///
/// Runs Newton-Raphson from `x0 = 2n`; with `cfg.fallback` enabled a failed
/// Newton run falls back to a sign-change scan of the bracket, solving every
/// bracket found and keeping the root with the smallest objective (largest
/// likelihood for MLE). When no root is reachable the result carries the
/// degenerate large-N estimate with `converged = false`.
pub fn estimate_times(
    times: &[f64],
    kind: EstimatorKind,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    validate(times, kind)?;
    let m = times.len();
    let lo = (m - 1) as f64 + cfg.n_lower_offset;
    let hi = cfg.n_upper;
    if hi <= lo {
        return Err(EstimateError::EmptyBracket {
            n_upper: hi,
            n: m,
        });
    }
    let sys = System::new(times, kind);
    let x0 = 2.0 * m as f64;

    let mut candidates = Vec::new();
    if let Some(out) = newton_only(&sys, x0, lo, hi, cfg) {
        candidates.push(out);
    }
    if cfg.fallback {
        for bracket in scan_brackets(&sys, lo, hi, SCAN_POINTS) {
            let out = bisect(&sys, bracket, cfg);
            if out.converged {
                candidates.push(out);
            }
        }
    }

    let mut best: Option<(f64, EstimationResult)> = None;
    for out in candidates {
        let phi = sys.phi(out.root);
        if !(phi.is_finite() && phi > 0.0) {
            continue;
        }
        let objective = sys.objective(out.root, phi);
        let result = EstimationResult {
            params: JmParams {
                n: out.root,
                phi,
            },
            kind,
            iterations: out.iterations,
            residual: out.residual,
            converged: true,
            objective,
        };
        let replace = match &best {
            None => true,
            Some((obj, prev)) => {
                objective < *obj || (objective == *obj && out.root < prev.params.n)
            }
        };
        if replace {
            best = Some((objective, result));
        }
    }
    if let Some((_, result)) = best {
        return Ok(result);
    }

    let params = boundary_estimate(times, kind, hi);
    let (f, scale) = sys.eval_scaled(hi);
    Ok(EstimationResult {
        params,
        kind,
        iterations: cfg.max_iter,
        residual: f.abs() / scale.max(f64::MIN_POSITIVE),
        converged: false,
        objective: sys.objective(params.n, params.phi),
    })
}

/// Fit `kind` to a dataset. See [`estimate_times`].
pub fn estimate(
    data: &FailureDataset,
    kind: EstimatorKind,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    estimate_times(data.times(), kind, cfg)
}

pub fn estimate_mle(
    data: &FailureDataset,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    estimate(data, EstimatorKind::Mle, cfg)
}

pub fn estimate_lse(
    data: &FailureDataset,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    estimate(data, EstimatorKind::Lse, cfg)
}

pub fn estimate_loglse(
    data: &FailureDataset,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    estimate(data, EstimatorKind::LogLse, cfg)
}

pub fn estimate_powlse(
    data: &FailureDataset,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<EstimationResult, EstimateError> {
    estimate(data, EstimatorKind::PowLse { alpha }, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_model(n: f64, phi: f64, len: usize) -> Vec<f64> {
        (1..=len).map(|i| 1.0 / (phi * (n - i as f64 + 1.0))).collect()
    }

    #[test]
    fn mle_root_fn_degenerate_single_point() {
        // One observation: g(N) = 1/N - 1/N = 0 identically.
        let x = [5.0];
        for n in [0.5, 1.0, 10.0, 1e4] {
            assert!(mle_root_fn(&x, n).abs() < 1e-15);
        }
        // But estimation rejects n < 3.
        assert_eq!(
            estimate_times(&x, EstimatorKind::Mle, &SolverConfig::default()).unwrap_err(),
            EstimateError::TooFewObservations(1)
        );
    }

    #[test]
    fn exact_model_recovery_all_estimators() {
        let times = exact_model(20.0, 0.01, 10);
        let cfg = SolverConfig::default();
        for kind in [
            EstimatorKind::Mle,
            EstimatorKind::Lse,
            EstimatorKind::LogLse,
            EstimatorKind::PowLse { alpha: -0.5 },
            EstimatorKind::PowLse { alpha: 2.0 },
        ] {
            let r = estimate_times(&times, kind, &cfg).unwrap();
            assert!(r.converged, "{kind} did not converge");
            assert!(
                (r.params.n - 20.0).abs() / 20.0 < 1e-6,
                "{kind}: N = {}",
                r.params.n
            );
            assert!(
                (r.params.phi - 0.01).abs() / 0.01 < 1e-6,
                "{kind}: phi = {}",
                r.params.phi
            );
        }
    }

    #[test]
    fn residuals_vanish_at_converged_estimates() {
        let times = [9.0, 12.0, 11.0, 4.0, 7.0, 2.0, 5.0, 8.0, 5.0, 7.0, 1.0, 6.0];
        let cfg = SolverConfig::default();
        for kind in [
            EstimatorKind::Mle,
            EstimatorKind::Lse,
            EstimatorKind::LogLse,
            EstimatorKind::PowLse { alpha: -1.0 },
        ] {
            let r = estimate_times(&times, kind, &cfg).unwrap();
            if r.converged {
                let (root_res, phi_res) = equation_residuals(&times, kind, r.params);
                assert!(root_res <= 1e-6, "{kind} root residual {root_res}");
                assert!(phi_res <= 1e-6, "{kind} phi residual {phi_res}");
            }
        }
    }

    #[test]
    fn alpha_one_matches_lse() {
        let times = [10.0, 9.0, 13.0, 11.0, 15.0, 12.0, 18.0, 15.0, 22.0, 25.0];
        let cfg = SolverConfig::default();
        let lse = estimate_times(&times, EstimatorKind::Lse, &cfg).unwrap();
        let pow = estimate_times(&times, EstimatorKind::PowLse { alpha: 1.0 }, &cfg).unwrap();
        assert!(lse.converged && pow.converged);
        assert!((lse.params.n - pow.params.n).abs() / lse.params.n < 1e-8);
        assert!((lse.params.phi - pow.params.phi).abs() / lse.params.phi < 1e-8);
    }

    #[test]
    fn constant_data_diagnostics_consistent() {
        let times = [3.0; 5];
        let cfg = SolverConfig::default();
        let r = estimate_times(&times, EstimatorKind::Mle, &cfg).unwrap();
        if r.converged {
            let (root_res, _) = equation_residuals(&times, EstimatorKind::Mle, r.params);
            assert!(root_res <= 1e-6);
        } else {
            assert!(r.params.n == cfg.n_upper);
            assert!(r.params.phi > 0.0);
        }
    }

    #[test]
    fn no_growth_data_yields_boundary_fallback() {
        // Strongly decreasing times: no reliability growth, no root.
        let times = [100.0, 50.0, 20.0, 10.0, 5.0, 2.0];
        let cfg = SolverConfig::default();
        let r = estimate_times(&times, EstimatorKind::Mle, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.params.n, cfg.n_upper);
        // Degenerate predictions approach the sample mean.
        let mean = times.iter().sum::<f64>() / times.len() as f64;
        let pred = 1.0 / (r.params.phi * (r.params.n - times.len() as f64));
        assert!((pred - mean).abs() / mean < 1e-4);
    }

    #[test]
    fn invalid_alpha_rejected() {
        let times = [1.0, 2.0, 3.0];
        let err =
            estimate_times(&times, EstimatorKind::PowLse { alpha: 0.0 }, &SolverConfig::default())
                .unwrap_err();
        assert_eq!(err, EstimateError::InvalidAlpha(0.0));
    }

    #[test]
    fn loglse_boundary_predicts_geometric_mean() {
        let times = [100.0, 50.0, 20.0, 10.0, 5.0, 2.0];
        let params = boundary_estimate(&times, EstimatorKind::LogLse, 1e7);
        let gm = (times.iter().map(|x| x.ln()).sum::<f64>() / times.len() as f64).exp();
        let pred = 1.0 / (params.phi * (params.n - times.len() as f64));
        assert!((pred - gm).abs() / gm < 1e-4);
    }
}
