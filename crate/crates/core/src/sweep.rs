//! Recursive one-step-ahead prediction and power-index optimization.
//!
//! For each `i = 4..=n` the model is fit on the first `i - 1` failure
//! times and the i-th time is predicted; TE/RE/TBS/RBS are accumulated per
//! step and averaged. The power-index sweep repeats this for every grid
//! value of `alpha` and selects optima by the in-sample criteria (TE, TBS)
//! as well as the directly minimizing values ("best" by RE or RBS).
//!
//! Per-step fits use plain Newton-Raphson (`SolverConfig::prediction`) by
//! default at the CLI: short or non-growth segments whose equations have
//! no reachable root fall through to the degenerate large-N estimate,
//! recorded via `fallback_used`.

use serde::Serialize;
use thiserror::Error;

use crate::criteria::{self, CriterionSummary, StepRecord};
use crate::estimators::{boundary_estimate, estimate_times, EstimateError, EstimatorKind};
use crate::jm::FailureDataset;
use crate::solver::SolverConfig;

#[derive(Debug, Error, PartialEq)]
pub enum SweepError {
    #[error("recursive prediction requires at least 4 observations, got {0}")]
    DatasetTooShort(usize),
    #[error("alpha grid is empty")]
    EmptyGrid,
    #[error("alpha grid must be strictly increasing and nonzero, got {0}")]
    InvalidGrid(f64),
    #[error(transparent)]
    Estimate(#[from] EstimateError),
}

/// The discrete set of power indices to sweep: quarter steps from -2 to 2,
/// zero excluded, by default.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid(Vec<f64>);

impl Default for AlphaGrid {
    fn default() -> Self {
        let values = (-8..=8)
            .filter(|k| *k != 0)
            .map(|k| k as f64 / 4.0)
            .collect();
        AlphaGrid(values)
    }
}

impl AlphaGrid {
    pub fn new(values: Vec<f64>) -> Result<Self, SweepError> {
        if values.is_empty() {
            return Err(SweepError::EmptyGrid);
        }
        for (k, &a) in values.iter().enumerate() {
            if !(a.is_finite() && a != 0.0) || (k > 0 && a <= values[k - 1]) {
                return Err(SweepError::InvalidGrid(a));
            }
        }
        Ok(AlphaGrid(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// A complete recursive prediction run for one dataset and estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredictionRun {
    pub dataset: String,
    pub estimator: EstimatorKind,
    pub records: Vec<StepRecord>,
    pub summary: CriterionSummary,
}

/// Fit on each prefix and predict one step ahead, accumulating criteria.
pub fn run_recursive(
    data: &FailureDataset,
    estimator: EstimatorKind,
    cfg: &SolverConfig,
) -> Result<PredictionRun, SweepError> {
    let times = data.times();
    let n = times.len();
    if n < 4 {
        return Err(SweepError::DatasetTooShort(n));
    }
    let mut records = Vec::with_capacity(n - 3);
    for i in 4..=n {
        let segment = &times[..i - 1];
        let fit = estimate_times(segment, estimator, cfg)?;
        // A fit that cannot produce a positive hazard at the prediction
        // index is as unusable as no fit at all.
        let usable = fit.converged && fit.params.n - i as f64 + 1.0 > 0.0;
        let params = if usable {
            fit.params
        } else {
            boundary_estimate(segment, estimator, cfg.n_upper)
        };
        let fitted: Vec<f64> = (1..=i)
            .map(|j| 1.0 / (params.phi * (params.n - j as f64 + 1.0)))
            .collect();
        let predicted_mtbf = fitted[i - 1];
        let te = criteria::te_segment(segment, &fitted[..i - 1]).expect("equal lengths");
        let re = criteria::re_step(times[i - 1], predicted_mtbf);
        let tbs = degenerate_as_zero(criteria::tbs_segment(segment, &fitted[..i - 1]))?;
        let rbs = degenerate_as_zero(criteria::rbs_step(&times[..i], &fitted))?;
        records.push(StepRecord {
            step: i,
            params,
            predicted_mtbf,
            te,
            re,
            tbs,
            rbs,
            fallback_used: !usable,
        });
    }
    let summary = criteria::summarize(&records, n).expect("n >= 4");
    Ok(PredictionRun {
        dataset: data.name.clone(),
        estimator,
        records,
        summary,
    })
}

/// Constant segments carry no Braun information; treat them as zero rather
/// than failing the whole run.
fn degenerate_as_zero(r: Result<f64, criteria::CriteriaError>) -> Result<f64, SweepError> {
    match r {
        Ok(v) => Ok(v),
        Err(criteria::CriteriaError::DegenerateVariance) => Ok(0.0),
        Err(_) => Ok(f64::NAN),
    }
}

/// Result of sweeping the power index over a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    /// One run per grid value, in grid order.
    pub runs: Vec<(f64, PredictionRun)>,
    /// Grid argmin of the in-sample TE average.
    pub alpha_opt_te: f64,
    /// Grid argmin of the in-sample TBS average.
    pub alpha_opt_tbs: f64,
}

impl SweepResult {
    pub fn run_for(&self, alpha: f64) -> Option<&PredictionRun> {
        self.runs
            .iter()
            .find(|(a, _)| *a == alpha)
            .map(|(_, r)| r)
    }

    pub fn run_opt_te(&self) -> &PredictionRun {
        self.run_for(self.alpha_opt_te).expect("opt alpha in grid")
    }

    pub fn run_opt_tbs(&self) -> &PredictionRun {
        self.run_for(self.alpha_opt_tbs).expect("opt alpha in grid")
    }

    /// Grid value minimizing the predictive RE directly, with its RE.
    pub fn best_by_re(&self) -> (f64, f64) {
        argmin(&self.runs, |r| r.summary.re)
    }

    /// Grid value minimizing the predictive RBS directly, with its RBS.
    pub fn best_by_rbs(&self) -> (f64, f64) {
        argmin(&self.runs, |r| r.summary.rbs)
    }
}

/// Deterministic grid argmin. Ties prefer the alpha closest to 1 (the
/// least-transformed model), then the smaller magnitude.
fn argmin(runs: &[(f64, PredictionRun)], metric: impl Fn(&PredictionRun) -> f64) -> (f64, f64) {
    let mut best: Option<(f64, f64)> = None;
    for (alpha, run) in runs {
        let v = metric(run);
        let replace = match best {
            None => true,
            Some((ba, bv)) => v < bv || (v == bv && tie_key(*alpha) < tie_key(ba)),
        };
        if replace {
            best = Some((*alpha, v));
        }
    }
    best.expect("non-empty grid")
}

fn tie_key(alpha: f64) -> (f64, f64) {
    ((alpha - 1.0).abs(), alpha.abs())
}

/// Run the recursive prediction for every grid alpha and select the optima.
pub fn sweep_alpha(
    data: &FailureDataset,
    grid: &AlphaGrid,
    cfg: &SolverConfig,
) -> Result<SweepResult, SweepError> {
    let mut runs = Vec::with_capacity(grid.values().len());
    for &alpha in grid.values() {
        let run = run_recursive(data, EstimatorKind::PowLse { alpha }, cfg)?;
        runs.push((alpha, run));
    }
    let alpha_opt_te = argmin(&runs, |r| r.summary.te).0;
    let alpha_opt_tbs = argmin(&runs, |r| r.summary.tbs).0;
    Ok(SweepResult {
        runs,
        alpha_opt_te,
        alpha_opt_tbs,
    })
}
