//! Prediction-quality criteria: relative-error measures (TE, RE), the
//! Braun statistic family (TBS, RBS), their averages over a recursive
//! prediction run, and residual-variance profiles.
//!
//! TE and RE are percentages; the Braun quantities are unitless ratios of
//! prediction squared error to sample variance with a small-sample
//! correction factor. Multiplying all times and fits by a positive constant
//! leaves every criterion here unchanged except the variances, which scale
//! by its square.

use serde::Serialize;
use thiserror::Error;

use crate::estimators::EstimatorKind;
use crate::jm::JmParams;

#[derive(Debug, Error, PartialEq)]
pub enum CriteriaError {
    #[error("fitted sequence length {fitted} does not match data length {data}")]
    LengthMismatch { data: usize, fitted: usize },
    #[error("sequence of length {0} is too short for this criterion")]
    TooShort(usize),
    #[error("sample variance is zero (constant data) while residuals are not")]
    DegenerateVariance,
    #[error("summary requires n >= 4, got {0}")]
    SummaryTooShort(usize),
}

/// One step of a recursive one-step-ahead prediction run.
///
/// The fit behind step `i` was made on the first `i - 1` times; `te` and
/// `tbs` judge that fit in-sample, `re` and `rbs` judge the prediction of
/// the i-th time. `fallback_used` marks steps where the estimating
/// equations had no reachable root and the degenerate large-N estimate was
/// used instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub params: JmParams,
    pub predicted_mtbf: f64,
    pub te: f64,
    pub re: f64,
    pub tbs: f64,
    pub rbs: f64,
    pub fallback_used: bool,
}

/// Averages of the four criteria over a run, each divided by `n - 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionSummary {
    pub te: f64,
    pub re: f64,
    pub tbs: f64,
    pub rbs: f64,
    pub steps: usize,
}

/// Sum of in-sample relative errors, in percent:
/// `sum_j |x_j - fit_j| / x_j * 100` over the fitted prefix.
pub fn te_segment(prefix: &[f64], fitted: &[f64]) -> Result<f64, CriteriaError> {
    if prefix.len() != fitted.len() {
        return Err(CriteriaError::LengthMismatch {
            data: prefix.len(),
            fitted: fitted.len(),
        });
    }
    Ok(prefix
        .iter()
        .zip(fitted)
        .map(|(&x, &f)| (x - f).abs() / x)
        .sum::<f64>()
        * 100.0)
}

/// One-step-ahead relative error in percent.
pub fn re_step(x: f64, predicted: f64) -> f64 {
    (x - predicted).abs() / x * 100.0
}

/// Braun statistic over the tail `i = s..=n` (1-based `s`):
///
/// ```text
/// [ sum_{i=s}^n (x_i - fit_i)^2 / sum_{i=s}^n (x_i - xbar)^2 ] * (n-s)/(n-s-1)
/// ```
///
/// where `xbar` is the mean of the FULL sequence. Requires `s <= n - 2` so
/// the correction factor is finite.
pub fn braun(observed: &[f64], predicted: &[f64], s: usize) -> Result<f64, CriteriaError> {
    let n = observed.len();
    if predicted.len() != n {
        return Err(CriteriaError::LengthMismatch {
            data: n,
            fitted: predicted.len(),
        });
    }
    if s < 1 || s + 2 > n {
        return Err(CriteriaError::TooShort(n));
    }
    let xbar = observed.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in (s - 1)..n {
        let e = observed[i] - predicted[i];
        let v = observed[i] - xbar;
        num += e * e;
        den += v * v;
    }
    let factor = (n - s) as f64 / (n - s - 1) as f64;
    ratio(num, den).map(|r| r * factor)
}

/// In-sample Braun statistic of a length-`m` fitted prefix (`m = i - 1`,
/// `i >= 4`), with the mean taken over the prefix itself and correction
/// factor `(i-2)/(i-3) = (m-1)/(m-2)`.
pub fn tbs_segment(prefix: &[f64], fitted: &[f64]) -> Result<f64, CriteriaError> {
    braun_prefix(prefix, fitted, 3)
}

/// Braun statistic of a fitted prefix extended by the one-step prediction:
/// `prefix_incl` and `fitted` have length `i`, the last fitted value being
/// the prediction. Correction factor `(i-1)/(i-2)`.
pub fn rbs_step(prefix_incl: &[f64], fitted: &[f64]) -> Result<f64, CriteriaError> {
    braun_prefix(prefix_incl, fitted, 4)
}

fn braun_prefix(xs: &[f64], fitted: &[f64], min_len: usize) -> Result<f64, CriteriaError> {
    let m = xs.len();
    if fitted.len() != m {
        return Err(CriteriaError::LengthMismatch {
            data: m,
            fitted: fitted.len(),
        });
    }
    if m < min_len {
        return Err(CriteriaError::TooShort(m));
    }
    let xbar = xs.iter().sum::<f64>() / m as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &f) in xs.iter().zip(fitted) {
        num += (x - f) * (x - f);
        den += (x - xbar) * (x - xbar);
    }
    let factor = (m - 1) as f64 / (m - 2) as f64;
    ratio(num, den).map(|r| r * factor)
}

/// A zero denominator with zero numerator is a perfect fit of constant
/// data and counts as zero; with nonzero residuals it is an error.
fn ratio(num: f64, den: f64) -> Result<f64, CriteriaError> {
    if den == 0.0 {
        if num == 0.0 {
            Ok(0.0)
        } else {
            Err(CriteriaError::DegenerateVariance)
        }
    } else {
        Ok(num / den)
    }
}

/// Average the per-step criteria over a run on `n` observations. Every
/// average divides by `n - 3`, the number of prediction steps; steps before
/// the first prediction contribute zero by convention.
pub fn summarize(records: &[StepRecord], n: usize) -> Result<CriterionSummary, CriteriaError> {
    if n < 4 {
        return Err(CriteriaError::SummaryTooShort(n));
    }
    let k = (n - 3) as f64;
    let mut s = CriterionSummary {
        te: 0.0,
        re: 0.0,
        tbs: 0.0,
        rbs: 0.0,
        steps: records.len(),
    };
    for r in records {
        s.te += r.te;
        s.re += r.re;
        s.tbs += r.tbs;
        s.rbs += r.rbs;
    }
    s.te /= k;
    s.re /= k;
    s.tbs /= k;
    s.rbs /= k;
    Ok(s)
}

/// Sample and residual variances of a length-`m` prefix, per estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarianceProfile {
    pub m: usize,
    pub sample_variance: f64,
    pub residual_variance: Vec<(EstimatorKind, f64)>,
}

/// `(1/m) sum (x_i - xbar)^2` and, per estimator, `(1/m) sum (x_i - fit_i)^2`.
pub fn variance_profile(
    prefix: &[f64],
    fits: &[(EstimatorKind, Vec<f64>)],
) -> Result<VarianceProfile, CriteriaError> {
    let m = prefix.len();
    if m < 2 {
        return Err(CriteriaError::TooShort(m));
    }
    let xbar = prefix.iter().sum::<f64>() / m as f64;
    let sample_variance = prefix.iter().map(|&x| (x - xbar) * (x - xbar)).sum::<f64>() / m as f64;
    let mut residual_variance = Vec::with_capacity(fits.len());
    for (kind, fitted) in fits {
        if fitted.len() != m {
            return Err(CriteriaError::LengthMismatch {
                data: m,
                fitted: fitted.len(),
            });
        }
        let v = prefix
            .iter()
            .zip(fitted)
            .map(|(&x, &f)| (x - f) * (x - f))
            .sum::<f64>()
            / m as f64;
        residual_variance.push((*kind, v));
    }
    Ok(VarianceProfile {
        m,
        sample_variance,
        residual_variance,
    })
}
