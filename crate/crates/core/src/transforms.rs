//! The H-family of data transformations and the transformed least-squares
//! objective built on them.
//!
//! A transform `H` maps the positive half-line into the reals and carries a
//! first derivative. The transformed objective
//!
//! ```text
//! S_H = sum_i (H(y_i) - H(f_i))^2
//! ```
//!
//! measures squared error after both observation and fit pass through `H`.
//! With the identity transform this is the classical least-squares
//! objective. By the mean value theorem each term equals
//! `H'(xi_i)^2 (y_i - f_i)^2` for some point between `y_i` and `f_i`, so the
//! whole objective is a weighted least-squares criterion; `implied_weights`
//! exposes those weights. When `|H'| <= 1` on the data's range, the
//! transformed objective is bounded by the untransformed one.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TransformError {
    #[error("log base must be positive and not 1, got {0}")]
    InvalidLogBase(f64),
    #[error("power index must be nonzero")]
    ZeroPowerIndex,
    #[error("transform undefined for non-positive input {0}")]
    NonPositiveInput(f64),
    #[error("observed and fitted sequences must be non-empty")]
    EmptyInput,
    #[error("observed length {observed} != fitted length {fitted}")]
    LengthMismatch { observed: usize, fitted: usize },
}

/// A member of the H-family: identity, logarithm to an arbitrary base, or a
/// power with nonzero exponent. Log and Power are defined for `x > 0` only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Identity,
    Log { base: f64 },
    Power { alpha: f64 },
}

impl Transform {
    pub fn log(base: f64) -> Result<Self, TransformError> {
        if !(base.is_finite() && base > 0.0) || base == 1.0 {
            return Err(TransformError::InvalidLogBase(base));
        }
        Ok(Transform::Log { base })
    }

    pub fn natural_log() -> Self {
        Transform::Log {
            base: std::f64::consts::E,
        }
    }

    pub fn power(alpha: f64) -> Result<Self, TransformError> {
        if !(alpha.is_finite() && alpha != 0.0) {
            return Err(TransformError::ZeroPowerIndex);
        }
        Ok(Transform::Power { alpha })
    }

    fn check_domain(&self, x: f64) -> Result<(), TransformError> {
        match self {
            Transform::Identity => Ok(()),
            _ if x > 0.0 && x.is_finite() => Ok(()),
            _ => Err(TransformError::NonPositiveInput(x)),
        }
    }

    /// Evaluate `H(x)`.
    ///
    /// Log is computed in natural-log space (`ln x / ln base`) so estimates
    /// differ between bases only by one multiplication. Power uses repeated
    /// multiplication for small integer exponents and `exp(alpha ln x)`
    /// otherwise.
    pub fn apply(&self, x: f64) -> Result<f64, TransformError> {
        self.check_domain(x)?;
        Ok(match *self {
            Transform::Identity => x,
            Transform::Log { base } => x.ln() / base.ln(),
            Transform::Power { alpha } => pow_pos(x, alpha),
        })
    }

    /// Evaluate `H'(x)`: 1 for identity, `1/(x ln base)` for log,
    /// `alpha x^(alpha-1)` for power.
    pub fn derivative(&self, x: f64) -> Result<f64, TransformError> {
        self.check_domain(x)?;
        Ok(match *self {
            Transform::Identity => 1.0,
            Transform::Log { base } => 1.0 / (x * base.ln()),
            Transform::Power { alpha } => alpha * pow_pos(x, alpha - 1.0),
        })
    }
}

/// `x^a` for `x > 0`: exact repeated multiplication for small integer `a`,
/// exp/log space otherwise.
fn pow_pos(x: f64, a: f64) -> f64 {
    if a == 0.0 {
        return 1.0;
    }
    if a.fract() == 0.0 && a.abs() <= 64.0 {
        return x.powi(a as i32);
    }
    (a * x.ln()).exp()
}

/// Input to the transformed objective: observation/fit pairs plus the
/// transform applied to both sides.
#[derive(Debug, Clone)]
pub struct FnlseInput<'a> {
    observed: &'a [f64],
    fitted: &'a [f64],
    transform: Transform,
}

impl<'a> FnlseInput<'a> {
    pub fn new(
        observed: &'a [f64],
        fitted: &'a [f64],
        transform: Transform,
    ) -> Result<Self, TransformError> {
        if observed.is_empty() || fitted.is_empty() {
            return Err(TransformError::EmptyInput);
        }
        if observed.len() != fitted.len() {
            return Err(TransformError::LengthMismatch {
                observed: observed.len(),
                fitted: fitted.len(),
            });
        }
        // Inputs model failure times, which are strictly positive no
        // matter which transform is applied.
        for &v in observed.iter().chain(fitted.iter()) {
            if !(v.is_finite() && v > 0.0) {
                return Err(TransformError::NonPositiveInput(v));
            }
        }
        Ok(Self {
            observed,
            fitted,
            transform,
        })
    }

    pub fn transform(&self) -> Transform {
        self.transform
    }
}

/// The transformed least-squares objective `sum_i (H(y_i) - H(f_i))^2`.
pub fn fnlse_objective(input: &FnlseInput) -> Result<f64, TransformError> {
    let t = input.transform;
    let mut sum = 0.0;
    for (&y, &f) in input.observed.iter().zip(input.fitted) {
        let d = t.apply(y)? - t.apply(f)?;
        sum += d * d;
    }
    Ok(sum)
}

/// Per-term weights `w_i` such that `sum_i w_i (y_i - f_i)^2` equals the
/// transformed objective: `((H(y_i) - H(f_i)) / (y_i - f_i))^2`, or the
/// mean-value limit `H'(y_i)^2` when `y_i = f_i`.
pub fn implied_weights(input: &FnlseInput) -> Result<Vec<f64>, TransformError> {
    let t = input.transform;
    input
        .observed
        .iter()
        .zip(input.fitted)
        .map(|(&y, &f)| {
            if y == f {
                let d = t.derivative(y)?;
                Ok(d * d)
            } else {
                let r = (t.apply(y)? - t.apply(f)?) / (y - f);
                Ok(r * r)
            }
        })
        .collect()
}
