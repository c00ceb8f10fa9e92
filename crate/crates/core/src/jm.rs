//! Jelinski-Moranda model primitives: the parameter pair, the per-interval
//! hazard rate, and the mean time between failures it implies.
//!
//! The model assumes a program starts with `N` faults, each repair is
//! immediate and perfect, and during the i-th inter-failure interval the
//! hazard rate is `phi * (N - i + 1)`. The expected length of that interval
//! is the reciprocal of the hazard.

use serde::Serialize;
use thiserror::Error;

/// Errors from Jelinski-Moranda domain types.
#[derive(Debug, Error, PartialEq)]
pub enum JmError {
    /// Parameters must be strictly positive and finite.
    #[error("invalid Jelinski-Moranda parameters: N = {n}, phi = {phi}")]
    InvalidParams { n: f64, phi: f64 },
    /// Hazard requested for an interval index with no remaining faults.
    #[error("interval index {index} exceeds fault count N = {n}")]
    IndexOutOfRange { n: f64, index: usize },
    /// Failure datasets must be non-empty with strictly positive times.
    #[error("invalid failure dataset {name:?}: {reason}")]
    InvalidDataset { name: String, reason: String },
}

/// The Jelinski-Moranda parameter pair.
///
/// `n` is the total fault count, treated as a continuous unknown so the
/// estimating equations can be solved by root finding; `phi` is the
/// per-fault hazard coefficient in reciprocal time units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JmParams {
    pub n: f64,
    pub phi: f64,
}

impl JmParams {
    pub fn new(n: f64, phi: f64) -> Result<Self, JmError> {
        if !(n.is_finite() && phi.is_finite() && n > 0.0 && phi > 0.0) {
            return Err(JmError::InvalidParams { n, phi });
        }
        Ok(Self { n, phi })
    }

    /// Hazard rate of the i-th inter-failure interval, `phi * (N - i + 1)`.
    ///
    /// `i` is 1-based. Fails when `N - i + 1 <= 0` (the model admits no
    /// i-th failure).
    pub fn hazard(&self, i: usize) -> Result<f64, JmError> {
        let remaining = self.n - i as f64 + 1.0;
        if remaining <= 0.0 {
            return Err(JmError::IndexOutOfRange {
                n: self.n,
                index: i,
            });
        }
        Ok(self.phi * remaining)
    }

    /// Expected length of the i-th inter-failure interval,
    /// `1 / (phi * (N - i + 1))`. Strictly increasing in `i` while the
    /// hazard stays positive.
    pub fn mtbf(&self, i: usize) -> Result<f64, JmError> {
        Ok(1.0 / self.hazard(i)?)
    }
}

/// An ordered series of times between failures with provenance metadata.
///
/// All times are strictly positive; estimation additionally requires at
/// least three observations.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureDataset {
    pub name: String,
    pub unit: String,
    times: Vec<f64>,
}

impl FailureDataset {
    pub fn new(
        name: impl Into<String>,
        unit: impl Into<String>,
        times: Vec<f64>,
    ) -> Result<Self, JmError> {
        let name = name.into();
        if times.is_empty() {
            return Err(JmError::InvalidDataset {
                name,
                reason: "no failure times".into(),
            });
        }
        if let Some(pos) = times.iter().position(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(JmError::InvalidDataset {
                name,
                reason: format!("non-positive time {} at entry {}", times[pos], pos + 1),
            });
        }
        Ok(Self {
            name,
            unit: unit.into(),
            times,
        })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hazard_unit_case() {
        let p = JmParams::new(1.0, 1.0).unwrap();
        assert_eq!(p.hazard(1).unwrap(), 1.0);
        assert_eq!(p.mtbf(1).unwrap(), 1.0);
    }

    #[test]
    fn hazard_and_mtbf_direct_arithmetic() {
        let p = JmParams::new(10.0, 0.5).unwrap();
        assert_eq!(p.hazard(1).unwrap(), 5.0);
        assert_eq!(p.hazard(10).unwrap(), 0.5);
        assert_eq!(p.mtbf(1).unwrap(), 0.2);
        assert_eq!(p.mtbf(10).unwrap(), 2.0);
    }

    #[test]
    fn hazard_rejects_exhausted_faults() {
        let p = JmParams::new(3.0, 0.1).unwrap();
        assert!(p.hazard(4).is_err());
        assert!(p.hazard(3).is_ok());
    }

    #[test]
    fn mtbf_times_hazard_is_one() {
        let p = JmParams::new(23.7, 0.013).unwrap();
        for i in 1..=23 {
            let prod = p.mtbf(i).unwrap() * p.hazard(i).unwrap();
            assert!((prod - 1.0).abs() <= f64::EPSILON);
        }
    }

    #[test]
    fn mtbf_increases_with_index() {
        let p = JmParams::new(12.4, 0.07).unwrap();
        let mut last = 0.0;
        for i in 1..=12 {
            let m = p.mtbf(i).unwrap();
            assert!(m > last);
            last = m;
        }
    }

    #[test]
    fn params_reject_nonpositive() {
        assert!(JmParams::new(0.0, 1.0).is_err());
        assert!(JmParams::new(1.0, -2.0).is_err());
        assert!(JmParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn dataset_rejects_bad_times() {
        assert!(FailureDataset::new("d", "Sec.", vec![]).is_err());
        let err = FailureDataset::new("d", "Sec.", vec![1.0, -2.0, 3.0]).unwrap_err();
        match err {
            JmError::InvalidDataset { reason, .. } => assert!(reason.contains("entry 2")),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
