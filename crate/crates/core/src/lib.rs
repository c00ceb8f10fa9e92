//! Jelinski-Moranda software-reliability estimation with transformed
//! nonlinear least squares.
//!
//! The crate fits the Jelinski-Moranda model to times-between-failures by
//! four estimators -- maximum likelihood, least squares, log-transformed
//! least squares, and power-transformed least squares with a tunable
//! power index -- each reduced to one-dimensional Newton-Raphson root
//! finding. On top of the estimators sit recursive one-step-ahead MTBF
//! prediction, relative-error and Braun-statistic evaluation, power-index
//! optimization over a discrete grid, and residual-variance profiling,
//! plus six bundled benchmark failure datasets and a CLI that reproduces
//! the published evaluation tables.
//!
//! # Modules
//!
//! - [`transforms`] - the H-family (identity, log, power) and the
//!   transformed least-squares objective.
//! - [`jm`] - model parameters, hazard, MTBF, failure datasets.
//! - [`solver`] - Newton-Raphson with bisection fallback.
//! - [`estimators`] - the four estimating-equation systems.
//! - [`criteria`] - TE/RE, TBS/RBS, summaries, variance profiles.
//! - [`sweep`] - recursive prediction and power-index optimization.
//! - [`datasets`] - bundled benchmark data and file ingestion.
//! - [`reference`] - published reference values for the bundled data.
//! - [`cli`] - command-line interface.

pub mod cli;
pub mod criteria;
pub mod datasets;
pub mod estimators;
pub mod jm;
pub mod reference;
pub mod solver;
pub mod sweep;
pub mod transforms;

pub use criteria::{CriterionSummary, StepRecord};
pub use estimators::{
    estimate, estimate_lse, estimate_loglse, estimate_mle, estimate_powlse, EstimationResult,
    EstimatorKind,
};
pub use jm::{FailureDataset, JmParams};
pub use solver::{SolveOutcome, SolverConfig};
pub use sweep::{run_recursive, sweep_alpha, AlphaGrid, PredictionRun, SweepResult};
pub use transforms::{fnlse_objective, implied_weights, FnlseInput, Transform};
