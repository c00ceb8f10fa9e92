//! Command-line surface: single estimations, recursive prediction runs,
//! power-index sweeps, full benchmark-table reproduction, and variance
//! profiles, with optional CSV emission of every series.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 numerical
//! non-convergence (the result is still printed with diagnostics).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::datasets::{self, DatasetId, FileFormat};
use crate::estimators::{estimate, EstimationResult, EstimatorKind};
use crate::jm::FailureDataset;
use crate::reference;
use crate::solver::SolverConfig;
use crate::sweep::{run_recursive, sweep_alpha, AlphaGrid, PredictionRun, SweepResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NONCONVERGENCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "jmfit",
    about = "Jelinski-Moranda reliability estimation with transformed least squares",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Fit one estimator to a dataset and print the parameters.
    Estimate {
        /// Bundled dataset id (ntds|jdm1|jdm2|jdm3|jdm4|att) or a file path.
        dataset: String,
        estimator: EstimatorArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Recursive one-step-ahead prediction over the whole series.
    Predict {
        dataset: String,
        estimator: EstimatorArg,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the power-index grid sweep and report optima.
    Sweep {
        dataset: String,
        /// Comma-separated power indices overriding the default grid.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Reproduce the published RE and Braun-statistic tables on the six
    /// bundled datasets, reporting deviations from the reference values.
    Reproduce {
        /// Restrict to one table: 7 (RE) or 8 (Braun statistic).
        #[arg(long)]
        table: Option<u8>,
        /// Directory to write table7.csv / table8.csv into.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,
    },
    /// Per-prefix sample and residual variances for MLE, LogLSE and the
    /// optimized power estimators.
    Variance {
        dataset: String,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Power index; required for (and only used by) powlse.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Write the detailed per-row CSV here.
    #[arg(long)]
    emit: Option<PathBuf>,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Root tolerance relative to the equation's scale.
    #[arg(long)]
    root_tol: Option<f64>,
    /// Newton-Raphson iteration cap.
    #[arg(long)]
    max_iter: Option<usize>,
}

impl SolverArgs {
    fn apply(&self, mut cfg: SolverConfig) -> SolverConfig {
        if let Some(t) = self.root_tol {
            cfg.root_tol = t;
        }
        if let Some(m) = self.max_iter {
            cfg.max_iter = m;
        }
        cfg
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum EstimatorArg {
    Mle,
    Lse,
    Loglse,
    Powlse,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum OutputFormat {
    Human,
    Csv,
    Jsonl,
}

#[derive(Debug)]
struct CliError {
    message: String,
}

impl CliError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::new(e.to_string())
    }
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprint!("{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Estimate {
            dataset,
            estimator,
            common,
        } => cmd_estimate(&dataset, estimator, &common),
        Command::Predict {
            dataset,
            estimator,
            common,
        } => cmd_predict(&dataset, estimator, &common),
        Command::Sweep {
            dataset,
            grid,
            common,
        } => cmd_sweep(&dataset, grid.as_deref(), &common),
        Command::Reproduce {
            table,
            emit,
            solver,
            format,
        } => cmd_reproduce(table, emit.as_deref(), &solver, format),
        Command::Variance { dataset, common } => cmd_variance(&dataset, &common),
    }
}

fn resolve_dataset(reference: &str) -> Result<FailureDataset, CliError> {
    if let Ok(id) = reference.parse::<DatasetId>() {
        return Ok(datasets::builtin(id));
    }
    let path = Path::new(reference);
    if !path.exists() {
        return Err(CliError::new(format!(
            "{reference:?} is neither a bundled dataset id nor an existing file"
        )));
    }
    Ok(datasets::load(path, FileFormat::infer(path))?)
}

fn resolve_estimator(arg: EstimatorArg, alpha: Option<f64>) -> Result<EstimatorKind, CliError> {
    match (arg, alpha) {
        (EstimatorArg::Mle, None) => Ok(EstimatorKind::Mle),
        (EstimatorArg::Lse, None) => Ok(EstimatorKind::Lse),
        (EstimatorArg::Loglse, None) => Ok(EstimatorKind::LogLse),
        (EstimatorArg::Powlse, Some(alpha)) if alpha != 0.0 && alpha.is_finite() => {
            Ok(EstimatorKind::PowLse { alpha })
        }
        (EstimatorArg::Powlse, Some(alpha)) => {
            Err(CliError::new(format!("--alpha must be nonzero, got {alpha}")))
        }
        (EstimatorArg::Powlse, None) => Err(CliError::new(
            "powlse requires --alpha <nonzero real>; usage: <dataset> powlse --alpha -0.5",
        )),
        (_, Some(_)) => Err(CliError::new(
            "--alpha is only meaningful with the powlse estimator",
        )),
    }
}

// ---------------------------------------------------------------------
// estimate
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct EstimateRow {
    dataset: String,
    estimator: String,
    alpha: Option<f64>,
    n_hat: f64,
    phi_hat: f64,
    objective: f64,
    iterations: usize,
    residual: f64,
    converged: bool,
}

impl EstimateRow {
    fn new(data: &FailureDataset, r: &EstimationResult) -> Self {
        let alpha = match r.kind {
            EstimatorKind::PowLse { alpha } => Some(alpha),
            _ => None,
        };
        Self {
            dataset: data.name.clone(),
            estimator: r.kind.to_string(),
            alpha,
            n_hat: r.params.n,
            phi_hat: r.params.phi,
            objective: r.objective,
            iterations: r.iterations,
            residual: r.residual,
            converged: r.converged,
        }
    }
}

fn cmd_estimate(
    dataset: &str,
    estimator: EstimatorArg,
    common: &CommonArgs,
) -> Result<i32, CliError> {
    let data = resolve_dataset(dataset)?;
    let kind = resolve_estimator(estimator, common.alpha)?;
    let cfg = common.solver.apply(SolverConfig::default());
    let result = estimate(&data, kind, &cfg)?;
    let row = EstimateRow::new(&data, &result);
    match common.format {
        OutputFormat::Human => {
            println!("dataset    : {} (n = {}, unit = {})", data.name, data.len(), data.unit);
            println!("estimator  : {}", result.kind);
            println!("N_hat      : {}", result.params.n);
            println!("phi_hat    : {}", result.params.phi);
            println!("objective  : {}", result.objective);
            println!("iterations : {}", result.iterations);
            println!("residual   : {:e}", result.residual);
            println!("converged  : {}", result.converged);
        }
        OutputFormat::Csv => write_csv_rows(std::io::stdout().lock(), std::slice::from_ref(&row))?,
        OutputFormat::Jsonl => write_jsonl_rows(std::io::stdout().lock(), std::slice::from_ref(&row))?,
    }
    if let Some(path) = &common.emit {
        emit_csv(path, std::slice::from_ref(&row))?;
    }
    Ok(if result.converged {
        EXIT_OK
    } else {
        EXIT_NONCONVERGENCE
    })
}

// ---------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct PredictStepRow {
    i: usize,
    #[serde(rename = "N_hat")]
    n_hat: f64,
    phi_hat: f64,
    mtbf_hat: f64,
    x_i: f64,
    #[serde(rename = "TE_i")]
    te_i: f64,
    #[serde(rename = "RE_i")]
    re_i: f64,
    #[serde(rename = "TBS_i")]
    tbs_i: f64,
    #[serde(rename = "RBS_i")]
    rbs_i: f64,
    fallback_used: bool,
}

fn step_rows(data: &FailureDataset, run: &PredictionRun) -> Vec<PredictStepRow> {
    run.records
        .iter()
        .map(|r| PredictStepRow {
            i: r.step,
            n_hat: r.params.n,
            phi_hat: r.params.phi,
            mtbf_hat: r.predicted_mtbf,
            x_i: data.times()[r.step - 1],
            te_i: r.te,
            re_i: r.re,
            tbs_i: r.tbs,
            rbs_i: r.rbs,
            fallback_used: r.fallback_used,
        })
        .collect()
}

fn cmd_predict(
    dataset: &str,
    estimator: EstimatorArg,
    common: &CommonArgs,
) -> Result<i32, CliError> {
    let data = resolve_dataset(dataset)?;
    let kind = resolve_estimator(estimator, common.alpha)?;
    let cfg = common.solver.apply(SolverConfig::prediction());
    let run = run_recursive(&data, kind, &cfg)?;
    let rows = step_rows(&data, &run);
    match common.format {
        OutputFormat::Human => {
            let s = &run.summary;
            println!(
                "{} / {}: recursive one-step-ahead prediction over {} steps",
                data.name, run.estimator, s.steps
            );
            let fallbacks = run.records.iter().filter(|r| r.fallback_used).count();
            println!("TE  : {:.3}", s.te);
            println!("RE  : {:.3}", s.re);
            println!("TBS : {:.3}", s.tbs);
            println!("RBS : {:.3}", s.rbs);
            println!("fallback steps: {fallbacks}/{}", s.steps);
        }
        OutputFormat::Csv => write_csv_rows(std::io::stdout().lock(), &rows)?,
        OutputFormat::Jsonl => write_jsonl_rows(std::io::stdout().lock(), &rows)?,
    }
    if let Some(path) = &common.emit {
        emit_csv(path, &rows)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct SweepRow {
    alpha: f64,
    #[serde(rename = "TE")]
    te: f64,
    #[serde(rename = "RE")]
    re: f64,
    #[serde(rename = "TBS")]
    tbs: f64,
    #[serde(rename = "RBS")]
    rbs: f64,
}

fn sweep_rows(result: &SweepResult) -> Vec<SweepRow> {
    result
        .runs
        .iter()
        .map(|(alpha, run)| SweepRow {
            alpha: *alpha,
            te: run.summary.te,
            re: run.summary.re,
            tbs: run.summary.tbs,
            rbs: run.summary.rbs,
        })
        .collect()
}

fn parse_grid(spec: Option<&str>) -> Result<AlphaGrid, CliError> {
    match spec {
        None => Ok(AlphaGrid::default()),
        Some(s) => {
            let values: Result<Vec<f64>, _> =
                s.split(',').map(|t| t.trim().parse::<f64>()).collect();
            let values = values.map_err(|e| CliError::new(format!("bad --grid: {e}")))?;
            Ok(AlphaGrid::new(values)?)
        }
    }
}

fn cmd_sweep(dataset: &str, grid: Option<&str>, common: &CommonArgs) -> Result<i32, CliError> {
    let data = resolve_dataset(dataset)?;
    let grid = parse_grid(grid)?;
    let cfg = common.solver.apply(SolverConfig::prediction());
    let result = sweep_alpha(&data, &grid, &cfg)?;
    let rows = sweep_rows(&result);
    let (best_re_alpha, best_re) = result.best_by_re();
    let (best_rbs_alpha, best_rbs) = result.best_by_rbs();
    match common.format {
        OutputFormat::Human => {
            println!("{}: power-index sweep over {} values", data.name, rows.len());
            println!("{:>8} {:>12} {:>12} {:>10} {:>10}", "alpha", "TE", "RE", "TBS", "RBS");
            for r in &rows {
                println!(
                    "{:>8} {:>12.3} {:>12.3} {:>10.3} {:>10.3}",
                    r.alpha, r.te, r.re, r.tbs, r.rbs
                );
            }
            println!(
                "alpha_opt(TE)  = {} -> RE  {:.3}",
                result.alpha_opt_te,
                result.run_opt_te().summary.re
            );
            println!(
                "alpha_opt(TBS) = {} -> RBS {:.3}",
                result.alpha_opt_tbs,
                result.run_opt_tbs().summary.rbs
            );
            println!("alpha_best(RE)  = {best_re_alpha} -> RE  {best_re:.3}");
            println!("alpha_best(RBS) = {best_rbs_alpha} -> RBS {best_rbs:.3}");
        }
        OutputFormat::Csv => write_csv_rows(std::io::stdout().lock(), &rows)?,
        OutputFormat::Jsonl => write_jsonl_rows(std::io::stdout().lock(), &rows)?,
    }
    if let Some(path) = &common.emit {
        emit_csv(path, &rows)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------

#[derive(Serialize, Clone)]
struct ReproduceRow {
    table: u8,
    dataset: String,
    estimator: String,
    alpha: Option<f64>,
    reference_alpha: Option<f64>,
    value: f64,
    reference: f64,
    deviation_pct: f64,
}

impl ReproduceRow {
    fn new(
        table: u8,
        dataset: &str,
        estimator: &str,
        alpha: Option<f64>,
        reference_alpha: Option<f64>,
        value: f64,
        reference: f64,
    ) -> Self {
        Self {
            table,
            dataset: dataset.to_string(),
            estimator: estimator.to_string(),
            alpha,
            reference_alpha,
            value,
            reference,
            deviation_pct: 100.0 * (value - reference) / reference,
        }
    }
}

/// Everything `reproduce` needs from one dataset, computed in one pass.
struct DatasetEvaluation {
    id: DatasetId,
    mle: PredictionRun,
    lse: PredictionRun,
    loglse: PredictionRun,
    sweep: SweepResult,
}

fn evaluate_dataset(id: DatasetId, cfg: &SolverConfig) -> Result<DatasetEvaluation, CliError> {
    let data = datasets::builtin(id);
    let grid = AlphaGrid::default();
    Ok(DatasetEvaluation {
        id,
        mle: run_recursive(&data, EstimatorKind::Mle, cfg)?,
        lse: run_recursive(&data, EstimatorKind::Lse, cfg)?,
        loglse: run_recursive(&data, EstimatorKind::LogLse, cfg)?,
        sweep: sweep_alpha(&data, &grid, cfg)?,
    })
}

fn reproduce_rows(evals: &[DatasetEvaluation]) -> (Vec<ReproduceRow>, Vec<ReproduceRow>) {
    let mut t7 = Vec::new();
    let mut t8 = Vec::new();
    for ev in evals {
        let name = ev.id.name();
        let re_ref = reference::re_reference(ev.id);
        let (best_re_alpha, best_re) = ev.sweep.best_by_re();
        t7.push(ReproduceRow::new(7, name, "MLE", None, None, ev.mle.summary.re, re_ref.mle));
        t7.push(ReproduceRow::new(7, name, "LSE", None, None, ev.lse.summary.re, re_ref.lse));
        t7.push(ReproduceRow::new(
            7, name, "LogLSE", None, None, ev.loglse.summary.re, re_ref.loglse,
        ));
        t7.push(ReproduceRow::new(
            7,
            name,
            "powLSE opt",
            Some(ev.sweep.alpha_opt_te),
            Some(re_ref.opt_alpha),
            ev.sweep.run_opt_te().summary.re,
            re_ref.opt_re,
        ));
        t7.push(ReproduceRow::new(
            7,
            name,
            "powLSE best",
            Some(best_re_alpha),
            Some(re_ref.best_alpha),
            best_re,
            re_ref.best_re,
        ));

        let bs_ref = reference::braun_reference(ev.id);
        let (best_rbs_alpha, best_rbs) = ev.sweep.best_by_rbs();
        t8.push(ReproduceRow::new(8, name, "MLE", None, None, ev.mle.summary.rbs, bs_ref.mle));
        t8.push(ReproduceRow::new(8, name, "LSE", None, None, ev.lse.summary.rbs, bs_ref.lse));
        t8.push(ReproduceRow::new(
            8, name, "LogLSE", None, None, ev.loglse.summary.rbs, bs_ref.loglse,
        ));
        t8.push(ReproduceRow::new(
            8,
            name,
            "powLSE opt",
            Some(ev.sweep.alpha_opt_tbs),
            Some(bs_ref.opt_alpha),
            ev.sweep.run_opt_tbs().summary.rbs,
            bs_ref.opt_rbs,
        ));
        t8.push(ReproduceRow::new(
            8,
            name,
            "powLSE best",
            Some(best_rbs_alpha),
            Some(bs_ref.best_alpha),
            best_rbs,
            bs_ref.best_rbs,
        ));
    }
    (t7, t8)
}

fn print_reproduce_table(title: &str, rows: &[ReproduceRow]) {
    println!("{title}");
    println!(
        "{:<9} {:<12} {:>8} {:>8} {:>11} {:>11} {:>9}",
        "dataset", "estimator", "alpha", "ref_a", "value", "reference", "dev"
    );
    for r in rows {
        let alpha = r.alpha.map_or(String::new(), |a| format!("{a}"));
        let ref_alpha = r.reference_alpha.map_or(String::new(), |a| format!("{a}"));
        println!(
            "{:<9} {:<12} {:>8} {:>8} {:>11.3} {:>11.3} {:>+8.2}%",
            r.dataset, r.estimator, alpha, ref_alpha, r.value, r.reference, r.deviation_pct
        );
    }
}

fn cmd_reproduce(
    table: Option<u8>,
    emit: Option<&Path>,
    solver: &SolverArgs,
    format: OutputFormat,
) -> Result<i32, CliError> {
    if let Some(t) = table {
        if t != 7 && t != 8 {
            return Err(CliError::new(format!("--table must be 7 or 8, got {t}")));
        }
    }
    let cfg = solver.apply(SolverConfig::prediction());
    let mut evals = Vec::new();
    for id in DatasetId::ALL {
        evals.push(evaluate_dataset(id, &cfg)?);
    }
    let (t7, t8) = reproduce_rows(&evals);
    let selected: Vec<ReproduceRow> = match table {
        Some(7) => t7.clone(),
        Some(8) => t8.clone(),
        _ => t7.iter().chain(t8.iter()).cloned().collect(),
    };
    match format {
        OutputFormat::Human => {
            if table.unwrap_or(7) == 7 {
                print_reproduce_table("RE evaluation (percent)", &t7);
            }
            if table.is_none() {
                println!();
            }
            if table.unwrap_or(8) == 8 {
                print_reproduce_table("Braun statistic evaluation (ratio)", &t8);
            }
        }
        OutputFormat::Csv => write_csv_rows(std::io::stdout().lock(), &selected)?,
        OutputFormat::Jsonl => write_jsonl_rows(std::io::stdout().lock(), &selected)?,
    }
    if let Some(dir) = emit {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::new(format!("cannot create {}: {e}", dir.display())))?;
        if table.unwrap_or(7) == 7 {
            emit_csv(&dir.join("table7.csv"), &t7)?;
        }
        if table.unwrap_or(8) == 8 {
            emit_csv(&dir.join("table8.csv"), &t8)?;
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// variance
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct VarianceRow {
    m: usize,
    variance: f64,
    var_mle: f64,
    var_loglse: f64,
    var_powlse_re: f64,
    var_powlse_bs: f64,
}

fn cmd_variance(dataset: &str, common: &CommonArgs) -> Result<i32, CliError> {
    let data = resolve_dataset(dataset)?;
    let cfg = common.solver.apply(SolverConfig::prediction());
    let grid = AlphaGrid::default();
    let sweep = sweep_alpha(&data, &grid, &cfg)?;
    let kinds = [
        EstimatorKind::Mle,
        EstimatorKind::LogLse,
        EstimatorKind::PowLse {
            alpha: sweep.alpha_opt_te,
        },
        EstimatorKind::PowLse {
            alpha: sweep.alpha_opt_tbs,
        },
    ];
    let times = data.times();
    let mut rows = Vec::new();
    for m in 3..data.len() {
        let prefix = &times[..m];
        let mut vars = [0.0f64; 4];
        for (slot, kind) in kinds.iter().enumerate() {
            let fit = crate::estimators::estimate_times(prefix, *kind, &cfg)?;
            let fitted: Vec<f64> = (1..=m)
                .map(|j| 1.0 / (fit.params.phi * (fit.params.n - j as f64 + 1.0)))
                .collect();
            vars[slot] = prefix
                .iter()
                .zip(&fitted)
                .map(|(&x, &f)| (x - f) * (x - f))
                .sum::<f64>()
                / m as f64;
        }
        let xbar = prefix.iter().sum::<f64>() / m as f64;
        let variance = prefix.iter().map(|&x| (x - xbar) * (x - xbar)).sum::<f64>() / m as f64;
        rows.push(VarianceRow {
            m,
            variance,
            var_mle: vars[0],
            var_loglse: vars[1],
            var_powlse_re: vars[2],
            var_powlse_bs: vars[3],
        });
    }
    match common.format {
        OutputFormat::Human => {
            println!(
                "{}: variance profile (powLSE RE alpha = {}, powLSE BS alpha = {})",
                data.name, sweep.alpha_opt_te, sweep.alpha_opt_tbs
            );
            println!(
                "{:>4} {:>14} {:>14} {:>14} {:>14} {:>14}",
                "m", "variance", "var_mle", "var_loglse", "var_powlse_re", "var_powlse_bs"
            );
            for r in &rows {
                println!(
                    "{:>4} {:>14.3} {:>14.3} {:>14.3} {:>14.3} {:>14.3}",
                    r.m, r.variance, r.var_mle, r.var_loglse, r.var_powlse_re, r.var_powlse_bs
                );
            }
        }
        OutputFormat::Csv => write_csv_rows(std::io::stdout().lock(), &rows)?,
        OutputFormat::Jsonl => write_jsonl_rows(std::io::stdout().lock(), &rows)?,
    }
    if let Some(path) = &common.emit {
        emit_csv(path, &rows)?;
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// output plumbing
// ---------------------------------------------------------------------

fn write_csv_rows<W: Write, R: Serialize>(writer: W, rows: &[R]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)
            .map_err(|e| CliError::new(format!("csv write failed: {e}")))?;
    }
    w.flush()
        .map_err(|e| CliError::new(format!("csv flush failed: {e}")))?;
    Ok(())
}

fn write_jsonl_rows<W: Write, R: Serialize>(mut writer: W, rows: &[R]) -> Result<(), CliError> {
    for row in rows {
        let line = serde_json::to_string(row)
            .map_err(|e| CliError::new(format!("json serialization failed: {e}")))?;
        writeln!(writer, "{line}").map_err(|e| CliError::new(format!("write failed: {e}")))?;
    }
    Ok(())
}

fn emit_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<(), CliError> {
    let file = fs::File::create(path)
        .map_err(|e| CliError::new(format!("cannot create {}: {e}", path.display())))?;
    write_csv_rows(file, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimator_resolution() {
        assert_eq!(
            resolve_estimator(EstimatorArg::Mle, None).unwrap(),
            EstimatorKind::Mle
        );
        assert_eq!(
            resolve_estimator(EstimatorArg::Powlse, Some(-0.5)).unwrap(),
            EstimatorKind::PowLse { alpha: -0.5 }
        );
        assert!(resolve_estimator(EstimatorArg::Powlse, None).is_err());
        assert!(resolve_estimator(EstimatorArg::Powlse, Some(0.0)).is_err());
        assert!(resolve_estimator(EstimatorArg::Lse, Some(1.0)).is_err());
    }

    #[test]
    fn grid_parsing() {
        let g = parse_grid(Some("-2,-1,0.5,1")).unwrap();
        assert_eq!(g.values(), &[-2.0, -1.0, 0.5, 1.0]);
        assert!(parse_grid(Some("1,zebra")).is_err());
        assert!(parse_grid(Some("1,0,2")).is_err());
        assert_eq!(parse_grid(None).unwrap(), AlphaGrid::default());
    }

    #[test]
    fn bad_dataset_reference_is_usage_error() {
        assert!(resolve_dataset("no-such-dataset").is_err());
    }
}
