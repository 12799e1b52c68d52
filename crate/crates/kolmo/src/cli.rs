//! The `kolmo` command-line surface: classify, exponents, simulate, verify,
//! and sweep.
//!
//! Exit codes are a total function of the result: `0` for any definitive
//! outcome, `1` for input errors, `2` for a degenerate verdict, `3` for an
//! empirical verification mismatch.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::classify_table;
use crate::lv::{self, ExponentTable};
use crate::manifest::RunManifest;
use crate::model::{
    validate_lv, ClassificationOutcome, ErgodicMeasureInfo, OutcomeKind, Subcommunity, Tolerances,
};
use crate::modelfile::{self, LoadedModel, ModelFile};
use crate::sim::{self, SimConfig};
use crate::zoo;

const EXIT_OK: i32 = 0;
const EXIT_INPUT: i32 = 1;
const EXIT_DEGENERATE: i32 = 2;
const EXIT_MISMATCH: i32 = 3;

#[derive(Parser)]
#[command(
    name = "kolmo",
    version,
    about = "Classify and simulate small stochastic interacting-species models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the long-term behavior from the analytic exponent table.
    Classify(ClassifyArgs),
    /// Print boundary means and Lyapunov exponents for one support.
    Exponents(ExponentsArgs),
    /// Integrate one sample path and write it as CSV.
    Simulate(SimulateArgs),
    /// Check the analytic verdict against a simulation ensemble.
    Verify(VerifyArgs),
    /// Classify over a parameter grid and write the outcomes as CSV.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Path to a JSON model file.
    model: PathBuf,
    /// Exponent dead-zone half-width.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExponentsArgs {
    model: PathBuf,
    /// One-based species list of the boundary support, e.g. `1,3`; empty
    /// string for the origin.
    #[arg(long, default_value = "")]
    support: String,
    /// `analytic` (Lotka-Volterra or switching builtin) or `mc`.
    #[arg(long, default_value = "analytic")]
    method: String,
    #[arg(long, default_value_t = 2e4)]
    t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, env = "KOLMO_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Report the full-support row (identically zero) instead of refusing.
    #[arg(long)]
    allow_full: bool,
    /// Also write the row as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SimulateArgs {
    model: PathBuf,
    /// Comma-separated initial densities; defaults to 0.5 everywhere.
    #[arg(long)]
    y0: Option<String>,
    #[arg(long, default_value_t = 100.0)]
    t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, env = "KOLMO_SEED", default_value_t = 0)]
    seed: u64,
    /// Keep every n-th grid point.
    #[arg(long, default_value_t = 1)]
    stride: usize,
    /// Integration scheme: `log-euler` (positivity-preserving) or `euler`.
    #[arg(long, default_value = "log-euler")]
    scheme: String,
    /// Trajectory CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Optional flat key,value CSV of occupation statistics.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    model: PathBuf,
    #[arg(long, default_value_t = 50)]
    trials: usize,
    #[arg(long, default_value_t = 200.0)]
    t_final: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, env = "KOLMO_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Extinction threshold for survivor labeling.
    #[arg(long, default_value_t = 1e-8)]
    extinction_threshold: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Model template; must be a `builtin` file so parameters are
    /// addressable by name.
    model: PathBuf,
    /// Grid spec `name=value` or `name=start:stop:step`; repeatable.
    #[arg(long = "param", required = true)]
    params: Vec<String>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
}

/// Entry point used by the `kolmo` binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(&args),
        Command::Exponents(args) => cmd_exponents(&args),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Sweep(args) => cmd_sweep(&args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_INPUT
        }
    }
}

fn load_model(path: &Path) -> Result<(LoadedModel, Vec<u8>), String> {
    modelfile::load(path).map_err(|e| e.to_string())
}

/// Analytic exponent table for models that admit one: Lotka-Volterra drift
/// through the linear solves, the switching builtin through its closed
/// forms.
fn analytic_table(loaded: &LoadedModel, tol: &Tolerances) -> Result<ExponentTable, String> {
    if let Some(lv_model) = loaded.model.as_lv() {
        return lv::build_measure_tree(lv_model, tol).map_err(|e| e.to_string());
    }
    if let Some(p) = loaded.switching_params() {
        return zoo::switching_exponent_table(&p, tol).map_err(|e| e.to_string());
    }
    Err(
        "analytic exponents need Lotka-Volterra drift (or the switching builtin); \
         use `exponents --method mc` for general models"
            .to_string(),
    )
}

#[derive(Serialize)]
struct ClassifyReport {
    outcome: String,
    case: Option<String>,
    criterion: Option<f64>,
    attractors: Vec<Subcommunity>,
    rows: Vec<ErgodicMeasureInfo>,
    degenerate_flags: Vec<String>,
    validation_warnings: Vec<String>,
}

fn classify_report(
    loaded: &LoadedModel,
    table: &ExponentTable,
    outcome: &ClassificationOutcome,
) -> ClassifyReport {
    let warnings = loaded
        .model
        .as_lv()
        .map(|m| {
            validate_lv(m)
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect()
        })
        .unwrap_or_default();
    let flags = table
        .degenerate_flags()
        .iter()
        .map(|(s, i)| format!("lambda_{} at {}", i + 1, s))
        .collect();
    ClassifyReport {
        outcome: outcome.kind.name().to_string(),
        case: outcome.evidence.case_id.clone(),
        criterion: outcome.evidence.criterion,
        attractors: match &outcome.kind {
            OutcomeKind::AttractorSet(_) | OutcomeKind::RpsBoundaryAttraction { .. } => {
                outcome.kind.attractor_supports()
            }
            _ => Vec::new(),
        },
        rows: table.rows().cloned().collect(),
        degenerate_flags: flags,
        validation_warnings: warnings,
    }
}

fn print_table(table: &ExponentTable) {
    println!("{:<10} {:<28} lambda", "support", "mean");
    for row in table.rows() {
        let mean = row
            .mean
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join("  ");
        let lambda = row
            .exponents
            .iter()
            .map(|v| format!("{v:+.6}"))
            .collect::<Vec<_>>()
            .join("  ");
        println!("{:<10} {:<28} {}", row.support.to_string(), mean, lambda);
    }
}

fn outcome_summary(outcome: &ClassificationOutcome) -> String {
    match &outcome.kind {
        OutcomeKind::AllExtinct => "AllExtinct (every species dies out)".to_string(),
        OutcomeKind::Persistence => match outcome.evidence.criterion {
            Some(c) => format!("Persistence (cyclic criterion {c:+.6})"),
            None => "Persistence (unique coexistence distribution)".to_string(),
        },
        OutcomeKind::AttractorSet(ms) => {
            let supports: Vec<String> = ms.iter().map(|m| m.support.to_string()).collect();
            format!("AttractorSet {{{}}}", supports.join(", "))
        }
        OutcomeKind::RpsBoundaryAttraction { .. } => format!(
            "RpsBoundaryAttraction (cyclic criterion {:+.6})",
            outcome.evidence.criterion.unwrap_or(f64::NAN)
        ),
        OutcomeKind::Degenerate(report) => format!("Degenerate ({})", report.message),
    }
}

fn cmd_classify(args: &ClassifyArgs) -> Result<i32, String> {
    let (loaded, _) = load_model(&args.model)?;
    let tol = Tolerances::default().with_tol_zero(args.tol);
    let table = analytic_table(&loaded, &tol)?;
    let outcome = classify_table(&table, &tol);
    let report = classify_report(&loaded, &table, &outcome);

    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        for w in &report.validation_warnings {
            eprintln!("warning: {w}");
        }
        println!("outcome: {}", outcome_summary(&outcome));
        if let Some(case) = &report.case {
            println!("case: {case}");
        }
        print_table(&table);
        if report.degenerate_flags.is_empty() {
            println!("degenerate flags: none");
        } else {
            println!("degenerate flags: {}", report.degenerate_flags.join("; "));
        }
    }
    Ok(match outcome.kind {
        OutcomeKind::Degenerate(_) => EXIT_DEGENERATE,
        _ => EXIT_OK,
    })
}

fn analytic_row(
    loaded: &LoadedModel,
    support: &Subcommunity,
    tol: &Tolerances,
) -> Result<ErgodicMeasureInfo, String> {
    if let Some(lv_model) = loaded.model.as_lv() {
        if support.is_empty() {
            let exps = lv::exponents_at_origin(lv_model);
            return ErgodicMeasureInfo::new_analytic(
                support.clone(),
                vec![0.0; lv_model.n()],
                exps,
            )
            .map_err(|e| e.to_string());
        }
        let mean = lv::solve_boundary_means(lv_model, support, tol).map_err(|e| e.to_string())?;
        let probe = ErgodicMeasureInfo::new_analytic(
            support.clone(),
            mean.clone(),
            vec![0.0; lv_model.n()],
        )
        .map_err(|e| e.to_string())?;
        let exps = lv::exponents_at(lv_model, &probe);
        return ErgodicMeasureInfo::new_analytic(support.clone(), mean, exps)
            .map_err(|e| e.to_string());
    }
    let table = analytic_table(loaded, tol)?;
    table.row(support).cloned().ok_or_else(|| {
        format!("no closed-form row for support {support}; use `--method mc` to estimate it")
    })
}

#[derive(Serialize)]
struct ExponentReport {
    support: Subcommunity,
    method: String,
    row: ErgodicMeasureInfo,
}

fn cmd_exponents(args: &ExponentsArgs) -> Result<i32, String> {
    let (loaded, model_bytes) = load_model(&args.model)?;
    let n = loaded.n();
    let support = Subcommunity::parse_one_based(&args.support, n)?;
    let tol = Tolerances::default().with_tol_zero(args.tol);

    if support.len() == n && !support.is_empty() {
        if !args.allow_full {
            return Err(
                "exponents are defined for boundary supports only; the full-support row is \
                 identically zero (pass --allow-full to print it)"
                    .to_string(),
            );
        }
        let row = ErgodicMeasureInfo::new_monte_carlo(
            support.clone(),
            vec![f64::NAN; n],
            vec![0.0; n],
            vec![0.0; n],
        );
        print_exponent_row(&row, "full-support");
        return Ok(EXIT_OK);
    }

    let row = match args.method.as_str() {
        "analytic" => analytic_row(&loaded, &support, &tol)?,
        "mc" => {
            let cfg = SimConfig {
                dt: args.dt,
                t_final: args.t_final,
                seed: args.seed,
                ..SimConfig::default()
            };
            sim::estimate_exponents(&loaded.model, &support, &cfg).map_err(|e| e.to_string())?
        }
        other => {
            return Err(format!(
                "unknown method `{other}` (expected analytic or mc)"
            ))
        }
    };

    if args.json {
        let report = ExponentReport {
            support: support.clone(),
            method: args.method.clone(),
            row: row.clone(),
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print_exponent_row(&row, &args.method);
    }

    if let Some(out) = &args.out {
        let mut csv = String::from("species,mean,lambda,se\n");
        for i in 0..n {
            let se = row
                .std_errors
                .as_ref()
                .map(|s| s[i].to_string())
                .unwrap_or_default();
            csv.push_str(&format!(
                "{},{},{},{se}\n",
                i + 1,
                row.mean[i],
                row.exponents[i]
            ));
        }
        std::fs::write(out, csv).map_err(|e| e.to_string())?;
        let manifest = RunManifest::new(
            std::env::args().collect(),
            &model_bytes,
            serde_json::json!({
                "support": support,
                "method": args.method,
                "t_final": args.t_final,
                "dt": args.dt,
            }),
            args.seed,
        );
        manifest.write_next_to(out).map_err(|e| e.to_string())?;
    }
    Ok(EXIT_OK)
}

fn print_exponent_row(row: &ErgodicMeasureInfo, method: &str) {
    println!("support: {} ({method})", row.support);
    for i in 0..row.n() {
        let se = row
            .std_errors
            .as_ref()
            .map(|s| format!("  se {:.2e}", s[i]))
            .unwrap_or_default();
        println!(
            "  species {}: mean {:>10.6}  lambda {:>+10.6}{se}",
            i + 1,
            row.mean[i],
            row.exponents[i]
        );
    }
}

fn parse_y0(spec: &Option<String>, n: usize) -> Result<Vec<f64>, String> {
    match spec {
        None => Ok(vec![0.5; n]),
        Some(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != n {
                return Err(format!(
                    "--y0 has {} entries, model has {n} species",
                    parts.len()
                ));
            }
            parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|_| format!("invalid density `{p}`"))
                        .and_then(|v| {
                            if v >= 0.0 {
                                Ok(v)
                            } else {
                                Err(format!("densities must be non-negative, got {v}"))
                            }
                        })
                })
                .collect()
        }
    }
}

fn cmd_simulate(args: &SimulateArgs) -> Result<i32, String> {
    let (loaded, model_bytes) = load_model(&args.model)?;
    let n = loaded.n();
    let y0 = parse_y0(&args.y0, n)?;
    let scheme = match args.scheme.as_str() {
        "log-euler" => sim::Scheme::LogEuler,
        "euler" => sim::Scheme::EulerMaruyama,
        other => return Err(format!("unknown scheme `{other}`")),
    };
    let cfg = SimConfig {
        dt: args.dt,
        t_final: args.t_final,
        seed: args.seed,
        store_stride: args.stride,
        scheme,
        ..SimConfig::default()
    };
    let traj = sim::simulate(&loaded.model, &y0, &cfg).map_err(|e| e.to_string())?;
    std::fs::write(&args.out, traj.to_csv()).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new(
        std::env::args().collect(),
        &model_bytes,
        serde_json::to_value(&cfg).unwrap(),
        args.seed,
    );
    manifest
        .write_next_to(&args.out)
        .map_err(|e| e.to_string())?;

    if let Some(stats_out) = &args.stats_out {
        let stats = sim::occupation_stats(&loaded.model, &traj, &cfg).map_err(|e| e.to_string())?;
        let mut csv = String::from("key,value\n");
        for i in 0..n {
            csv.push_str(&format!("mean_x{},{}\n", i + 1, stats.mean[i]));
        }
        for i in 0..n {
            csv.push_str(&format!(
                "exponent_x{},{}\n",
                i + 1,
                stats.empirical_exponents[i]
            ));
        }
        for i in 0..n {
            if let Some(slope) = stats.decay_slopes[i] {
                csv.push_str(&format!("decay_slope_x{},{slope}\n", i + 1));
            }
        }
        csv.push_str(&format!("samples,{}\n", stats.samples));
        std::fs::write(stats_out, csv).map_err(|e| e.to_string())?;
        manifest
            .write_next_to(stats_out)
            .map_err(|e| e.to_string())?;
    }
    println!(
        "wrote {} rows to {} (seed {})",
        traj.len(),
        args.out.display(),
        args.seed
    );
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct VerifyReportJson {
    outcome: String,
    case: Option<String>,
    passed: bool,
    checks: Vec<sim::CheckResult>,
    frequencies: Option<sim::FrequencyReport>,
    stats: BTreeMap<String, f64>,
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, String> {
    let (loaded, _) = load_model(&args.model)?;
    let tol = Tolerances {
        tol_zero: args.tol,
        extinction_threshold: args.extinction_threshold,
        ..Tolerances::default()
    };
    let table = analytic_table(&loaded, &tol)?;
    let outcome = classify_table(&table, &tol);
    if matches!(outcome.kind, OutcomeKind::Degenerate(_)) {
        println!("outcome: {}", outcome_summary(&outcome));
        println!("verification skipped: no empirical contract for a degenerate verdict");
        return Ok(EXIT_DEGENERATE);
    }
    let cfg = SimConfig {
        dt: args.dt,
        t_final: args.t_final,
        seed: args.seed,
        extinction_threshold: args.extinction_threshold,
        ..SimConfig::default()
    };
    let report = sim::verify_classification(&loaded.model, &outcome, &cfg, args.trials)
        .map_err(|e| e.to_string())?;

    if args.json {
        let json = VerifyReportJson {
            outcome: report.outcome.clone(),
            case: outcome.evidence.case_id.clone(),
            passed: report.passed(),
            checks: report.checks.clone(),
            frequencies: report.frequencies.clone(),
            stats: report.stats.clone(),
        };
        println!("{}", serde_json::to_string_pretty(&json).unwrap());
    } else {
        println!("outcome: {}", outcome_summary(&outcome));
        if let Some(freqs) = &report.frequencies {
            for (pattern, f) in freqs.frequencies() {
                println!("  survivors {pattern}: frequency {f:.3}");
            }
            if freqs.unresolved > 0 {
                println!("  unresolved: {}/{}", freqs.unresolved, freqs.trials);
            }
        }
        for check in &report.checks {
            let tag = if check.passed { "PASS" } else { "FAIL" };
            println!("{tag} {} — {}", check.name, check.detail);
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

struct ParamGrid {
    name: String,
    values: Vec<f64>,
}

fn parse_param(spec: &str) -> Result<ParamGrid, String> {
    let (name, rest) = spec.split_once('=').ok_or_else(|| {
        format!("--param must look like name=value or name=start:stop:step, got `{spec}`")
    })?;
    let parts: Vec<&str> = rest.split(':').collect();
    let values = match parts.as_slice() {
        [single] => vec![single
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid value `{single}`"))?],
        [start, stop, step] => {
            let start: f64 = start
                .trim()
                .parse()
                .map_err(|_| format!("invalid start `{start}`"))?;
            let stop: f64 = stop
                .trim()
                .parse()
                .map_err(|_| format!("invalid stop `{stop}`"))?;
            let step: f64 = step
                .trim()
                .parse()
                .map_err(|_| format!("invalid step `{step}`"))?;
            if step <= 0.0 || stop < start {
                return Err(format!("need start <= stop and step > 0 in `{spec}`"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            (0..count).map(|k| start + k as f64 * step).collect()
        }
        _ => return Err(format!("invalid grid spec `{spec}`")),
    };
    Ok(ParamGrid {
        name: name.trim().to_string(),
        values,
    })
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32, String> {
    let (loaded, model_bytes) = load_model(&args.model)?;
    let (builtin_name, base_params) = match &loaded.file {
        ModelFile::Builtin { name, params } => (name.clone(), params.clone()),
        _ => {
            return Err(
                "sweep needs a builtin model template so parameters are addressable by name"
                    .to_string(),
            )
        }
    };
    let grids: Vec<ParamGrid> = args
        .params
        .iter()
        .map(|s| parse_param(s))
        .collect::<Result<_, _>>()?;
    for grid in &grids {
        let known = base_params.contains_key(&grid.name)
            || matches!(
                (builtin_name.as_str(), grid.name.as_str()),
                ("rps", "alpha" | "beta" | "sigma")
                    | ("switching", "r" | "beta" | "d" | "c" | "eps")
                    | ("figure1", "noise" | "c")
            );
        if !known {
            return Err(format!(
                "parameter `{}` is not addressable in builtin `{builtin_name}`",
                grid.name
            ));
        }
    }

    // Row-major cartesian product in the order the grids were given.
    let mut points: Vec<Vec<f64>> = vec![Vec::new()];
    for grid in &grids {
        let mut next = Vec::with_capacity(points.len() * grid.values.len());
        for point in &points {
            for &v in &grid.values {
                let mut p = point.clone();
                p.push(v);
                next.push(p);
            }
        }
        points = next;
    }

    let tol = Tolerances::default().with_tol_zero(args.tol);
    let rows: Vec<String> = points
        .par_iter()
        .map(|point| {
            let mut params = base_params.clone();
            for (grid, &value) in grids.iter().zip(point) {
                params.insert(grid.name.clone(), serde_json::json!(value));
            }
            let file = ModelFile::Builtin {
                name: builtin_name.clone(),
                params,
            };
            let coords = point
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let (outcome, case, criterion) = match file
                .build()
                .map_err(|e| e.to_string())
                .and_then(|loaded| analytic_table(&loaded, &tol))
            {
                Ok(table) => {
                    let outcome = classify_table(&table, &tol);
                    (
                        outcome.kind.name().to_string(),
                        outcome.evidence.case_id.clone().unwrap_or_default(),
                        outcome
                            .evidence
                            .criterion
                            .map(|c| c.to_string())
                            .unwrap_or_default(),
                    )
                }
                Err(e) => (
                    format!("error: {}", e.replace(',', ";")),
                    String::new(),
                    String::new(),
                ),
            };
            let ode = if builtin_name == "switching" {
                let loaded = file_params_to_switch(&grids, point, &base_params);
                loaded
                    .and_then(|p| zoo::switching_ode_permanence(&p).ok())
                    .map(|p| format!("{p:?}"))
                    .unwrap_or_default()
            } else {
                String::new()
            };
            format!("{coords},{outcome},{case},{criterion},{ode}")
        })
        .collect();

    let mut csv = String::new();
    let names: Vec<String> = grids.iter().map(|g| g.name.clone()).collect();
    csv.push_str(&names.join(","));
    csv.push_str(",outcome,case,criterion,ode_permanence\n");
    for row in &rows {
        csv.push_str(row);
        csv.push('\n');
    }
    std::fs::write(&args.out, csv).map_err(|e| e.to_string())?;
    let manifest = RunManifest::new(
        std::env::args().collect(),
        &model_bytes,
        serde_json::json!({"params": args.params, "tol": args.tol}),
        0,
    );
    manifest
        .write_next_to(&args.out)
        .map_err(|e| e.to_string())?;
    println!("wrote {} grid rows to {}", rows.len(), args.out.display());
    Ok(EXIT_OK)
}

fn file_params_to_switch(
    grids: &[ParamGrid],
    point: &[f64],
    base: &BTreeMap<String, serde_json::Value>,
) -> Option<zoo::SwitchParams> {
    let get = |key: &str| -> Option<f64> {
        for (grid, &value) in grids.iter().zip(point) {
            if grid.name == key {
                return Some(value);
            }
        }
        base.get(key).and_then(|v| v.as_f64())
    };
    Some(zoo::SwitchParams {
        r: get("r")?,
        beta: get("beta")?,
        d: get("d")?,
        c: get("c")?,
        eps: get("eps")?,
    })
}
