//! Command-line front end. Exit codes: 0 ok, 1 a check failed, 2 input error,
//! 3 oracle cap exceeded, 4 output I/O error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::bounds::bound_report;
use crate::error::Error;
use crate::greedy::{run_greedy, GreedyTrace};
use crate::instances::random::fuzz_coverage_instance;
use crate::instances::{load_instance, CoverageConfig, Instance, MassMode};
use crate::matroid::MatroidSpec;
use crate::oracle::{verify_instance, DEFAULT_CAP};
use crate::report::{format_sig, report_csv_row, sweep_csv, REPORT_HEADER};
use crate::submodularity::{check_submodular_monotone, CheckMode};
use crate::sweep::{run_sweep, SweepConfig};

pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Environment variable capping worker threads.
pub const THREADS_ENV: &str = "GREEDY_CERT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "greedy-cert", version, about = "Greedy maximization with per-instance performance certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run greedy on an instance file and print its certificate.
    Solve(SolveArgs),
    /// Compare the certificate chain against the exhaustive optimum.
    OracleVerify(OracleArgs),
    /// Sweep the decay rate of the lattice sensor-coverage benchmark.
    CoverageSweep(SweepArgs),
    /// Test monotonicity and diminishing returns of an instance.
    CheckInstance(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Number of greedy steps; defaults to the matroid rank.
    #[arg(long = "K", visible_alias = "k")]
    pub k: Option<usize>,
    /// Also write the certificate as a one-row CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(required_unless_present = "fuzz", conflicts_with = "fuzz")]
    pub instance: Option<PathBuf>,
    /// Verify COUNT random weighted-coverage instances starting at SEED.
    #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
    pub fuzz: Option<Vec<u64>>,
    #[arg(long = "K", visible_alias = "k")]
    pub k: Option<usize>,
    /// Maximum number of candidates the exhaustive search may visit.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML file with a `[coverage]` section; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub width: Option<usize>,
    #[arg(long)]
    pub height: Option<usize>,
    #[arg(long = "K", visible_alias = "k")]
    pub k: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub lambda_min: Option<f64>,
    #[arg(long)]
    pub lambda_max: Option<f64>,
    #[arg(long)]
    pub lambda_steps: Option<usize>,
    /// `linear`, `uniform` or `raster:PATH`.
    #[arg(long)]
    pub mass: Option<String>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub instance: PathBuf,
    /// Check this many random triples instead of enumerating.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest feasible-string count checked exhaustively.
    #[arg(long, default_value_t = 200_000)]
    pub cap: u64,
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INPUT,
        };
        CliError { code, message: e.to_string() }
    }
}

fn output_error(path: &Path, e: std::io::Error) -> CliError {
    CliError { code: EXIT_IO, message: format!("cannot write {}: {e}", path.display()) }
}

/// Runs a parsed command, returning its stdout text.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::OracleVerify(args) => cmd_oracle_verify(&args),
        Command::CoverageSweep(args) => cmd_coverage_sweep(&args),
        Command::CheckInstance(args) => cmd_check_instance(&args),
    }
}

fn trace_summary(inst: &Instance, trace: &GreedyTrace) -> String {
    let mut out = String::new();
    let chosen: Vec<String> = trace.chosen.iter().map(|&a| inst.label(a)).collect();
    let _ = writeln!(out, "greedy string   ({})", chosen.join(", "));
    for (i, (&a, inc)) in trace.chosen.iter().zip(&trace.increments).enumerate() {
        let _ = writeln!(
            out,
            "  step {:>2}: {:<10} gain {:<14} f = {}  ({} candidates)",
            i + 1,
            inst.label(a),
            format_sig(*inc),
            format_sig(trace.prefix_values[i + 1]),
            trace.candidates[i].len()
        );
    }
    out
}

pub fn cmd_solve(args: &SolveArgs) -> Result<String, CliError> {
    let inst = load_instance(&args.instance)?;
    let k = args.k.unwrap_or(inst.rank());
    let trace = run_greedy(&inst.valuation, &inst.matroid, k)?;
    let report = bound_report(&trace, &inst.matroid)?;

    let mut out = String::new();
    if let Some(name) = &inst.name {
        let _ = writeln!(out, "instance        {name}");
    }
    out.push_str(&trace_summary(&inst, &trace));
    let _ = writeln!(out, "{report}");
    if let Some(path) = &args.csv {
        let csv = format!("{REPORT_HEADER}\n{}\n", report_csv_row(&report));
        fs::write(path, csv).map_err(|e| output_error(path, e))?;
    }
    Ok(out)
}

pub fn cmd_oracle_verify(args: &OracleArgs) -> Result<String, CliError> {
    let mut out = String::new();
    if let Some(path) = &args.instance {
        let inst = load_instance(path)?;
        let k = args.k.unwrap_or(inst.rank());
        let verdict = verify_instance(&inst.valuation, &inst.matroid, k, args.cap)?;
        let _ = writeln!(out, "{verdict}");
        return if verdict.passed() {
            let _ = writeln!(out, "PASS");
            Ok(out)
        } else {
            Err(CliError { code: EXIT_CHECK_FAILED, message: format!("{out}FAIL") })
        };
    }

    let fuzz = args.fuzz.as_deref().unwrap_or_default();
    let (seed, count) = (fuzz[0], fuzz[1]);
    let _ = writeln!(out, "{:>5} {:>20} {:>2} {:>12} {:>12} {:>12} {:>12}  verdict", "#", "seed", "K", "ratio", "bound_new", "bound_cc", "B");
    let mut failures = 0;
    for i in 0..count {
        let s = seed.wrapping_add(i);
        let (inst, k) = fuzz_coverage_instance(s);
        let verdict = verify_instance(&inst.valuation, &inst.matroid, k, args.cap)?;
        let pass = verdict.passed();
        failures += usize::from(!pass);
        let _ = writeln!(
            out,
            "{:>5} {:>20} {:>2} {:>12} {:>12} {:>12} {:>12}  {}",
            i,
            s,
            k,
            format_sig(verdict.ratio),
            format_sig(verdict.report.bound_new),
            format_sig(verdict.report.bound_cc),
            format_sig(verdict.report.b),
            if pass { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(out, "{} of {count} instances passed", count as usize - failures);
    if failures > 0 {
        return Err(CliError { code: EXIT_CHECK_FAILED, message: out });
    }
    Ok(out)
}

/// The `[coverage]` section of a sweep config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverageSection {
    pub width: Option<usize>,
    pub height: Option<usize>,
    #[serde(rename = "K")]
    pub k: Option<usize>,
    pub delta: Option<f64>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_steps: Option<usize>,
    pub mass: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    #[serde(default)]
    coverage: CoverageSection,
}

fn parse_mass(spec: &str, width: usize, height: usize, base: &Path) -> Result<MassMode, CliError> {
    match spec {
        "linear" | "linear_corner" => Ok(MassMode::LinearCorner),
        "uniform" => Ok(MassMode::Uniform),
        other => match other.strip_prefix("raster:") {
            Some(path) => {
                let path = base.join(path);
                MassMode::raster_from_csv(&path, width, height).map_err(|e| CliError { code: EXIT_INPUT, message: e.to_string() })
            }
            None => Err(CliError {
                code: EXIT_INPUT,
                message: format!("unknown mass mode {other:?}; expected linear, uniform or raster:PATH"),
            }),
        },
    }
}

/// Resolves defaults, config file and flags into a sweep configuration.
pub fn sweep_config(args: &SweepArgs) -> Result<SweepConfig, CliError> {
    let (file, base_dir) = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
            let parsed: SweepFile = toml::from_str(&text)
                .map_err(|e| CliError { code: EXIT_INPUT, message: format!("{}: {e}", path.display()) })?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            (parsed.coverage, dir)
        }
        None => (CoverageSection::default(), PathBuf::new()),
    };
    let defaults = SweepConfig::benchmark();
    let width = args.width.or(file.width).unwrap_or(defaults.base.width);
    let height = args.height.or(file.height).unwrap_or(defaults.base.height);
    // Raster paths given on the command line are relative to the cwd.
    let mass = match (&args.mass, &file.mass) {
        (Some(m), _) => parse_mass(m, width, height, Path::new(""))?,
        (None, Some(m)) => parse_mass(m, width, height, &base_dir)?,
        (None, None) => defaults.base.mass.clone(),
    };
    let cfg = SweepConfig {
        base: CoverageConfig {
            width,
            height,
            sensors: args.k.or(file.k).unwrap_or(defaults.base.sensors),
            delta: args.delta.or(file.delta).unwrap_or(defaults.base.delta),
            lambda: 0.0,
            mass,
        },
        lambda_min: args.lambda_min.or(file.lambda_min).unwrap_or(defaults.lambda_min),
        lambda_max: args.lambda_max.or(file.lambda_max).unwrap_or(defaults.lambda_max),
        lambda_steps: args.lambda_steps.or(file.lambda_steps).unwrap_or(defaults.lambda_steps),
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_coverage_sweep(args: &SweepArgs) -> Result<String, CliError> {
    let cfg = sweep_config(args)?;
    let rows = run_sweep(&cfg)?;
    let csv = sweep_csv(&rows);
    let Some(path) = &args.out else {
        return Ok(csv);
    };
    fs::write(path, &csv).map_err(|e| output_error(path, e))?;

    let classical = 1.0 - (-1f64).exp();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}x{} lattice, K = {}, delta = {}, {} decay rates -> {}",
        cfg.base.width,
        cfg.base.height,
        cfg.base.sensors,
        cfg.base.delta,
        rows.len(),
        path.display()
    );
    let _ = writeln!(out, "{:>12} {:>12} {:>12} {:>12}", "lambda", "bound_new", "bound_cc", "alpha");
    for row in &rows {
        let r = &row.report;
        let mark = if r.bound_new > classical && r.bound_cc < classical { "  *" } else { "" };
        let _ = writeln!(
            out,
            "{:>12} {:>12} {:>12} {:>12}{mark}",
            format_sig(row.lambda),
            format!("{:.6}", r.bound_new),
            format!("{:.6}", r.bound_cc),
            format!("{:.6}", r.alpha)
        );
    }
    let _ = writeln!(out, "* bound_new above 1 - 1/e while bound_cc is below it");
    Ok(out)
}

fn string_count(m: &MatroidSpec) -> u128 {
    let n = m.action_count() as u128;
    (0..=m.rank() as u128)
        .map(|j| if m.allows_repetition() { n.saturating_pow(j as u32) } else { (0..j).map(|i| n.saturating_sub(i)).product() })
        .fold(0u128, u128::saturating_add)
}

pub fn cmd_check_instance(args: &CheckArgs) -> Result<String, CliError> {
    let inst = load_instance(&args.instance)?;
    let mut out = String::new();
    let exhaustive = args.samples.is_none() && string_count(&inst.matroid) <= args.cap as u128;
    let mode = if exhaustive {
        CheckMode::Exhaustive
    } else {
        CheckMode::Sampled { samples: args.samples.unwrap_or(10_000), seed: args.seed }
    };

    if exhaustive {
        let axioms = inst.matroid.check_axioms(args.cap);
        if let Ok(axioms) = axioms {
            let _ = writeln!(
                out,
                "matroid axioms  {} strings checked: {} length, {} prefix-closure, {} exchange violations",
                axioms.members_checked,
                axioms.length.len(),
                axioms.hereditary.len(),
                axioms.exchange.len()
            );
        }
    }
    let report = check_submodular_monotone(&inst.valuation, &inst.matroid, mode);
    let _ = writeln!(
        out,
        "{} check: {} pairs, {} triples; {} monotonicity and {} diminishing-returns violations",
        if exhaustive { "exhaustive" } else { "sampled" },
        report.pairs_checked,
        report.triples_checked,
        report.monotone_violations.len(),
        report.diminishing_returns_violations.len()
    );
    for v in report.monotone_violations.iter().chain(&report.diminishing_returns_violations).take(10) {
        let _ = writeln!(out, "  {v:?}");
    }
    if report.is_clean() {
        Ok(out)
    } else {
        Err(CliError { code: EXIT_CHECK_FAILED, message: out })
    }
}

/// Builds the global thread pool, honouring [`THREADS_ENV`].
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse::<usize>().ok()).filter(|&n| n > 0) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}
