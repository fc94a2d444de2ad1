//! Command-line front end: simulations, verification suites, algebra
//! export and plot scripts.

pub mod config;
pub mod format;
pub mod plot;
pub mod simulate;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::liealg::{ChevalleyAlgebra, Family, RepKind, Representation};

pub use config::RunConfig;
pub use simulate::{run_simulation, SimulationReport};
pub use suites::{replay, run_suite, Counterexample, Suite, SuiteParams, SuiteReport};

/// Sign convention for the structure constants, recorded in reports.
pub const CONVENTION: &str = "extraspecial pairs with positive signs";

/// Failure modes of a command, each tied to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("runtime error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Singular(_) | CliError::Runtime(_) => 3,
        }
    }
}

/// Exit status for a suite that ran and found a residual above tolerance.
pub const EXIT_SUITE_FAILURE: i32 = 1;

/// Algebra metadata attached to every report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AlgebraInfo {
    pub name: String,
    pub family: Family,
    pub rank: usize,
    pub dim: usize,
    pub positive_roots: usize,
    pub degrees: Vec<u32>,
    pub rank_u: usize,
    pub rep: Option<RepKind>,
    pub rep_dim: Option<usize>,
    pub dynkin_index: Option<String>,
}

impl AlgebraInfo {
    pub fn new(alg: &ChevalleyAlgebra, rep: Option<&Representation>) -> Self {
        let rs = alg.root_system();
        Self {
            name: alg.tag().to_string(),
            family: rs.family(),
            rank: rs.rank(),
            dim: alg.dim(),
            positive_roots: alg.num_positive(),
            degrees: rs.degrees().to_vec(),
            rank_u: rs.rank_u(),
            rep: rep.map(|r| r.kind()),
            rep_dim: rep.map(|r| r.dim()),
            dynkin_index: rep.map(|r| r.index().to_string()),
        }
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: crate::LieError| e.to_string())
}

fn parse_rep(s: &str) -> Result<RepKind, String> {
    s.parse().map_err(|e: crate::LieError| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Roots,
    Constants,
    Degrees,
    Adjoint,
}

#[derive(Debug, Parser)]
#[command(name = "gcs", version, about = "Generalized spin Calogero-Sutherland toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a configured run and write a trajectory CSV and a report.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Trajectory path; the report is written next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run a property suite, or replay a recorded counterexample.
    Verify {
        #[arg(long, value_enum, required_unless_present = "replay")]
        suite: Option<Suite>,
        #[arg(long, value_parser = parse_family, required_unless_present = "replay")]
        family: Option<Family>,
        #[arg(long, required_unless_present = "replay")]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, value_parser = parse_rep)]
        rep: Option<RepKind>,
        /// Write the report here instead of printing it.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write the first failing sample here.
        #[arg(long)]
        counterexample: Option<PathBuf>,
        /// Re-evaluate a counterexample file (or a report containing one).
        #[arg(long, conflicts_with_all = ["suite", "family", "rank"])]
        replay: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
    /// Export root data, structure constants, degrees or adjoint matrices.
    Algebra {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        emit: Emit,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a gnuplot script for a trajectory CSV.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        /// Script path; defaults to the input path with extension `.gp`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Adjoint matrices of the numerical basis {e_j} ∪ {E_α}.
#[derive(Clone, Debug, Serialize)]
pub struct AdjointExport {
    pub family: Family,
    pub rank: usize,
    pub basis: Vec<String>,
    /// Row-major matrices, one per basis element.
    pub matrices: Vec<Vec<Vec<f64>>>,
}

pub fn adjoint_export(alg: &ChevalleyAlgebra) -> AdjointExport {
    let rs = alg.root_system();
    let mut basis: Vec<String> = (1..=alg.rank()).map(|j| format!("e_{j}")).collect();
    basis.extend((0..alg.num_roots()).map(|a| format!("E_{}", rs.label(a))));
    let matrices = (0..alg.dim())
        .map(|k| {
            let m = alg.ad_basis(k);
            (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
        })
        .collect();
    AdjointExport {
        family: rs.family(),
        rank: rs.rank(),
        basis,
        matrices,
    }
}

/// Initializes logging from the `GCS_LOG` environment variable.
pub fn init_logging() {
    let env = env_logger::Env::new().filter_or("GCS_LOG", "warn");
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
}

fn to_json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => simulate::write_file(p, text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn load_counterexample(path: &Path) -> Result<Counterexample, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let inner = match value.get("counterexample") {
        Some(serde_json::Value::Null) => {
            return Err(CliError::Config(format!("{} records no counterexample", path.display())))
        }
        Some(c) => c.clone(),
        None => value,
    };
    serde_json::from_value(inner).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ReplayReport<'a> {
    suite: Suite,
    family: Family,
    rank: usize,
    index: usize,
    recorded_residual: f64,
    residual: f64,
    tol: f64,
    passed: bool,
    sample: &'a suites::Sample,
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Simulate { config, out, timing } => {
            let cfg = RunConfig::load(&config)?;
            let base = config.parent().map(Path::to_path_buf).unwrap_or_default();
            let outcome = run_simulation(&cfg, &base, out.as_deref(), timing)?;
            let r = &outcome.report;
            let _ = writeln!(
                stdout,
                "simulated {} to t = {} ({} rows); max energy drift {}",
                r.algebra.name,
                format::float(r.t_final),
                r.rows,
                r.max_energy_drift.map_or("n/a".into(), format::float)
            );
            if let Some(ev) = &r.event {
                let _ = writeln!(stdout, "stopped at t = {}: {}", format::float(ev.t), ev.message);
                return Ok(3);
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            family,
            rank,
            seed,
            tol,
            samples,
            rep,
            report,
            counterexample,
            replay: Some(path),
            timing: _,
        } => {
            let _ = (suite, family, rank, seed, samples, rep, report, counterexample);
            let cx = load_counterexample(&path)?;
            let residual = replay(&cx)?;
            let tol = tol.unwrap_or(cx.tol);
            let passed = residual <= tol;
            let r = ReplayReport {
                suite: cx.suite,
                family: cx.family,
                rank: cx.rank,
                index: cx.index,
                recorded_residual: cx.residual,
                residual,
                tol,
                passed,
                sample: &cx.sample,
            };
            emit(&to_json(&r), None, stdout)?;
            Ok(if passed { 0 } else { EXIT_SUITE_FAILURE })
        }
        Command::Verify {
            suite,
            family,
            rank,
            seed,
            tol,
            samples,
            rep,
            report,
            counterexample,
            replay: None,
            timing,
        } => {
            let missing = || CliError::Usage("--suite, --family and --rank are required".into());
            let params = SuiteParams {
                suite: suite.ok_or_else(missing)?,
                family: family.ok_or_else(missing)?,
                rank: rank.ok_or_else(missing)?,
                rep,
                seed,
                tol,
                samples,
            };
            let r = run_suite(&params, timing)?;
            log::info!("{} on {}: passed = {}, max = {:e}", r.suite.name(), r.algebra.name, r.passed, r.max);
            if let (Some(p), Some(cx)) = (&counterexample, &r.counterexample) {
                simulate::write_file(p, &to_json(cx))?;
            }
            match &report {
                Some(p) => {
                    simulate::write_file(p, &to_json(&r))?;
                    let _ = writeln!(
                        stdout,
                        "{} {} {}: {} (max residual {}, tol {}, {} samples)",
                        r.suite.name(),
                        r.algebra.name,
                        r.algebra.rep.map_or(String::new(), |k| k.to_string()),
                        if r.passed { "PASS" } else { "FAIL" },
                        format::float(r.max),
                        format::float(r.tol),
                        r.samples
                    );
                }
                None => emit(&to_json(&r), None, stdout)?,
            }
            Ok(if r.passed { 0 } else { EXIT_SUITE_FAILURE })
        }
        Command::Algebra { family, rank, emit: what, out } => {
            let alg = ChevalleyAlgebra::build(family, rank).map_err(|e| CliError::Config(e.to_string()))?;
            let text = match what {
                Emit::Roots => to_json(&alg.export_roots()),
                Emit::Constants => to_json(&alg.export()),
                Emit::Degrees => serde_json::to_string(alg.root_system().degrees()).expect("serializable") + "\n",
                Emit::Adjoint => to_json(&adjoint_export(&alg)),
            };
            emit(&text, out.as_deref(), stdout)?;
            Ok(0)
        }
        Command::Plot { input, out } => {
            let header = plot::read_header(&input)?;
            let script = plot::script_for(&input, &header)?;
            let path = out.unwrap_or_else(|| input.with_extension("gp"));
            simulate::write_file(&path, &script)?;
            let _ = writeln!(stdout, "wrote {}", path.display());
            Ok(0)
        }
    }
}

/// Parses `args` and runs the command, returning the process exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
