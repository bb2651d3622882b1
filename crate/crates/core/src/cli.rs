//! Command-line front end. [`run`] takes the argument list and output
//! streams and returns the process exit code, so every subcommand can be
//! exercised in-process.
//!
//! Exit codes: 0 success, 1 a bound or equality check failed, 2 usage or
//! parse error, 3 numerical failure, 4 I/O error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{check_equality_half, check_equality_quarter, eval_all_with, OperatorPair, PairContext, DEFAULT_GAP_GRID};
use crate::error::Error;
use crate::format::{fmt_complex, fmt_num};
use crate::generators::Ensemble;
use crate::harness::{run_verify, write_csv_report, write_json_report, ReportFormat, VerifyConfig, VerifySummary, DEFAULT_EQUALITY_GRID};
use crate::linalg::ComplexMatrix;
use crate::numrange::{self, DEFAULT_BOUNDARY_POINTS, DEFAULT_TOL};
use crate::scalar_distance::distance_to_scalars;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "numrad", version, about = "Numerical radius, Crawford number and tensor-product bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerical radius w(A)
    Radius(SingleArgs),
    /// Crawford number c(A)
    Crawford(SingleArgs),
    /// Distance to scalars d(A) = inf w(A − λI)
    Dist(SingleArgs),
    /// Every tensor-product bound on the pair (A, B)
    Bounds(BoundsArgs),
    /// Boundary samples of the numerical range as CSV
    Range(RangeArgs),
    /// Rotation equality check on the pair (A, B)
    Equality(EqualityArgs),
    /// Randomized verification sweep
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SingleArgs {
    /// Matrix JSON file
    path: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BoundsFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    path_a: PathBuf,
    path_b: PathBuf,
    /// Defaults to 1e-7·(1 + ‖A‖²‖B‖²)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: BoundsFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Grid of the Crawford-gap λ-search
    #[arg(long, default_value_t = DEFAULT_GAP_GRID)]
    grid: usize,
}

#[derive(Debug, Args)]
struct RangeArgs {
    path: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BOUNDARY_POINTS)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Half,
    Quarter,
}

#[derive(Debug, Args)]
struct EqualityArgs {
    path_a: PathBuf,
    path_b: PathBuf,
    #[arg(value_enum)]
    which: Which,
    #[arg(long, default_value_t = DEFAULT_EQUALITY_GRID)]
    grid: usize,
    /// Defaults to 1e-7·(1 + ‖A‖²‖B‖²)
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Comma-separated operand dimensions
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,6")]
    dims: Vec<usize>,
    /// Comma-separated `A:B` ensemble pairs, or `all`
    #[arg(long, default_value = "all")]
    ensembles: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fixed bound tolerance; by default 1e-7·(1 + ‖A‖²‖B‖²) per pair
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Angles of the equality checks
    #[arg(long, default_value_t = DEFAULT_EQUALITY_GRID)]
    grid: usize,
    #[arg(long, default_value_t = DEFAULT_GAP_GRID)]
    gap_grid: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidTol(_)
            | Error::InvalidArgument(_)
            | Error::UnknownBound(_)
            | Error::DimTooSmall { .. }
            | Error::SizeCap { .. }
            | Error::DimensionMismatch(_)
            | Error::InvalidMatrix(_) => EXIT_USAGE,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_NUMERICAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

type CmdResult = std::result::Result<i32, Failure>;

fn read_matrix(path: &Path) -> std::result::Result<ComplexMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    ComplexMatrix::from_json_str(&text).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn read_pair(a: &Path, b: &Path) -> std::result::Result<OperatorPair, Failure> {
    Ok(OperatorPair::new(read_matrix(a)?, read_matrix(b)?)?)
}

fn check_tol(tol: f64) -> std::result::Result<f64, Failure> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(usage(format!("--tol must be positive, got {tol}")));
    }
    Ok(tol)
}

/// Runs `f` against `--out` if given, else against `stdout`.
fn with_output(
    out: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> std::result::Result<(), Failure> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_failure(path, e))?;
            let mut w = BufWriter::new(file);
            f(&mut w).and_then(|_| w.flush()).map_err(|e| io_failure(path, e))
        }
        None => f(stdout).map_err(|e| Failure { code: EXIT_IO, message: format!("stdout: {e}") }),
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure { code: EXIT_IO, message: e.to_string() }
}

fn cmd_radius(args: &SingleArgs, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(&args.path)?;
    let r = numrange::numerical_radius(&a, check_tol(args.tol)?)?;
    let cert: Vec<String> = r.certificate.iter().map(|z| fmt_complex(*z)).collect();
    writeln!(out, "{}", fmt_num(r.value)).map_err(io)?;
    writeln!(out, "theta_star={}", fmt_num(r.theta_star)).map_err(io)?;
    writeln!(out, "upper_bound={}", fmt_num(r.upper_bound)).map_err(io)?;
    writeln!(out, "evaluations={}", r.evaluations).map_err(io)?;
    writeln!(out, "certificate=[{}]", cert.join(", ")).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_crawford(args: &SingleArgs, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(&args.path)?;
    let r = numrange::crawford_number(&a, check_tol(args.tol)?)?;
    writeln!(out, "{}", fmt_num(r.value)).map_err(io)?;
    writeln!(out, "theta_star={}", fmt_num(r.theta_star)).map_err(io)?;
    writeln!(out, "attained_inside={}", r.attained_inside).map_err(io)?;
    writeln!(out, "upper_bound={}", fmt_num(r.upper_bound)).map_err(io)?;
    writeln!(out, "evaluations={}", r.evaluations).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_dist(args: &SingleArgs, out: &mut dyn Write) -> CmdResult {
    let a = read_matrix(&args.path)?;
    let r = distance_to_scalars(&a, check_tol(args.tol)?)?;
    writeln!(out, "{} at lambda={}", fmt_num(r.value), fmt_complex(r.lambda_star)).map_err(io)?;
    writeln!(out, "lower_bound={}", fmt_num(r.lower_bound)).map_err(io)?;
    writeln!(out, "box_radius={}", fmt_num(r.box_radius)).map_err(io)?;
    writeln!(out, "iterations={}", r.iterations).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_bounds(args: &BoundsArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let pair = read_pair(&args.path_a, &args.path_b)?;
    let tol = match args.tol {
        Some(t) => check_tol(t)?,
        None => pair.default_tol()?,
    };
    if args.grid < 9 {
        return Err(usage("--grid must be at least 9"));
    }
    let ctx = PairContext::with_gap_grid(&pair, tol, args.grid)?;
    let set = eval_all_with(&ctx)?;
    with_output(args.out.as_deref(), stdout, |w| match args.format {
        BoundsFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, &set)?;
            writeln!(w)
        }
        BoundsFormat::Csv => set.write_csv(w),
    })?;
    if let Some((id, e)) = set.errors.first() {
        writeln!(stderr, "error evaluating {id}: {e}").map_err(io)?;
        return Ok(EXIT_NUMERICAL);
    }
    let failed: Vec<&str> = set.reports.iter().filter(|r| !r.holds).map(|r| r.id.as_str()).collect();
    if !failed.is_empty() {
        writeln!(stderr, "BOUND VIOLATION: {} fails at tol {}", failed.join(", "), fmt_num(tol)).map_err(io)?;
        return Ok(EXIT_VIOLATION);
    }
    Ok(EXIT_OK)
}

fn cmd_range(args: &RangeArgs, stdout: &mut dyn Write) -> CmdResult {
    if args.points < 3 {
        return Err(usage(format!("--points must be at least 3, got {}", args.points)));
    }
    let a = read_matrix(&args.path)?;
    let samples = numrange::range_boundary(&a, args.points)?;
    with_output(args.out.as_deref(), stdout, |w| numrange::write_range_csv(&samples, w))?;
    Ok(EXIT_OK)
}

fn cmd_equality(args: &EqualityArgs, stdout: &mut dyn Write) -> CmdResult {
    if args.grid < 4 {
        return Err(usage(format!("--grid must be at least 4, got {}", args.grid)));
    }
    let pair = read_pair(&args.path_a, &args.path_b)?;
    let tol = match args.tol {
        Some(t) => check_tol(t)?,
        None => pair.default_tol()?,
    };
    let report = match args.which {
        Which::Half => check_equality_half(&pair, args.grid, tol)?,
        Which::Quarter => check_equality_quarter(&pair, args.grid, tol)?,
    };
    serde_json::to_writer_pretty(&mut *stdout, &report).map_err(|e| io(e.into()))?;
    writeln!(stdout).map_err(io)?;
    Ok(if report.consistent { EXIT_OK } else { EXIT_VIOLATION })
}

fn parse_ensembles(list: &str) -> std::result::Result<Vec<(Ensemble, Ensemble)>, Failure> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Ensemble::all_pairs());
    }
    list.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| usage(format!("ensemble pair {item:?} is not of the form A:B")))?;
            Ok((a.parse::<Ensemble>()?, b.parse::<Ensemble>()?))
        })
        .collect()
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let format: ReportFormat = args.format.parse()?;
    let cfg = VerifyConfig {
        trials: args.trials,
        dims: args.dims.clone(),
        ensembles: parse_ensembles(&args.ensembles)?,
        master_seed: args.seed,
        tol: args.tol,
        equality_grid: args.grid,
        gap_grid: args.gap_grid,
        workers: args.workers.max(1),
        out_path: args.out.clone(),
        format,
    };
    cfg.validate()?;
    let records = run_verify(&cfg)?;
    with_output(cfg.out_path.as_deref(), stdout, |w| match cfg.format {
        ReportFormat::Json => write_json_report(&cfg, &records, w),
        ReportFormat::Csv => write_csv_report(&records, w),
    })?;
    let summary = VerifySummary::from_records(&records);
    let text = summary.to_text();
    if cfg.out_path.is_some() {
        write!(stdout, "{text}").map_err(io)?;
    } else {
        write!(stderr, "{text}").map_err(io)?;
    }
    let code = summary.exit_code();
    if code == EXIT_VIOLATION {
        writeln!(stderr, "BOUND VIOLATION: {} failing checks", summary.violations).map_err(io)?;
    }
    Ok(code)
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Radius(a) => cmd_radius(a, stdout),
        Command::Crawford(a) => cmd_crawford(a, stdout),
        Command::Dist(a) => cmd_dist(a, stdout),
        Command::Bounds(a) => cmd_bounds(a, stdout, stderr),
        Command::Range(a) => cmd_range(a, stdout),
        Command::Equality(a) => cmd_equality(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "numrad: {}", f.message);
            f.code
        }
    }
}
