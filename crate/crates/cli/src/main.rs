//! Batch front-end for the Goldbach-average verification suites.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed (report
//! still written), 2 configuration errors, 3 data errors (missing or
//! malformed inputs, out-of-coverage requests).

// parameter guards use negated comparisons so NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod report;
mod runs;
mod spec;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use goldbach_core::goldbach::smooth_required_cut;
use goldbach_core::zeros::{load_zeros, ZeroLimit};
use goldbach_core::{Error as CoreError, LambdaTable, ZeroTable};

use report::Report;
use runs::Tolerances;

/// Environment variable naming the default cache directory.
const CACHE_ENV: &str = "GOLDBACH_LAB_CACHE";
const CACHE_FILE: &str = "lambda.glmb";

#[derive(Parser)]
#[command(name = "goldbach-lab", version, about = "Goldbach-average and explicit-formula verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report destination (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Lambda-table cache file; defaults to $GOLDBACH_LAB_CACHE/lambda.glmb
    /// when the environment variable is set.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Suppress the timestamp header line (byte-identical reruns).
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Per-experiment tolerance overrides, repeatable: experiment=value.
    #[arg(long = "tolerance", global = true, value_name = "EXPERIMENT=VALUE")]
    tolerances: Vec<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Lambda table and write the binary cache.
    Sieve {
        #[arg(long)]
        n_max: u64,
    },
    /// Exact-identity suite for the average of Goldbach representations.
    VerifyIdentities {
        #[arg(long, default_value_t = 20_000)]
        n_max: u64,
    },
    /// Fujii-formula residuals over a grid of N against a zero table.
    VerifyFujii {
        #[arg(long, default_value = "1e3:1e6:log1")]
        grid: String,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, conflicts_with = "max_zeros")]
        max_gamma: Option<f64>,
        #[arg(long)]
        max_zeros: Option<usize>,
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// Truncated explicit formula for psi across x and T grids.
    VerifyPsiExplicit {
        #[arg(long, default_value = "1e3:1e5:log1")]
        grid: String,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, conflicts_with = "max_zeros")]
        max_gamma: Option<f64>,
        #[arg(long)]
        max_zeros: Option<usize>,
    },
    /// Smoothed averages against the gamma-weighted zero sums.
    VerifySmooth {
        #[arg(long, default_value = "1e2:1e5:log1")]
        grid: String,
        #[arg(long)]
        zeros: PathBuf,
        #[arg(long, conflicts_with = "max_zeros")]
        max_gamma: Option<f64>,
        #[arg(long)]
        max_zeros: Option<usize>,
    },
    /// Contour identity for the shifted representation sums.
    VerifyContour {
        #[arg(long, default_value = "10,50,200,500")]
        grid: String,
    },
    /// Parseval identity and the N log N coefficient bound.
    VerifyParseval {
        #[arg(long, default_value = "16,100,1000")]
        grid: String,
    },
    /// Transfer-function tables: omega/varpi minimizers, critical points,
    /// asymptotic comparison, bound-transfer inequalities.
    Zfr {
        /// Family spec: constant:theta, logpower:c,a,b, or table:<path>.
        #[arg(long)]
        family: String,
        /// Evaluation grid for x.
        #[arg(long, default_value = "1e3,1e6,1e12", conflicts_with = "x")]
        grid: String,
        /// Single evaluation point (shorthand for --grid <x>).
        #[arg(long)]
        x: Option<f64>,
    },
}

enum CliError {
    Config(String),
    Data(CoreError),
    Io(std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Data(_) | CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Data(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Domain { .. } | CoreError::Param { .. } => CliError::Config(e.to_string()),
            other => CliError::Data(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("goldbach-lab: error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let tolerances =
        Tolerances(spec::parse_tolerances(&cli.tolerances).map_err(CliError::Config)?);
    let cache = cache_path(&cli);
    let mut report = Report::new(Vec::new(), !cli.no_timestamp);

    match &cli.command {
        Command::Sieve { n_max } => {
            let table = obtain_table(*n_max, &cache, true)?;
            report.provenance.push(format!("command: sieve --n-max {n_max}"));
            push_cache_note(&mut report, &cache);
            runs::run_sieve(&table, &mut report)?;
        }
        Command::VerifyIdentities { n_max } => {
            if *n_max < 4 {
                return Err(CliError::Config(format!("--n-max must be at least 4, got {n_max}")));
            }
            let table = obtain_table(*n_max, &cache, false)?;
            report.provenance.push(format!("command: verify-identities --n-max {n_max}"));
            runs::run_identities(&table, *n_max, &tolerances, &mut report)?;
        }
        Command::VerifyFujii { grid, zeros, max_gamma, max_zeros, n_max } => {
            let grid = spec::grid_as_integers(&spec::parse_grid(grid).map_err(CliError::Config)?);
            let zeros = open_zeros(zeros, *max_gamma, *max_zeros)?;
            let needed = n_max.unwrap_or_else(|| grid.iter().copied().max().unwrap_or(4));
            let table = obtain_table(needed, &cache, false)?;
            report.provenance.push(format!(
                "command: verify-fujii, N grid {grid:?}, zeros {} (max_gamma {:.3})",
                zeros.source(),
                zeros.max_gamma()
            ));
            runs::run_fujii(&table, &zeros, &grid, &tolerances, &mut report)?;
        }
        Command::VerifyPsiExplicit { grid, zeros, max_gamma, max_zeros } => {
            let grid = spec::grid_as_integers(&spec::parse_grid(grid).map_err(CliError::Config)?);
            let zeros = open_zeros(zeros, *max_gamma, *max_zeros)?;
            let needed = grid.iter().copied().max().unwrap_or(4);
            let table = obtain_table(needed, &cache, false)?;
            report.provenance.push(format!(
                "command: verify-psi-explicit, x grid {grid:?}, zeros {}",
                zeros.source()
            ));
            runs::run_psi_explicit(&table, &zeros, &grid, &tolerances, &mut report)?;
        }
        Command::VerifySmooth { grid, zeros, max_gamma, max_zeros } => {
            let grid = spec::grid_as_integers(&spec::parse_grid(grid).map_err(CliError::Config)?);
            let zeros = open_zeros(zeros, *max_gamma, *max_zeros)?;
            let needed = grid
                .iter()
                .map(|&n| smooth_required_cut(n, runs::smooth_eps(n)))
                .max()
                .unwrap_or(4);
            let table = obtain_table(needed, &cache, false)?;
            report.provenance.push(format!(
                "command: verify-smooth, N grid {grid:?}, zeros {}",
                zeros.source()
            ));
            runs::run_smooth(&table, &zeros, &grid, &tolerances, &mut report)?;
        }
        Command::VerifyContour { grid } => {
            let grid = spec::grid_as_integers(&spec::parse_grid(grid).map_err(CliError::Config)?);
            if grid.iter().any(|&n| n < 4) {
                return Err(CliError::Config("contour grid needs N >= 4".into()));
            }
            let needed = grid.iter().map(|&n| 40 * n).max().unwrap_or(160);
            let table = obtain_table(needed, &cache, false)?;
            report.provenance.push(format!("command: verify-contour, N grid {grid:?}"));
            runs::run_contour(&table, &grid, &tolerances, &mut report)?;
        }
        Command::VerifyParseval { grid } => {
            let grid = spec::grid_as_integers(&spec::parse_grid(grid).map_err(CliError::Config)?);
            if grid.iter().any(|&n| n < 4) {
                return Err(CliError::Config("parseval grid needs N >= 4".into()));
            }
            let needed = grid.iter().map(|&n| 40 * n).max().unwrap_or(160);
            let table = obtain_table(needed, &cache, false)?;
            report.provenance.push(format!("command: verify-parseval, N grid {grid:?}"));
            runs::run_parseval(&table, &grid, &tolerances, &mut report)?;
        }
        Command::Zfr { family, grid, x } => {
            let eta = spec::parse_family(family).map_err(CliError::Config)?;
            let mut xs = match x {
                Some(x) => vec![*x],
                None => spec::parse_grid(grid).map_err(CliError::Config)?,
            };
            xs.sort_by(f64::total_cmp);
            report.provenance.push(format!(
                "command: zfr --family {family}, x grid {xs:?}, width-hypothesis {}",
                eta.satisfies_width_hypothesis()
            ));
            runs::run_zfr(&eta, &xs, &tolerances, &mut report)?;
        }
    }

    write_report(&cli, &report)?;
    Ok(report.all_pass())
}

fn cache_path(cli: &Cli) -> Option<PathBuf> {
    cli.cache.clone().or_else(|| {
        std::env::var_os(CACHE_ENV).map(|dir| PathBuf::from(dir).join(CACHE_FILE))
    })
}

fn push_cache_note(report: &mut Report, cache: &Option<PathBuf>) {
    if let Some(path) = cache {
        report.provenance.push(format!("cache: {}", path.display()));
    }
}

/// Loads the cache when it exists and covers the request (invalidation is
/// by the magic/version/n_max header alone); otherwise builds, and writes
/// back whenever a cache path is configured. `rebuild` forces a fresh
/// build at exactly `needed` (the sieve subcommand).
fn obtain_table(
    needed: u64,
    cache: &Option<PathBuf>,
    rebuild: bool,
) -> Result<LambdaTable, CliError> {
    if !rebuild {
        if let Some(path) = cache {
            if path.exists() {
                let table = LambdaTable::read_cache_file(path).map_err(CliError::Data)?;
                if table.n_max() >= needed {
                    return Ok(table);
                }
            }
        }
    }
    let table = LambdaTable::build(needed).map_err(CliError::Data)?;
    if let Some(path) = cache {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        table.write_cache_file(path).map_err(CliError::Data)?;
    }
    Ok(table)
}

fn open_zeros(
    path: &std::path::Path,
    max_gamma: Option<f64>,
    max_zeros: Option<usize>,
) -> Result<ZeroTable, CliError> {
    let limit = match (max_gamma, max_zeros) {
        (Some(t), None) => ZeroLimit::Height(t),
        (None, Some(k)) => ZeroLimit::Count(k),
        (None, None) => ZeroLimit::All,
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    load_zeros(path, limit).map_err(CliError::Data)
}

fn write_report(cli: &Cli, report: &Report) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            let w = std::io::BufWriter::new(file);
            emit(cli.format, report, w)?;
        }
        None => {
            let stdout = std::io::stdout();
            emit(cli.format, report, stdout.lock())?;
        }
    }
    Ok(())
}

fn emit<W: std::io::Write>(format: Format, report: &Report, w: W) -> std::io::Result<()> {
    match format {
        Format::Csv => report.write_csv(w),
        Format::Json => report.write_json(w),
    }
}
