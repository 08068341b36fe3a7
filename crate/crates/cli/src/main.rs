//! Batch front end for the verification laboratory.
//!
//! Three subcommands: `means` tabulates integral means of one map,
//! `verify` runs a named suite and reports one record per check, and
//! `report` merges verify outputs into a summary grouped by suite.
//!
//! Exit codes: 0 success / all pass, 1 at least one failed check,
//! 2 argument or evaluation error, 3 inconclusive checks but no failures.
//! Identical flags and seeds reproduce output byte for byte once the
//! generated-at header is suppressed with `--timestamp off`.

mod mapspec;
mod means;
mod output;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Stamp;

#[derive(Debug, Parser)]
#[command(name = "rieszlab", version, about = "Integral means and inequality verification on balls")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Tabulate integral means M_p(r, f) of one map as CSV.
    Means(MeansArgs),
    /// Run a verification suite; one pass/fail/inconclusive record per check.
    Verify(VerifyArgs),
    /// Merge verify reports into one summary CSV with per-suite sections.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct MeansArgs {
    /// Map file (TOML; schema in docs/mapspec.md).
    #[arg(long, value_name = "PATH")]
    map: PathBuf,

    /// Exponents p > 0, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    p: Vec<f64>,

    /// Radii in [0, 1), comma separated; standard grid when absent.
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,

    /// 1-based real component; whole-map Euclidean modulus when absent.
    #[arg(long, value_name = "INDEX")]
    coordinate: Option<usize>,

    /// Sphere rule level (1..=14); a dimension-dependent default when absent.
    #[arg(long)]
    level: Option<u32>,

    /// Output CSV path; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// `off` drops the generated-at header for byte-identical reruns.
    #[arg(long, value_enum, default_value_t = Stamp::On)]
    timestamp: Stamp,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name; see `verify --help` for the list.
    #[arg(long, value_name = "NAME")]
    suite: String,

    /// Exponent override, comma separated (duplicates dropped).
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,

    /// Radius grid override, comma separated (duplicates dropped).
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<f64>>,

    /// Dilatation bounds K >= 1 for suites parameterized by K.
    #[arg(long = "K", value_delimiter = ',')]
    k: Option<Vec<f64>>,

    /// Second-dilatation bound kappa in [0, 1).
    #[arg(long)]
    kappa: Option<f64>,

    /// Seed for the deterministic random families.
    #[arg(long, default_value_t = rieszlab_core::verify::DEFAULT_SEED)]
    seed: u64,

    /// Rule level override (1..=14).
    #[arg(long)]
    level: Option<u32>,

    /// Tolerance override for probes that take one.
    #[arg(long)]
    tolerance: Option<f64>,

    /// Report CSV path; records always print to stdout as well.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// `off` drops the generated-at header for byte-identical reruns.
    #[arg(long, value_enum, default_value_t = Stamp::On)]
    timestamp: Stamp,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report CSVs produced by `verify --out`.
    #[arg(value_name = "REPORT")]
    inputs: Vec<PathBuf>,

    /// Output CSV path; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// `off` drops the generated-at header for byte-identical reruns.
    #[arg(long, value_enum, default_value_t = Stamp::On)]
    timestamp: Stamp,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Means(args) => means::run(&args),
        Cmd::Verify(args) => verify::run(&args),
        Cmd::Report(args) => report::run(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
