//! `cotsum`: command-line driver for the cotangent-sum library.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "cotsum", version, about = "Cotangent sums c0(r/b): values, scans, asymptotics, self-checks")]
struct Cli {
    /// Worker threads (defaults to the available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print c0(r/b), Q(r/b), V(r/b) and the Estermann value at s = 0.
    C0(C0Args),
    /// Values of c0 over a window or the full range, with a moment report.
    Scan(ScanArgs),
    /// Residuals of the asymptotic expansion of c0(1/b), or a C1 fit.
    Asympt(AsymptArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PrecisionArg {
    Default,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum C0Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct C0Args {
    #[arg(long)]
    r: u64,
    #[arg(long)]
    b: u64,
    #[arg(long, value_enum, default_value = "default")]
    precision: PrecisionArg,
    #[arg(long, value_enum, default_value = "text")]
    format: C0Format,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long)]
    b: u64,
    /// Every r in 1..b coprime to b instead of the window.
    #[arg(long)]
    figure: bool,
    #[arg(long, default_value_t = 0.6)]
    a0: f64,
    #[arg(long, default_value_t = 0.8)]
    a1: f64,
    /// Moments of order 1..=2 kmax.
    #[arg(long, default_value_t = 2)]
    kmax: u32,
    /// Also report the KS distance to the limit law.
    #[arg(long)]
    ks: bool,
    /// Truncation exponent of the limit-law sampler.
    #[arg(long, default_value_t = 14)]
    m1: u32,
    /// Samples drawn for the limit law.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Output directory (default: $COTSUM_OUT_DIR, else the working directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Format of the per-r data file; the report is always JSON.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Fixed-order reduction and wall_ms = 0, so reruns are byte-identical.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Debug, Args)]
struct AsymptArgs {
    /// Comma-separated ascending denominators.
    #[arg(long = "b-list", value_delimiter = ',', required = true)]
    b_list: Vec<u64>,
    /// Expansion order.
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Fit C1(r, b0) over the b-list instead of tabulating residuals.
    #[arg(long)]
    c1: bool,
    #[arg(long, default_value_t = 1)]
    r: u64,
    #[arg(long, default_value_t = 0)]
    b0: u64,
    /// Output CSV file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Identities,
    Closed,
    Asymptotics,
    C1,
    Moments,
    Equidist,
    Gseries,
    Expsums,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: SuiteArg,
    /// Largest denominator for the identity suite.
    #[arg(long, default_value_t = 500)]
    bmax: u64,
    /// Denominator for the moment and equidistribution suites.
    #[arg(long, default_value_t = 5003)]
    b: u64,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::C0(a) => commands::c0(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Asympt(a) => commands::asympt(&a),
        Command::Verify(a) => commands::verify(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("cotsum: {e}");
            e.exit_code()
        }
    }
}
