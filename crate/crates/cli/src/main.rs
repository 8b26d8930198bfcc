//! `segre-degrees`: hyperdeterminant and ED degrees from the command line.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error, 3 memory cap.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::OutputFormat;

#[derive(Parser, Debug)]
#[command(name = "segre-degrees", version, about = "Exact degrees of Segre products, their duals and ED degrees")]
pub struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: OutputFormat,

    /// Worker threads for table fills and sweeps; output does not depend on it.
    #[arg(long, global = true, env = "SEGRE_DEGREES_JOBS", default_value_t = 1)]
    jobs: usize,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Memory budget for truncated expansions, in bytes.
    #[arg(long, global = true, default_value_t = segre_core::Limits::DEFAULT_CAP_BYTES)]
    cap_bytes: u64,

    /// Record elapsed_ms (JSON field, CSV column, stderr line for plain).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Degree of the hyperdeterminant of format (n_1+1) x ... x (n_d+1).
    Hyperdet {
        /// Comma-separated dimensions n_1,...,n_d.
        dims: String,
        /// Common Veronese weight of every factor.
        #[arg(long)]
        omega: Option<u32>,
    },
    /// Euclidean distance degree of a Segre or Segre-Veronese product.
    Eddeg {
        dims: String,
        /// Generic metric instead of the Frobenius one.
        #[arg(long)]
        generic: bool,
        /// Comma-separated Veronese weights, one per factor.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Reproduce a reference table.
    Table {
        #[arg(value_enum)]
        name: TableName,
        /// Largest base dimension sum (stabilization only).
        #[arg(long, default_value_t = 5)]
        max: u32,
    },
    /// Run a verification suite; exit 1 on any failed check.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Suite size (defaults: identities 30, rw-constants 10, others 7).
        #[arg(long)]
        max: Option<u32>,
    },
    /// Evaluate an asymptotic formula, optionally against exact values.
    Asympt {
        #[arg(value_enum)]
        formula: FormulaName,
        /// Number of factors d (the dimension n for `discriminant`).
        d: u32,
        /// Grid over n: `10`, `5..20` or `5,10,20`.
        points: Option<String>,
        /// Also compute exact values and relative errors.
        #[arg(long)]
        compare: bool,
        /// Veronese weight for `sv-hyperdet` and `discriminant`.
        #[arg(long)]
        omega: Option<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Table2,
    Stabilization,
    DualExample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    RwConstants,
    Stabilization,
    CrossOracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormulaName {
    Hyperdet,
    Ed,
    EdShifted,
    SvHyperdet,
    Binary,
    Discriminant,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<segre_core::Error> for Failure {
    fn from(e: segre_core::Error) -> Self {
        use segre_core::Error as E;
        let code = match e {
            E::InvalidArgument(_) => 2,
            E::CapExceeded { .. } => 3,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn emit(cli: &Cli, report: &output::Report) -> Result<(), Failure> {
    let body = match cli.format {
        OutputFormat::Plain => report.plain.clone().unwrap_or_else(|| report.table.plain()),
        OutputFormat::Csv => report.table.csv(cli.timing),
        OutputFormat::Json => report.table.json(cli.timing),
    };
    let io_fail = |e: std::io::Error| Failure { code: 1, message: format!("write failed: {e}") };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(io_fail)?,
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(io_fail)?,
    }
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    if cli.timing && cli.format == OutputFormat::Plain {
        eprintln!("elapsed_ms: {}", output::float_text(report.table.total_elapsed().as_secs_f64() * 1e3));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    if cli.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
        .map_err(|e| Failure { code: 1, message: format!("thread pool: {e}") })?;
    let limits = segre_core::Limits::new(cli.cap_bytes);
    let report = pool.install(|| commands::dispatch(&cli.command, &limits))?;
    emit(cli, &report)?;
    Ok(!report.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
