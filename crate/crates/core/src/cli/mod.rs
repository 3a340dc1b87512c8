//! The `strict-dpp` command line.
//!
//! Exit codes: `0` success, `1` a verification check failed, `2` invalid
//! parameters or arguments (no output file is written), `3` numerical
//! failure (the violated invariant is named on stderr).

mod args;
mod commands;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use args::{parse_continuum_grid, parse_lattice_grid, Format, Grid, OutputArgs, ParamArgs};
pub use output::{Metadata, ParamSummary, TOOL, VERSION};

use crate::kernels::{KernelFamily, LimitKind};
use crate::verify::Suite;
use crate::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "strict-dpp", version, about = "Determinantal point processes from random strict partitions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a correlation kernel on a grid of sites.
    Eval {
        /// Kernel family, e.g. hyper-series, hyper-integrable-a2, plancherel-bessel, gamma, macdonald-bessel.
        #[arg(long)]
        family: KernelFamily,
        #[command(flatten)]
        params: ParamArgs,
        /// Lattice sites: `a..b` or a comma list.
        #[arg(long, conflicts_with = "u")]
        grid: Option<String>,
        /// Half-line points for the continuum kernels: `start:stop:step` or a comma list.
        #[arg(long)]
        u: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification suites and report PASS/FAIL per check.
    Verify {
        /// Restrict to a suite (repeatable): measures, kernels, limits, sampling, specfun.
        #[arg(long = "suite")]
        suites: Vec<Suite>,
        /// Coarser grids and scans.
        #[arg(long)]
        fast: bool,
        /// Also write the report to a file.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Draw configurations from a lattice DPP or from the partition measure.
    Sample {
        #[arg(long)]
        family: KernelFamily,
        #[command(flatten)]
        params: ParamArgs,
        /// Lattice window `1..=N`; defaults to the adaptive window of `psi`.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample partitions from the mixed measure instead of the kernel.
        #[arg(long)]
        from_measure: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the limit scans of the lattice kernel.
    Limits {
        /// Limit to scan (repeatable; all three by default).
        #[arg(long = "limit")]
        limits: Vec<LimitKind>,
        /// `alpha` for the gamma and scaling limits.
        #[arg(long)]
        alpha: Option<f64>,
        /// `theta` for the Plancherel degeneration.
        #[arg(long)]
        theta: Option<f64>,
        /// Comma list of `xi` values along the scan.
        #[arg(long)]
        xi: Option<String>,
        /// Coarser grids.
        #[arg(long)]
        fast: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write reference kernel and operator tables to a directory.
    ExportGolden {
        #[arg(long)]
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Exit code for an error that stopped a command.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) | Error::Io(_) => EXIT_INVALID,
        _ => EXIT_NUMERICAL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { EXIT_OK });
        }
    };
    match commands::dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

pub fn main() -> ExitCode {
    run(std::env::args_os())
}
