//! `wco`: command-line front end for the weighted composition operator toolkit.

mod commands;
mod expr;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "wco", version, about = "Classify weighted Hardy spaces and verify Hermitian weighted composition operators")]
pub struct Cli {
    /// Truncation order N for matrices and series.
    #[arg(long, global = true, env = "WCO_DEFAULT_ORDER", default_value_t = wco_core::DEFAULT_ORDER)]
    pub order: usize,

    /// Tolerance override: candidate-weight tolerance for `classify`,
    /// relative quadrature tolerance for `quad`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write CSV tables instead of JSON.
    #[arg(long, global = true)]
    pub csv: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a space from beta(1), beta(2) or from a full weight list.
    Classify {
        #[arg(allow_hyphen_values = true, required_unless_present = "beta_file")]
        beta1: Option<f64>,
        #[arg(allow_hyphen_values = true, required_unless_present = "beta_file")]
        beta2: Option<f64>,
        /// JSON weight list, either `[1, b1, b2, ...]` or `{"order": N, "beta": [...]}`.
        #[arg(long)]
        beta_file: Option<PathBuf>,
    },
    /// Synthesize symbols for a space and run every verification check.
    Check {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Exact a1 interval for which phi maps the disk of radius rho into itself.
    Region {
        /// phi(0), e.g. `0.5` or `0.3-0.2i`.
        #[arg(allow_hyphen_values = true)]
        a0: String,
        #[arg(allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        rho: f64,
    },
    /// Run reports over a parameter grid described by a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Compare series and integral norms of a polynomial.
    Quad {
        #[arg(long, value_enum)]
        family: QuadFamily,
        /// Polynomial in z, e.g. `3*z^2 - (1+i)z + 0.5`.
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, default_value_t = 200)]
        radial: usize,
        #[arg(long, default_value_t = 512)]
        angular: usize,
    },
    /// Full verification report from a JSON config, with optional exports.
    Report {
        #[arg(long)]
        config: PathBuf,
        /// Write the operator matrix here (`.csv` for CSV, JSON otherwise).
        #[arg(long)]
        matrix_out: Option<PathBuf>,
        /// Write `{deviation, argmax, N}` here as JSON.
        #[arg(long)]
        deviation_out: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceFamily {
    Hardy,
    Bergman,
    Binomial,
    Fock,
    BetaOmega,
    Dirichlet,
    Weights,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum QuadFamily {
    Hardy,
    Bergman,
    Fock,
}

#[derive(clap::Args, Debug)]
pub struct SpaceArgs {
    #[arg(long, value_enum)]
    pub space: SpaceFamily,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub b: Option<f64>,
    /// Weight list for `--space weights`.
    #[arg(long)]
    pub beta_file: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct ParamArgs {
    /// phi(0), complex.
    #[arg(long, allow_hyphen_values = true)]
    pub a0: String,
    /// phi'(0); complex values are accepted to probe non-Hermitian pairs.
    #[arg(long, allow_hyphen_values = true)]
    pub a1: String,
    /// psi(0); complex values are accepted to probe non-Hermitian pairs.
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub c: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("wco: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
