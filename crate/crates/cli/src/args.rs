//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "antibidiag",
    version,
    about = "Reconstruct symmetric anti-bidiagonal and special Jacobi matrices from their spectra"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Reconstruct a_1..a_n from an alternating spectrum.
    Solve,
    /// Characteristic polynomials (and eigenvalues) from a coefficient vector.
    Forward,
    /// Solve, rebuild the Jacobi matrix, eigensolve it and report the error.
    Roundtrip,
    /// Jacobi matrix with positive spectrum written as the square of an anti-bidiagonal matrix.
    Sqrt,
    /// Sign-regularity classification of the anti-bidiagonal matrix.
    Signreg,
    /// Run the randomized property suite.
    VerifyAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Float64,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Eigenvalues, comma separated (e.g. 3,-2,1).
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "VALUES")]
    pub spectrum: Option<String>,
    /// Coefficients a_1..a_n, comma separated.
    #[arg(long = "a", global = true, allow_hyphen_values = true, value_name = "VALUES")]
    pub a: Option<String>,
    /// Strictly decreasing positive values, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "VALUES")]
    pub mus: Option<String>,
    /// JSON document or CSV file with one value per line.
    #[arg(long, global = true, value_name = "PATH")]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = BackendArg::Float64)]
    pub backend: BackendArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Absolute equality tolerance.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    pub tol_abs: Option<f64>,
    /// Relative equality tolerance.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    pub tol_rel: Option<f64>,
    /// Bisection width for root extraction.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "TOL")]
    pub root_tol: Option<f64>,
    /// Largest m tried when searching for a totally positive (A²)^m; defaults to 2n.
    #[arg(long, global = true, value_name = "M")]
    pub max_power: Option<usize>,
    /// Seed for verify-all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Matrix sizes for verify-all, e.g. 1-12 or 2,3,5.
    #[arg(long, global = true, value_name = "LIST")]
    pub sizes: Option<String>,
    /// Random cases per size for verify-all.
    #[arg(long, global = true, default_value_t = 10)]
    pub cases: usize,
    /// Include intermediate polynomials and certificates in pretty output.
    #[arg(short, long, global = true)]
    pub verbose: bool,
}
