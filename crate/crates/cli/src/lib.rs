//! Command-line front end for the gf2quad solver.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod commands;

#[derive(Parser, Debug)]
#[command(name = "gf2quad", version, about = "Solve x^2 + x + c = 0 over GF(2^m) with XORs only")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the precomputed (P, I0) pair and the solvability criterion.
    Tables(TablesArgs),
    /// Solve x^2 + x + c = 0, or a*y^2 + b*y + d = 0 with --a/--b/--d.
    Solve(SolveArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
    /// Operation counts and timings against the classical methods.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Extension degree.
    #[arg(long)]
    pub m: u32,
    /// Field polynomial as hex, bit i = coefficient of x^i (default: built-in).
    #[arg(long, value_parser = parse_hex)]
    pub modulus: Option<u64>,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Constant term of the reduced quadratic, as the hex element index.
    #[arg(long, value_parser = parse_hex, conflicts_with_all = ["a", "b", "d"], required_unless_present_all = ["a", "b", "d"])]
    pub c: Option<u64>,
    #[arg(long, value_parser = parse_hex, requires_all = ["b", "d"])]
    pub a: Option<u64>,
    #[arg(long, value_parser = parse_hex, requires_all = ["a", "d"])]
    pub b: Option<u64>,
    #[arg(long, value_parser = parse_hex, requires_all = ["a", "b"])]
    pub d: Option<u64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Check a single field instead of every m up to the exhaustive limit.
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, value_parser = parse_hex, requires = "m")]
    pub modulus: Option<u64>,
    /// Largest m checked over every element; larger m are sampled.
    #[arg(long, default_value_t = gf2quad::verify::DEFAULT_EXHAUSTIVE_LIMIT)]
    pub exhaustive_limit: u32,
    /// Corrupt P before checking (negative control).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Number of solvable c values to time.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    gf2quad::poly::parse_hex(s).map_err(|e| e.to_string())
}

/// Runs one parsed command line and maps the outcome to an exit status.
pub fn run(cli: Cli) -> ExitCode {
    let result = match cli.command {
        Command::Tables(args) => commands::tables(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Bench(args) => commands::bench(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
