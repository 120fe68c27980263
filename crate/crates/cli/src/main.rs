use std::process::ExitCode;

use clap::Parser;
use gf2quad_cli::Cli;

fn main() -> ExitCode {
    gf2quad_cli::run(Cli::parse())
}
