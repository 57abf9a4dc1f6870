use std::process::ExitCode;

use clap::Parser;
use vlevel_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(vlevel_cli::run(&cli))
}
