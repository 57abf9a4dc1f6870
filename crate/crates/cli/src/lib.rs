//! Command-line front end: resolves parameters from defaults, a config file
//! and flags, runs a solver or sweep, and writes CSV (optionally SVG) plus a
//! JSON run manifest.

pub mod args;
pub mod commands;
pub mod output;
pub mod svg;

use args::{Cli, Command};

/// Successful run.
pub const EXIT_OK: u8 = 0;
/// The validation suite reported a failure.
pub const EXIT_VALIDATION_FAILED: u8 = 1;
/// Bad usage, parameters or ranges.
pub const EXIT_USAGE: u8 = 2;

/// Run a parsed command, printing to stdout/stderr; returns the exit code.
pub fn run(cli: &Cli) -> u8 {
    let written = match &cli.command {
        Command::Validate(a) => {
            let report = commands::validate(a);
            print!("{}", commands::format_report(&report));
            return if report.all_passed() { EXIT_OK } else { EXIT_VALIDATION_FAILED };
        }
        Command::Steady(a) => commands::steady(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Contour(a) => commands::contour(a),
        Command::GroupIndex(a) => commands::groupindex(a),
    };
    match written {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("vlevel {}: error: {e:#}", cli.command.name());
            EXIT_USAGE
        }
    }
}
