//! `fundgpd`: builds fundamental groupoids of finite spaces and checks them.
//!
//! Exit codes: 0 success, 2 a check failed or groupoids are not
//! isomorphic, 3 π₁ was not shown finite, 4 unreadable input, 5 the
//! isomorphism search cap was hit, 1 anything else.

mod analyze;
mod circle;
mod input;
mod iso;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fundgpd::finspace::FinSpaceError;
use fundgpd::gpdbuild::GpdError;
use fundgpd::pi1core::Pi1Error;

pub(crate) const EXIT_FAILED: u8 = 2;
pub(crate) const EXIT_EXCEEDED: u8 = 3;
pub(crate) const EXIT_INPUT: u8 = 4;
pub(crate) const EXIT_SEARCH_CAP: u8 = 5;

#[derive(Parser)]
#[command(name = "fundgpd", version, about = "Fundamental groupoids of finite spaces as topological groupoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Π₁ of a finite space and run the selected checks.
    Analyze(analyze::Args),
    /// Verify the circle-group identities on seeded exact samples.
    CircleDemo(circle::Args),
    /// Decide whether two exported groupoids are isomorphic.
    CheckIso(iso::Args),
    /// Write a groupoid in the JSON exchange format.
    Export(input::ExportArgs),
}

fn pi1_code(e: &Pi1Error) -> u8 {
    match e {
        Pi1Error::Exceeded(_) => EXIT_EXCEEDED,
        Pi1Error::UnknownVertex(_) | Pi1Error::FinSpace(_) => EXIT_INPUT,
        _ => 1,
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<GpdError>() {
            return match e {
                GpdError::Pi1(p) => pi1_code(p),
                GpdError::SearchCapExceeded(_) => EXIT_SEARCH_CAP,
                GpdError::Schema(_) | GpdError::Malformed(_) | GpdError::FinSpace(_) => EXIT_INPUT,
                _ => 1,
            };
        }
        if let Some(e) = cause.downcast_ref::<Pi1Error>() {
            return pi1_code(e);
        }
        if cause.is::<FinSpaceError>() || cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return EXIT_INPUT;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze::run(a),
        Command::CircleDemo(a) => circle::run(a),
        Command::CheckIso(a) => iso::run(a),
        Command::Export(a) => input::export(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
