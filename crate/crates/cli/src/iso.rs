use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::Context;
use fundgpd::gpdbuild::{groupoid_from_json, groupoid_iso_check, morphism_from_json, morphism_to_json};

use crate::{input, EXIT_FAILED};

#[derive(clap::Args)]
pub struct Args {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Candidate isomorphism `{"schema": 1, "map": {...}}`; without one a
    /// bounded search is run.
    pub map: Option<PathBuf>,
    #[arg(long, default_value_t = 5_000)]
    pub search_cap: usize,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    pub certificate: Option<PathBuf>,
}

fn read(path: &PathBuf) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn run(args: &Args) -> anyhow::Result<u8> {
    let g = Arc::new(groupoid_from_json(&read(&args.first)?)?);
    let h = Arc::new(groupoid_from_json(&read(&args.second)?)?);
    let candidate = match &args.map {
        Some(p) => Some(morphism_from_json(&read(p)?, &g, &h)?),
        None => None,
    };
    let outcome = groupoid_iso_check(&g, &h, candidate.as_deref(), args.search_cap)?;
    if !outcome.isomorphic {
        println!("not isomorphic: {}", outcome.witness.unwrap_or_default());
        return Ok(EXIT_FAILED);
    }
    let cert = outcome.certificate.or(candidate).expect("an isomorphism comes with its map");
    let text = morphism_to_json(&cert, &g, &h) + "\n";
    match &args.certificate {
        Some(p) => {
            input::write(p, &text)?;
            println!("isomorphic; certificate written to {}", p.display());
        }
        None => {
            println!("isomorphic");
            print!("{text}");
        }
    }
    Ok(0)
}
