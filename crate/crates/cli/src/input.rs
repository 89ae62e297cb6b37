use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::Context;
use clap::ValueEnum;
use fundgpd::finspace::{face_poset, parse_poset, FinSpace, SimplicialComplex};
use fundgpd::gpdbuild::{groupoid_to_dot, groupoid_to_json, trivial_pair_groupoid, FundamentalGroupoid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `x < y` lines
    Poset,
    /// `{"facets": [...]}`, read as its face poset
    Complex,
}

/// Reads a space; the format defaults to `complex` for `.json` files and
/// `poset` otherwise.
pub fn load_space(path: &Path, format: Option<Format>) -> anyhow::Result<Arc<FinSpace>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let format = format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
        Some("json") => Format::Complex,
        _ => Format::Poset,
    });
    let space = match format {
        Format::Poset => parse_poset(&text)?,
        Format::Complex => face_poset(&SimplicialComplex::from_json(&text)?),
    };
    Ok(Arc::new(space))
}

pub fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn file_label(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

#[derive(clap::Args)]
pub struct ExportArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Groupoid JSON destination.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Export the pair groupoid X × X instead of Π₁(X).
    #[arg(long)]
    pub pair: bool,
    #[arg(long)]
    pub basepoint: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub max_cosets: usize,
}

pub fn export(args: &ExportArgs) -> anyhow::Result<u8> {
    let x = load_space(&args.input, args.format)?;
    let g = if args.pair {
        Arc::new(trivial_pair_groupoid(&x))
    } else {
        FundamentalGroupoid::build(x, args.max_cosets, args.basepoint.as_deref())?.groupoid
    };
    write(&args.out, &groupoid_to_json(&g))?;
    if let Some(dot) = &args.dot {
        write(dot, &groupoid_to_dot(&g))?;
    }
    println!("wrote {} arrows to {}", g.len(), args.out.display());
    Ok(0)
}
