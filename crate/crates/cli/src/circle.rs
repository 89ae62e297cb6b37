use std::path::PathBuf;

use fundgpd::circlemodel::torus::verify_torus_theorem;
use fundgpd::circlemodel::{
    j_basis_image, rat, verify_basis_images, verify_transformation_theorem, verify_translation_lemmas, Arc,
    CircleGroupPoint, CirclePathClass, VerificationReport,
};
use serde_json::json;

use crate::{input, EXIT_FAILED};

#[derive(clap::Args)]
pub struct Args {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// JSON report destination.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

fn line(r: &VerificationReport) {
    for c in &r.checks {
        let verdict = if c.pass() { "ok" } else { "FAILED" };
        println!("{:<32} {}/{} {verdict}", c.name, c.passed, c.samples);
    }
}

pub fn run(args: &Args) -> anyhow::Result<u8> {
    anyhow::ensure!(args.samples >= 1, "--samples must be at least 1");
    let s = args.seed;
    let lemmas = verify_translation_lemmas(args.samples, s);
    let theorem = verify_transformation_theorem(args.samples, s.wrapping_add(1));
    let basis = verify_basis_images(args.samples, s.wrapping_add(2));
    let torus = verify_torus_theorem(args.samples, s.wrapping_add(3));
    let half = Arc::centered(&CircleGroupPoint::zero(), rat(1, 2))?;
    let unit = CirclePathClass::unit(CircleGroupPoint::zero());
    let example = j_basis_image(&unit, &half, &half, args.samples, s.wrapping_add(4))?;

    let pass = [&lemmas, &theorem, &basis, &torus].iter().all(|r| r.pass()) && example.pass();
    for r in [&lemmas, &theorem, &basis, &torus] {
        line(r);
    }
    println!(
        "{:<32} {}/{} {}",
        "half_arc_image",
        example.agreements,
        example.samples,
        if example.pass() { "ok" } else { "FAILED" }
    );
    if example.equals_claimed_basic_set == Some(false) {
        println!("note: J(N([α],U)×V) differs from N([α],U,V)×V; it is open but not basic");
    }
    let report = json!({
        "schema": 1,
        "seed": s,
        "samples": args.samples,
        "translation_lemmas": lemmas,
        "transformation_theorem": theorem,
        "basis_images": basis,
        "torus": torus,
        "half_arc_image": example,
        "pass": pass,
    });
    if let Some(path) = &args.report {
        input::write(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    Ok(if pass { 0 } else { EXIT_FAILED })
}
