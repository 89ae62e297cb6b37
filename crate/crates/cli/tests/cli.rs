use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const RP2: &str = r#"{"facets": [["1","2","3"],["1","3","4"],["1","4","5"],["1","5","6"],["1","6","2"],
["2","3","5"],["3","4","6"],["4","5","2"],["5","6","3"],["6","2","4"]]}"#;

fn fundgpd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fundgpd")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(p: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn analyze_single_point() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "pt.txt", "point a\n");
    let out = dir.path().join("r.json");
    let run = fundgpd(&["analyze", s(&input), "--report", s(&out)]);
    assert_eq!(code(&run), 0, "{}", String::from_utf8_lossy(&run.stderr));
    let r = report(&out);
    assert_eq!(r["summary"]["arrows"], 1);
    assert_eq!(r["pi1"][0]["h1"], "0");
    assert_eq!(r["pass"], true);
}

#[test]
fn analyze_rp2() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "rp2.json", RP2);
    let out = dir.path().join("r.json");
    let dot = dir.path().join("g.dot");
    let run = fundgpd(&["analyze", s(&input), "--report", s(&out), "--dot", s(&dot)]);
    assert_eq!(code(&run), 0);
    let r = report(&out);
    assert_eq!(r["space"]["points"], 31);
    assert_eq!(r["pi1"][0]["order"], 2);
    assert_eq!(r["pi1"][0]["h1"], "Z/2");
    assert_eq!(r["summary"]["arrows"], 1922);
    assert_eq!(r["summary"]["etale"], false);
    assert_eq!(r["summary"]["locally_trivial"], true);
    assert_eq!(r["checks"]["components"][0]["cover_points"], 62);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph groupoid {"));
}

#[test]
fn analyze_check_selection() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "chain.txt", "a < b\n");
    let out = dir.path().join("r.json");
    assert_eq!(code(&fundgpd(&["analyze", s(&input), "--checks", "axioms", "--report", s(&out)])), 0);
    let r = report(&out);
    assert_eq!(r["checks_selected"], "axioms");
    assert!(r["checks"].get("axioms").is_some());
    assert!(r["checks"].get("topology").is_none());
}

#[test]
fn analyze_pseudocircle_exceeds() {
    let dir = TempDir::new().unwrap();
    let input = file(&dir, "pc.txt", "a < c\na < d\nb < c\nb < d\n");
    let out = dir.path().join("r.json");
    let run = fundgpd(&["analyze", s(&input), "--report", s(&out), "--max-cosets", "500"]);
    assert_eq!(code(&run), 3);
    let r = report(&out);
    assert_eq!(r["pi1"][0]["status"], "exceeded");
    assert_eq!(r["pi1"][0]["max_cosets"], 500);
    assert_eq!(r["pi1"][0]["h1"], "Z");
    assert_eq!(r["pass"], false);
}

#[test]
fn bad_inputs_exit_4() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.txt", "a <\n");
    assert_eq!(code(&fundgpd(&["analyze", s(&bad)])), 4);
    let cyc = file(&dir, "cyc.txt", "a < b\nb < a\n");
    assert_eq!(code(&fundgpd(&["analyze", s(&cyc), "--format", "poset", "--basepoint", "zz"])), 4);
    let missing = dir.path().join("absent.txt");
    assert_eq!(code(&fundgpd(&["analyze", s(&missing)])), 4);
}

#[test]
fn circle_demo_small() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("c.json");
    let run = fundgpd(&["circle-demo", "--samples", "20", "--seed", "3", "--report", s(&out)]);
    assert_eq!(code(&run), 0);
    let r = report(&out);
    assert_eq!(r["half_arc_image"]["equals_claimed_basic_set"], false);
    assert_eq!(r["half_arc_image"]["open"], true);
}

#[test]
fn export_and_check_iso() {
    let dir = TempDir::new().unwrap();
    let chain = file(&dir, "chain.txt", "a < b\n");
    let rp2 = file(&dir, "rp2.json", RP2);
    let paths: Vec<PathBuf> = ["g.json", "p.json", "rg.json", "rp.json"].iter().map(|n| dir.path().join(n)).collect();
    assert_eq!(code(&fundgpd(&["export", s(&chain), "--out", s(&paths[0])])), 0);
    assert_eq!(code(&fundgpd(&["export", s(&chain), "--pair", "--out", s(&paths[1])])), 0);
    assert_eq!(code(&fundgpd(&["export", s(&rp2), "--out", s(&paths[2])])), 0);
    assert_eq!(code(&fundgpd(&["export", s(&rp2), "--pair", "--out", s(&paths[3])])), 0);

    let cert = dir.path().join("cert.json");
    let run = fundgpd(&["check-iso", s(&paths[0]), s(&paths[1]), "--certificate", s(&cert)]);
    assert_eq!(code(&run), 0);
    assert_eq!(report(&cert)["map"]["[a@0,b@0]"], "(a,b)");
    assert_eq!(code(&fundgpd(&["check-iso", s(&paths[0]), s(&paths[1]), s(&cert)])), 0);

    assert_eq!(code(&fundgpd(&["check-iso", s(&paths[2]), s(&paths[3])])), 2);
    assert_eq!(code(&fundgpd(&["check-iso", s(&paths[2]), s(&paths[2]), "--search-cap", "10"])), 5);

    let bad = file(&dir, "bad.json", r#"{"schema": 2}"#);
    assert_eq!(code(&fundgpd(&["check-iso", s(&bad), s(&paths[0])])), 4);
}
