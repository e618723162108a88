//! End-to-end tests for the command line binary: a full artifact
//! pipeline, byte-level determinism, and the documented exit codes.

use std::path::Path;
use std::process::Command;

use pdcolor::formats::{coloring_to_file, write_json, Header, HypergraphFile};
use pdcolor_core::coloring::Coloring;

fn pdcolor() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pdcolor"))
}

fn run_ok(args: &[&str]) {
    let out = pdcolor().args(args).output().expect("spawn pdcolor");
    assert!(
        out.status.success(),
        "pdcolor {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn run_code(args: &[&str]) -> i32 {
    let out = pdcolor().args(args).output().expect("spawn pdcolor");
    out.status.code().expect("exit code")
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn pipeline_from_generation_to_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let scene = p(d, "scene.json");
    let hg = p(d, "hg.json");
    let col = p(d, "coloring.json");
    let svg = p(d, "scene.svg");
    let csv = p(d, "stats.csv");
    let report = p(d, "verify.jsonl");

    run_ok(&[
        "gen", "--kind", "random-disks", "--n", "6", "--seed", "7", "--wrt", "12", "--out", &scene,
    ]);
    run_ok(&["hypergraph", "--input", &scene, "--out", &hg]);
    run_ok(&["color", "--input", &scene, "--hypergraph", &hg, "--out", &col]);
    run_ok(&[
        "verify", "--input", &scene, "--hypergraph", &hg, "--coloring", &col, "--out", &report,
    ]);
    run_ok(&["svg", "--input", &scene, "--coloring", &col, "--out", &svg]);
    run_ok(&["stats", "--input", &scene, "--out", &csv]);

    let report = std::fs::read_to_string(&report).unwrap();
    assert!(report.lines().count() >= 3);
    assert!(report.contains("witnesses-reverify"));
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    let csv = std::fs::read_to_string(&csv).unwrap();
    assert!(csv.contains("regions,6"));
}

#[test]
fn generation_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let a = p(d, "a.json");
    let b = p(d, "b.json");
    let c = p(d, "c.json");
    run_ok(&["gen", "--kind", "homothets", "--n", "9", "--seed", "42", "--out", &a]);
    run_ok(&["gen", "--kind", "homothets", "--n", "9", "--seed", "42", "--out", &b]);
    run_ok(&["gen", "--kind", "homothets", "--n", "9", "--seed", "43", "--out", &c]);
    let a = std::fs::read(&a).unwrap();
    assert_eq!(a, std::fs::read(&b).unwrap());
    assert_ne!(a, std::fs::read(&c).unwrap());
}

#[test]
fn malformed_input_exits_with_parse_code() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let bad = p(d, "bad.json");
    std::fs::write(&bad, "this is not json").unwrap();
    let code = run_code(&["hypergraph", "--input", &bad, "--out", &p(d, "hg.json")]);
    assert_eq!(code, 2);
}

#[test]
fn verify_rejects_a_broken_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let scene = p(d, "scene.json");
    let hg_path = p(d, "hg.json");
    let col = p(d, "all_zero.json");
    run_ok(&[
        "gen", "--kind", "random-disks", "--n", "6", "--seed", "7", "--wrt", "12", "--out", &scene,
    ]);
    run_ok(&["hypergraph", "--input", &scene, "--out", &hg_path]);

    // A one-color palette cannot be proper once any hyperedge exists.
    let hg_file: HypergraphFile =
        serde_json::from_slice(&std::fs::read(&hg_path).unwrap()).unwrap();
    assert!(!hg_file.hyperedges.is_empty(), "seed 7 scene must intersect");
    let zero = Coloring {
        colors: vec![0; 6],
        palette_size: 1,
        method: "constant".into(),
        optimal: false,
    };
    write_json(
        Path::new(&col),
        &coloring_to_file(&zero, Header::new("test".into(), None)),
    )
    .unwrap();
    let code = run_code(&[
        "verify", "--input", &scene, "--hypergraph", &hg_path, "--coloring", &col,
    ]);
    assert_eq!(code, 3);
}
