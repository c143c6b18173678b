//! Black-box tests of the binary: exit codes, JSON round-trips, SVG output.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_hyppants"));
    assert!(p.exists(), "binary not built");
    p = p.canonicalize().unwrap();
    p
}

fn write_fixture(dir: &std::path::Path, name: &str, json: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().unwrap()
}

const OCTAGON: &str =
    r#"{"n":8,"g0":0,"r":0,"cone":[{"c":1,"m":2},{"c":1,"m":8},{"c":3,"m":8}]}"#;
const DECAGON: &str =
    r#"{"n":10,"g0":0,"r":0,"cone":[{"c":1,"m":2},{"c":1,"m":5},{"c":3,"m":10}]}"#;

#[test]
fn validate_reports_class_and_genus() {
    let dir = std::env::temp_dir().join("hyppants-cli-validate");
    std::fs::create_dir_all(&dir).unwrap();
    let d8 = write_fixture(&dir, "d8.json", OCTAGON);
    let out = run(&["validate", d8.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], true);
    assert_eq!(v["class"], "Type1Irreducible");
    assert_eq!(v["genus"], 2);
}

#[test]
fn invalid_input_exits_1() {
    let dir = std::env::temp_dir().join("hyppants-cli-invalid");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = write_fixture(
        &dir,
        "bad.json",
        r#"{"n":8,"g0":0,"r":0,"cone":[{"c":2,"m":8},{"c":1,"m":8},{"c":3,"m":8}]}"#,
    );
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let missing = dir.join("missing.json");
    let out = run(&["validate", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn enumerate_includes_the_goldens() {
    let out = run(&["enumerate", "--genus", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let displays: Vec<&str> = v["datasets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["display"].as_str().unwrap())
        .collect();
    assert!(displays.contains(&"(8,0,0;(1,2),(1,8),(3,8))"));
    assert!(displays.contains(&"(10,0,0;(1,2),(1,5),(3,10))"));
}

#[test]
fn pants_emits_analysis_and_svg() {
    let dir = std::env::temp_dir().join("hyppants-cli-pants");
    std::fs::create_dir_all(&dir).unwrap();
    let d8 = write_fixture(&dir, "d8.json", OCTAGON);
    let svg = dir.join("d8.svg");
    let out = run(&[
        "pants",
        d8.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["genus"], 2);
    assert_eq!(v["curves"].as_array().unwrap().len(), 3);
    let figure = std::fs::read_to_string(&svg).unwrap();
    assert!(figure.starts_with("<svg"));
    assert!(figure.contains("version=\"1.1\""));
    assert!(figure.trim_end().ends_with("</svg>"));
}

#[test]
fn distance_is_deterministic_across_argument_order() {
    let dir = std::env::temp_dir().join("hyppants-cli-distance");
    std::fs::create_dir_all(&dir).unwrap();
    let d8 = write_fixture(&dir, "d8.json", OCTAGON);
    let d10 = write_fixture(&dir, "d10.json", DECAGON);
    let a = run(&["distance", d8.to_str().unwrap(), d10.to_str().unwrap()]);
    let b = run(&["distance", d10.to_str().unwrap(), d8.to_str().unwrap()]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "hyppants/report/1");
    // Round-trip: the emitted report re-parses as a report.
    let _: hyppants::pipeline::DistanceReport = serde_json::from_slice(&a.stdout).unwrap();
}

#[test]
fn encode_lists_the_class() {
    let dir = std::env::temp_dir().join("hyppants-cli-encode");
    std::fs::create_dir_all(&dir).unwrap();
    let d8 = write_fixture(&dir, "d8.json", OCTAGON);
    let out = run(&["encode", d8.to_str().unwrap(), "--class"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["display"], "(1,1,2,2)");
    assert_eq!(v["class"].as_array().unwrap().len(), 2);
}
