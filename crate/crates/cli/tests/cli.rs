use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gendiag::diag::{is_generically_diagonalizable, DiagReport};
use gendiag::fixtures::{self, FixtureMeta};
use gendiag::placement::{min_actuators_diag, min_sensors_diag, ActuatorPlacement, SensorPlacement};
use gendiag::sfo::{is_sfo, SfoReport};
use gendiag::soc::{is_soc, SocReport};
use serde::Deserialize;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gendiag"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_file(args: &[&str], file: &Path) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    all.push(file.to_str().unwrap());
    run(&all)
}

fn json(args: &[&str], file: &Path) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = with_file(&all, file);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[derive(Deserialize)]
struct ManifestEntry {
    file: String,
    #[serde(flatten)]
    meta: FixtureMeta,
}

fn manifest() -> Vec<ManifestEntry> {
    let text = std::fs::read_to_string(fixture("manifest.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

#[test]
fn manifest_matches_builtin_fixtures() {
    let listed = manifest();
    let builtin = fixtures::all();
    assert_eq!(listed.len(), builtin.len());
    for (entry, fx) in listed.iter().zip(&builtin) {
        assert_eq!(entry.meta, fx.meta);
        assert!(fixture(&entry.file).exists(), "{}", entry.file);
    }
}

#[test]
fn fixture_files_decode_to_builtin_systems() {
    let tmp = std::env::temp_dir().join(format!("gendiag-fixtures-{}", std::process::id()));
    let out = run(&["write-fixtures", tmp.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    for entry in manifest() {
        let shipped = std::fs::read_to_string(fixture(&entry.file)).unwrap();
        let fresh = std::fs::read_to_string(tmp.join(&entry.file)).unwrap();
        assert_eq!(shipped, fresh, "{} is stale", entry.file);
    }
    std::fs::remove_dir_all(&tmp).unwrap();
}

#[test]
fn counter_example_reports() {
    let f = fixture("example_counter.json");
    let sfo = json(&["sfo"], &f);
    assert_eq!(sfo["verdict"], false);
    assert_eq!(sfo["d_ac"], 3);
    assert_eq!(sfo["d_acf"], 4);
    for method in ["b", "c", "d"] {
        assert_eq!(json(&["sfo", "--method", method], &f)["verdict"], false, "{method}");
    }
    let diag = json(&["diag"], &f);
    assert_eq!(diag["verdict"], true);
    assert_eq!(diag["grank_a"], 1);
    assert_eq!(diag["v_a"], 1);
    assert_eq!(json(&["grank", "--which", "AC"], &f)["grank"], 3);
    assert_eq!(json(&["grank", "--which", "ACF"], &f)["grank"], 4);
}

#[test]
fn zero_matrix_has_rank_zero() {
    let r = json(&["grank", "--which", "A"], &data("zero.json"));
    assert_eq!(r["grank"], 0);
    assert_eq!(r["rows"], 3);
}

#[test]
fn json_reports_equal_library_reports() {
    let counter = fixtures::example_counter().system;
    let d: DiagReport = serde_json::from_value(json(&["diag"], &fixture("example_counter.json"))).unwrap();
    assert_eq!(d, is_generically_diagonalizable(counter.a()).unwrap());
    let s: SfoReport = serde_json::from_value(json(&["sfo"], &fixture("example_counter.json"))).unwrap();
    assert_eq!(s, is_sfo(counter.a(), counter.c(), counter.f()).unwrap());

    let soc = fixtures::soc_example().system;
    let r: SocReport = serde_json::from_value(json(&["soc"], &fixture("soc.json"))).unwrap();
    assert_eq!(r, is_soc(soc.a(), soc.b(), soc.c()).unwrap());

    let sd = fixtures::sensor_diag_example().system;
    let p: SensorPlacement = serde_json::from_value(json(
        &["place-sensors", "--method", "alg1"],
        &fixture("sensor_diag.json"),
    ))
    .unwrap();
    assert_eq!(p, min_sensors_diag(sd.a(), sd.f(), false).unwrap());
    assert_eq!(p.p_star, 1);

    let act = fixtures::actuator_example().system;
    let q: ActuatorPlacement = serde_json::from_value(json(&["place-actuators"], &fixture("actuator.json"))).unwrap();
    assert_eq!(q, min_actuators_diag(act.a(), act.c()).unwrap());
    assert_eq!(q.m_star, 1);
}

#[test]
fn every_sensor_method_runs_on_general_fixture() {
    let f = fixture("sensor_general.json");
    for method in ["alg2", "alg3"] {
        let r = json(&["place-sensors", "--method", method], &f);
        assert_eq!(r["p_star"], 2, "{method}");
    }
    let out = with_file(&["place-sensors", "--method", "alg1"], &f);
    assert_eq!(code(&out), 2);
}

#[test]
fn oracle_agrees_on_fixtures() {
    let f = fixture("example_counter.json");
    for check in ["diag", "sfo", "grank"] {
        let r = json(&["oracle", "--check", check, "--trials", "5", "--seed", "3"], &f);
        assert_eq!(r["agree"], true, "{check}");
    }
    let r = json(&["oracle", "--check", "soc", "--trials", "5"], &fixture("soc.json"));
    assert_eq!(r["structural_verdict"], true);
    assert_eq!(r["agree"], true);
}

#[test]
fn text_output_is_the_default() {
    let out = with_file(&["diag"], &fixture("example_counter.json"));
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("generic diagonalizability"));
    assert!(text
        .lines()
        .any(|l| l.trim_start().starts_with("verdict") && l.ends_with("true")));
}

#[test]
fn precondition_failures_exit_with_two() {
    let chain = data("chain.json");
    assert_eq!(code(&with_file(&["place-sensors", "--method", "alg1"], &chain)), 2);
    assert_eq!(code(&with_file(&["place-actuators"], &chain)), 2);
    let zero = data("zero.json");
    assert_eq!(code(&with_file(&["soc"], &zero)), 2);
    assert_eq!(code(&with_file(&["place-sensors", "--method", "alg2"], &zero)), 2);
    assert_eq!(code(&with_file(&["sfo", "--method", "b"], &chain)), 2);
}

#[test]
fn usage_and_input_errors_exit_with_one() {
    let out = with_file(&["grank", "--which", "A"], &data("malformed.json"));
    assert_eq!(code(&out), 1);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("field A"), "{msg}");
    assert!(msg.contains("1-based"), "{msg}");

    assert_eq!(code(&with_file(&["diag"], &data("truncated.json"))), 1);
    assert_eq!(code(&with_file(&["diag"], &data("missing.json"))), 1);
    assert_eq!(code(&with_file(&["diag", "--bogus"], &fixture("soc.json"))), 1);
    assert_eq!(code(&with_file(&["grank", "--which", "Q"], &fixture("soc.json"))), 1);
    assert_eq!(
        code(&with_file(
            &["oracle", "--check", "diag", "--trials", "0"],
            &fixture("soc.json")
        )),
        1
    );
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn dot_exports() {
    let counter = fixture("example_counter.json");
    let system = String::from_utf8(with_file(&["export-dot", "--graph", "system"], &counter).stdout).unwrap();
    assert!(system.starts_with("digraph"));
    assert!(system.contains("lightblue"));
    assert!(system.contains("color=red"));

    for (graph, file) in [("linking", "soc.json"), ("flow", "actuator.json")] {
        let out = with_file(&["export-dot", "--graph", graph], &fixture(file));
        assert_eq!(code(&out), 0, "{graph}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.starts_with("digraph"), "{graph}");
        assert!(text.contains("penwidth"), "{graph}");
        assert!(text.trim_end().ends_with('}'), "{graph}");
    }
}
