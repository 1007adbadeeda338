use std::io::Write;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn realforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realforms"))
        .args(args)
        .env_remove("REALFORMS_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn points_file(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn verify_passes() {
    for (n, m) in [("2", "3"), ("0", "0")] {
        let out = realforms(&["verify", "--n", n, "--m", m]);
        assert_eq!(out.status.code(), Some(0));
        let r = json_of(&out);
        assert_eq!(r["identity"], "pass");
        assert_eq!(r["preserves_yn"], true);
        assert_eq!(r["passed"], true);
        assert_eq!(r["identities"]["am_eq_jaj_in_matrices"], false);
    }
}

#[test]
fn verify_mutations_fail() {
    for m in ["flip-sign", "z-weight"] {
        let out = realforms(&["verify", "--n", "1", "--m", "1", "--mutation", m]);
        assert_eq!(out.status.code(), Some(1), "{m}");
        assert_eq!(json_of(&out)["passed"], false);
    }
}

#[test]
fn classify_one_class() {
    let f = points_file(r#"{"n": 3, "points": [["1", "1", "1"], ["2", "8", "32"]]}"#);
    let out = realforms(&["classify", "--points", f.path().to_str().unwrap(), "--witnesses"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["classes"], json!([[0, 1]]));
    assert_eq!(r["matrix"], json!([[true, true], [true, true]]));
    assert_eq!(r["witnesses"][0]["witness"], json!({"kind": "rational", "e": "2"}));
}

#[test]
fn classify_slice_is_discrete() {
    let pts: Vec<Vec<String>> = (0..12).map(|k| vec!["1".into(), format!("{k}/7")]).collect();
    let f = points_file(&json!({ "points": pts }).to_string());
    let out = realforms(&["classify", "--n", "2", "--points", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let classes = json_of(&out)["classes"].as_array().unwrap().clone();
    assert_eq!(classes.len(), 12);
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 1));
}

#[test]
fn classify_empty_and_malformed() {
    let f = points_file("");
    let out = realforms(&["classify", "--n", "2", "--points", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["matrix"], json!([]));
    assert_eq!(r["classes"], json!([]));

    let f = points_file(r#"{"points": [["1", "x/2"]]}"#);
    let out = realforms(&["classify", "--n", "2", "--points", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let f = points_file(r#"{"points": [["1/0"]]}"#);
    assert_eq!(realforms(&["classify", "--n", "1", "--points", f.path().to_str().unwrap()]).status.code(), Some(2));

    let f = points_file(r#"{"points": []}"#);
    assert_eq!(realforms(&["classify", "--n", "0", "--points", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(realforms(&["classify", "--n", "1", "--points", "/nonexistent/points.json"]).status.code(), Some(2));
}

#[test]
fn resolve_reports() {
    let r = json_of(&realforms(&["resolve", "--n", "2"]));
    assert_eq!(r["self_intersections"], json!([-1, -2, -2, -2, -2, -1]));
    assert_eq!(r["singularity"], "A_4");
    let r = json_of(&realforms(&["resolve", "--n", "0"]));
    assert_eq!(r["singularity"], "smooth");
    assert_eq!(r["exceptional_curves"], 0);
    let out = realforms(&["resolve", "--n", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["verified"], true);
    assert_eq!(r["self_intersections"].as_array().unwrap().len(), 102);
}

#[test]
fn p1_points() {
    let r = json_of(&realforms(&["p1", "--point", "1,0,0,0"]));
    assert_eq!((r["orbit"].as_str(), r["fiber"].as_str()), (Some("Z+"), Some("P1R")));
    let r = json_of(&realforms(&["p1", "--point", "0,0,0,1"]));
    assert_eq!((r["orbit"].as_str(), r["fiber"].as_str()), (Some("Z-"), Some("ConicC")));
    let r = json_of(&realforms(&["p1", "--point", "2,1,1,1"]));
    assert_eq!(r["q0"], "5");
    assert_eq!(r["fiber"], "P1R");
    let out = realforms(&["p1", "--point", "1,0,0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["orbit"], "OnQuadric");
    assert_eq!(realforms(&["p1", "--point", "0,0,0,0"]).status.code(), Some(2));
    assert_eq!(realforms(&["p1", "--point", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn p1_matrices() {
    let r = json_of(&realforms(&["p1", "--matrix", "id"]));
    let id: Vec<Vec<String>> = (0..4).map(|i| (0..4).map(|j| ((i == j) as i32).to_string()).collect()).collect();
    assert_eq!(r["lorentz"], json!(id));
    let out = realforms(&["p1", "--matrix", r#"[["1", "1+i"], ["0", "1"]]"#]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!((r["preserves_q0"].as_bool(), r["det"].as_str()), (Some(true), Some("1")));
    assert_eq!(realforms(&["p1", "--matrix", r#"[["2", "0"], ["0", "1"]]"#]).status.code(), Some(2));
    assert_eq!(realforms(&["p1"]).status.code(), Some(2));
}

#[test]
fn orbit_sample_is_seeded() {
    let a = realforms(&["orbit-sample", "--n", "1", "--count", "20", "--seed", "11"]);
    let b = realforms(&["orbit-sample", "--n", "1", "--count", "20", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json_of(&a);
    assert_eq!(r["passed"], true);
    assert_eq!(r["closure"], 20);
    assert_eq!(r["gamma_conjugation"], 20);
    assert!(String::from_utf8_lossy(&a.stderr).contains("seed 11"));
    assert_eq!(realforms(&["orbit-sample", "--n", "0"]).status.code(), Some(2));
}

#[test]
fn out_flag_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = Command::new(env!("CARGO_BIN_EXE_realforms"))
        .args(["resolve", "--n", "3", "--out", path.to_str().unwrap()])
        .env("REALFORMS_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["singularity"], "A_6");
    let out = Command::new(env!("CARGO_BIN_EXE_realforms"))
        .args(["resolve", "--n", "1"])
        .env("REALFORMS_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
