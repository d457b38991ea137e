use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn pwgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pwgl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().to_path_buf();
    let o = pwgl(&["fixtures", "--dir", p.to_str().unwrap()]);
    assert!(o.status.success());
    (dir, p)
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn validate_adams() {
    let (_g, d) = fixtures();
    let o = pwgl(&["validate", &path(&d, "adams.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid homeomorphism, 2 pieces");
}

#[test]
fn homology_and_classify() {
    let (_g, d) = fixtures();
    let o = pwgl(&["homology", &path(&d, "adams.json")]);
    assert_eq!(stdout(&o).trim(), "[[1,0],[1,1]]");
    let o = pwgl(&["classify", "[[1,1],[0,1]]"]);
    let s = stdout(&o);
    assert!(s.contains("unipotent") && s.contains("codimension 1") && s.contains("not small"), "{s}");
    let o = pwgl(&["classify", "[[1,1],[0,1]]", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classification"]["unipotent"], Value::Bool(true));
    assert_eq!(v["fixed_set"]["is_small"], Value::Bool(false));
}

#[test]
fn compose_roundtrip() {
    let (_g, d) = fixtures();
    let out = path(&d, "h.json");
    let o = pwgl(&["compose", &path(&d, "adams.json"), &path(&d, "adams.json"), "-o", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(pwgl(&["validate", &out]).status.code(), Some(0));
    let inv = path(&d, "inv.json");
    assert_eq!(pwgl(&["invert", &out, "-o", &inv]).status.code(), Some(0));
    let id = path(&d, "id.json");
    assert_eq!(pwgl(&["compose", &out, &inv, "-o", &id]).status.code(), Some(0));
    let o = pwgl(&["equals", &id, &path(&d, "identity.json")]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = pwgl(&["homology", &out, "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["homology"], serde_json::json!([["1", "0"], ["2", "1"]]));
}

#[test]
fn exit_codes() {
    let d = tempfile::tempdir().unwrap();
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2,").unwrap();
    let o = pwgl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.json"));

    let broken = d.path().join("broken.json");
    let body = r#"{"n":2,"mode":"linear","pieces":[
      {"halfspaces":[["-1","0","0"],["1","0","1/2"],["0","-1","0"],["0","1","1"]],"matrix":[["1","0"],["0","1"]]},
      {"halfspaces":[["-1","0","-1/2"],["1","0","1"],["0","-1","0"],["0","1","1"]],"matrix":[["1","0"],["1","1"]]}]}"#;
    std::fs::write(&broken, body).unwrap();
    let o = pwgl(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Continuity"));

    let outside = d.path().join("outside.json");
    std::fs::write(&outside, r#"{"n":1,"mode":"linear","pieces":[{"halfspaces":[["-1","0"],["1","2"]],"matrix":[["1"]]}]}"#).unwrap();
    assert_eq!(pwgl(&["validate", outside.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(pwgl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pwgl(&["classify", "[[2,0],[0,1]]"]).status.code(), Some(2));
}

#[test]
fn point_queries() {
    let (_g, d) = fixtures();
    let a = path(&d, "adams.json");
    assert_eq!(stdout(&pwgl(&["apply", &a, "--point", "3/4,0"])).trim(), "(3/4, 1/2)");
    let s = stdout(&pwgl(&["germ", &a, "--at", "1/2,0"]));
    assert!(s.contains("[[1,0],[2,1]]") && s.contains("[[1,0],[0,1]]"), "{s}");
    let s = stdout(&pwgl(&["torsion-perm", &a, "-q", "2"]));
    assert!(s.starts_with("4 points, order 1"), "{s}");
    let s = stdout(&pwgl(&["tgamma", &a, "[[1,0],[2,1]]"]));
    assert!(s.contains("volume 1/2"), "{s}");
    let s = stdout(&pwgl(&["fixed-set", "[[2,1],[1,1]]"]));
    assert!(s.contains("1 component(s) of dimension 0"), "{s}");
}

#[test]
fn searches() {
    let (_g, d) = fixtures();
    let s = stdout(&pwgl(&["inner-cert", &path(&d, "adams.json"), "[[0,-1],[1,0]]", "[[1,1],[0,1]]", "-L", "4"]));
    assert!(s.starts_with("certified"), "{s}");
    let o = pwgl(&["relations", "[[0,-1],[1,0]]", "-L", "4", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["relator"] == serde_json::json!([1, 1, 1, 1])));
    let o = pwgl(&["ball", "[[1,1],[0,1]]", "-L", "3", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["sphere_sizes"], serde_json::json!([1, 2, 2, 2]));
    let s = stdout(&pwgl(&["certificate", "[[2,1],[1,1]]", "-L", "2"]));
    assert!(s.contains("all hyperbolic: yes") && s.contains("not a proof"), "{s}");
}

#[test]
fn circle_commands() {
    let (_g, d) = fixtures();
    let c = path(&d, "circle.json");
    assert_eq!(pwgl(&["circle-validate", &c]).status.code(), Some(0));
    for at in ["0", "1", "2", "inf"] {
        let s = stdout(&pwgl(&["circle-smoothness", &c, "--at", at]));
        assert!(s.trim().ends_with(": 1"), "{s}");
    }
    assert_eq!(pwgl(&["circle-smoothness", &c, "--at", "3"]).status.code(), Some(2));
}

#[test]
fn seeded_fixtures_are_reproducible() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        let o = pwgl(&["fixtures", "--dir", d.path().to_str().unwrap(), "--random", "3", "--seed", "11"]);
        assert!(o.status.success());
    }
    for i in 0..3 {
        let name = format!("random_{i:03}.json");
        let x = std::fs::read_to_string(a.path().join(&name)).unwrap();
        let y = std::fs::read_to_string(b.path().join(&name)).unwrap();
        assert_eq!(x, y);
    }
}
