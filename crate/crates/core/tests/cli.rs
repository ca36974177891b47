use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lienil"));
    cmd.env_remove("LIENIL_BUDGET");
    cmd
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_reports_witness() {
    let out = run(&["check", spec("block4.json").to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["tool"], "lienil");
    assert_eq!(v["command"], "check n=2");
    assert_eq!(v["result"]["holds"], false);
    assert_eq!(v["result"]["witness"]["labels"], serde_json::json!(["E12", "E23", "E34"]));
    assert_eq!(v["result"]["witness"]["value"], "E14");
    assert!(String::from_utf8_lossy(&out.stderr).contains("L_2: no"));

    let out = run(&["check", spec("block4.json").to_str().unwrap(), "--n", "3"]);
    assert_eq!(json(&out)["result"]["holds"], true);
}

#[test]
fn center_and_radical() {
    let out = run(&["center", spec("block4.json").to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["dim"], 4);

    let out = run(&["radical", spec("block4.json").to_str().unwrap()]);
    let v = json(&out);
    assert_eq!(v["result"]["dim"], 6);
    assert_eq!(v["result"]["nilpotency_index"], 4);
}

#[test]
fn verify_single_algebra() {
    let out = run(&["verify", spec("grassmann4.json").to_str().unwrap(), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["seed"], 3);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["statement_id"] == "grassmann.n2_boundary" && r["status"] == "pass"));
    assert!(reports.iter().all(|r| r["status"] != "fail"));
}

#[test]
fn control_is_not_a_failure() {
    let out = run(&["verify", spec("m2_f3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["statement_id"] == "control.not_lie_nilpotent" && r["status"] == "pass"));
}

#[test]
fn output_is_deterministic() {
    let path = spec("block4.json");
    let args = ["verify", path.to_str().unwrap(), "--seed", "9"];
    let a = strip_timing(json(&run(&args)));
    let b = strip_timing(json(&bin().args(["--jobs", "1"]).args(args).output().unwrap()));
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("r.json");
    let out = run(&["--out", target.to_str().unwrap(), "radical", spec("block4.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["command"], "radical");
}

#[test]
fn stdin_spec() {
    let mut child = bin()
        .args(["check", "-", "--n", "2"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(std::fs::read(spec("grassmann4.json")).unwrap().as_slice()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["holds"], true);
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["block4.json", "grassmann4.json", "m2_f3.json", "dual_numbers_f2.json"] {
        let first = run(&["export", spec(name).to_str().unwrap()]);
        assert_eq!(first.status.code(), Some(0));
        let exported = write_temp(&dir, name, std::str::from_utf8(&first.stdout).unwrap());
        let second = run(&["export", exported.to_str().unwrap()]);
        assert_eq!(json(&first), json(&second), "{name}");

        let a = json(&run(&["check", spec(name).to_str().unwrap(), "--n", "2"]));
        let b = json(&run(&["check", exported.to_str().unwrap(), "--n", "2"]));
        assert_eq!(a["result"], b["result"], "{name}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let malformed = write_temp(&dir, "bad.json", "{ \"kind\": ");
    assert_eq!(run(&["check", malformed.to_str().unwrap(), "--n", "2"]).status.code(), Some(2));

    let unknown = write_temp(&dir, "unknown.json", r#"{"kind":"grassmann","field":{"type":"Q"},"m":3,"extra":1}"#);
    let out = run(&["check", unknown.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("extra"));

    assert_eq!(run(&["check", "/nonexistent/spec.json", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["check"]).status.code(), Some(2));

    let e3 = write_temp(&dir, "e3.json", r#"{"kind":"grassmann","field":{"type":"Fp","p":3},"m":3}"#);
    assert_eq!(run(&["radical", e3.to_str().unwrap()]).status.code(), Some(4));
    let e2 = write_temp(&dir, "e2.json", r#"{"kind":"grassmann","field":{"type":"Fp","p":2},"m":2}"#);
    assert_eq!(run(&["check", e2.to_str().unwrap(), "--n", "1"]).status.code(), Some(4));

    let out = bin().env("LIENIL_BUDGET", "10").args(["check", spec("block4.json").to_str().unwrap(), "--n", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn explore_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let record = dir.path().join("record.json");
    let out = run(&["--out", record.to_str().unwrap(), "explore", "--m", "3", "--n", "1", "--p", "5", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&record).unwrap()).unwrap();
    assert_eq!(v["result"]["best_dim"], 3);
    assert_eq!(v["result"]["violation"], false);

    let out = run(&["explore", "--load", record.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));

    let mut tampered = v.clone();
    tampered["result"]["best_dim"] = serde_json::json!(4);
    let bad = write_temp(&dir, "tampered.json", &tampered.to_string());
    assert_eq!(run(&["explore", "--load", bad.to_str().unwrap()]).status.code(), Some(5));
}
