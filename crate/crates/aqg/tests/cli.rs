use std::path::PathBuf;
use std::process::{Command, Output};

fn aqg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aqg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("aqg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn builtin(name: &str, file: &str) -> String {
    let path = scratch(file);
    let p = path.to_str().unwrap().to_string();
    assert!(aqg(&["builtin", name, "-o", &p]).status.success());
    p
}

#[test]
fn verify_kac_paljutkin_reports_tracial() {
    let kp = builtin("kac-paljutkin", "kp.json");
    let out = aqg(&["verify", &kp, "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("tracial = true"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_json_output_parses() {
    let z2 = builtin("z2", "z2_json.json");
    let out = aqg(&["verify", &z2, "--suite", "axioms", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["derived"]["tracial"], serde_json::Value::Bool(true));
    assert_eq!(v["derived"]["phi"][0], serde_json::json!([1.0, 0.0]));
    assert!(v["report"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn each_suite_runs() {
    let z2 = builtin("z2", "z2_suites.json");
    for suite in ["axioms", "lemmas", "gns", "generator", "compact"] {
        let out = aqg(&["verify", &z2, "--suite", suite, "--tol", "1e-9"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(aqg(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(aqg(&["verify", "x.json", "--bogus"]).status.code(), Some(64));
    assert_eq!(aqg(&["verify", "x.json", "--suite", "nope"]).status.code(), Some(64));
    assert_eq!(aqg(&[]).status.code(), Some(64));
    assert_eq!(aqg(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_1() {
    assert_eq!(aqg(&["verify", "/nonexistent/q.json"]).status.code(), Some(1));
}

#[test]
fn truncated_file_exits_1() {
    let z2 = builtin("z2", "z2_trunc.json");
    let text = std::fs::read_to_string(&z2).unwrap();
    std::fs::write(&z2, &text[..text.len() / 3]).unwrap();
    let out = aqg(&["verify", &z2]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse"));
}

#[test]
fn unknown_builtin_exits_1() {
    assert_eq!(aqg(&["builtin", "z7"]).status.code(), Some(1));
}

#[test]
fn suq2_csv_rows() {
    let out = aqg(&["suq2", "--q", "0.5", "--max-spin", "2", "--csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,n,d,q");
    assert_eq!(lines[1], "0,1,1,1");
    assert_eq!(lines[2], "0.5,2,2.5,0.8");
    assert_eq!(lines.len(), 6);
}

#[test]
fn suq2_rejects_bad_q() {
    assert_eq!(aqg(&["suq2", "--q", "1.5", "--max-spin", "1"]).status.code(), Some(1));
}

#[test]
fn generator_regular_equals_w_hat() {
    let kp = builtin("kac-paljutkin", "kp_gen.json");
    let out = aqg(&["generator", &kp, "--rep", "regular"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let line = text.lines().find(|l| l.contains("equals_w_hat")).unwrap();
    assert!(line.starts_with("PASS"));
    for rep in ["counit", "random"] {
        let out = aqg(&["generator", &kp, "--rep", rep, "--seed", "5"]);
        assert!(out.status.success(), "{rep}");
        assert!(stdout(&out).contains("round_trip"));
    }
}

#[test]
fn dualize_round_trips() {
    let s3 = builtin("s3-group", "s3_for_dual.json");
    let dual = scratch("s3_dual.json");
    let d = dual.to_str().unwrap();
    assert!(aqg(&["dualize", &s3, "-o", d]).status.success());
    let out = aqg(&["verify", d, "--suite", "axioms"]);
    assert!(out.status.success());
    // the dual of a group algebra is commutative
    assert!(stdout(&out).contains("blocks = [1, 1, 1, 1, 1, 1]"));
}

#[test]
fn report_qdim_csv() {
    let s3 = builtin("s3-function", "s3f_qdim.json");
    let out = aqg(&["report", "qdim", &s3, "--csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "alpha,n,d,q\n0,1,1,1\n1,1,1,1\n2,2,2,1\n");
}

#[test]
fn broken_comultiplication_exits_2_and_names_check() {
    let z4 = builtin("z4", "z4_broken.json");
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&z4).unwrap()).unwrap();
    doc["comult"][1][0][0] = serde_json::json!(0.25);
    std::fs::write(&z4, doc.to_string()).unwrap();
    let out = aqg(&["verify", &z4]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("violated check:"));
}
