//! End-to-end checks of the remaining subcommands and the I/O plumbing.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const P2: &str = r#"{"rays":[[1,0],[0,1],[-1,-1]],"interior_blowups":[0,0,0]}"#;
const F3_BLOWN: &str = r#"{"rays":[[1,0],[0,1],[-1,3],[0,-1]],"interior_blowups":[1,0,1,0]}"#;

fn run(input: &str, args: &[&str]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lcy"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn build_emits_the_p2_cycles() {
    let out = run(P2, &["build"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["k"], 3);
    assert_eq!(doc["cycles"][2]["d"], serde_json::json!([2, 2, 2]));
}

#[test]
fn classify_and_destab_agree_on_the_f3_example() {
    let out = run(F3_BLOWN, &["classify"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["case"], "C2bi");
    assert_eq!(report["blowdown_seq"], serde_json::json!([1, 3, 2]));

    let out = run(F3_BLOWN, &["destab"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["fibration"]["k"], 1);
    assert_eq!(doc["fibration"]["cycles"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_rejects_ineligible_models_with_exit_1() {
    let out = run(P2, &["classify"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mmp_and_cohomology() {
    let out = run(F3_BLOWN, &["mmp"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["minimal_model"], "F3");

    let out = run(P2, &["cohomology", "--divisor", "2,0,0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "6 0 0\n");

    let out = run(P2, &["cohomology", "--divisor", "-1,0,0"]);
    assert_eq!(stdout(&out), "0 0 0\n");
}

#[test]
fn emit_subcommands_are_deterministic() {
    let spec = r#"{"rays":[[1,0],[0,1],[-1,-1]],"interior_blowups":[1,1,1]}"#;
    for what in ["base", "handlebody", "svg"] {
        let a = run(spec, &["emit", what]);
        let b = run(spec, &["emit", what]);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let svg = stdout(&run(spec, &["emit", "svg"]));
    assert!(svg.starts_with("<svg "));
    assert!(svg.contains("version=\"1.1\""));
}

#[test]
fn file_io_round_trip() {
    let dir = std::env::temp_dir().join(format!("lcy-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let inp = dir.join("surface.json");
    let outp = dir.join("fibration.json");
    std::fs::write(&inp, P2).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_lcy"))
        .args(["build", "--in"])
        .arg(&inp)
        .arg("--out")
        .arg(&outp)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&outp).unwrap();
    let piped = stdout(&run(P2, &["build"]));
    assert_eq!(text, piped);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corpus_seed_is_reproducible() {
    let with_seed = |seed: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_lcy"))
            .args(["verify", "monodromy", "--corpus", "5"])
            .env("LCY_SEED", seed)
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(with_seed("42"), with_seed("42"));
    assert!(with_seed("42").contains("\"witness\":[42,5]"));
}
