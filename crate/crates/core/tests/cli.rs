use std::path::PathBuf;
use std::process::{Command, Output};

fn jobs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("jobs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_difftann")).args(args).output().expect("binary runs")
}

fn job(name: &str) -> String {
    jobs().join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("difftann-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

const FIELD: &str =
    r#""field": {"vars": ["x", "t"], "derivations": {"dx": {"x": "1"}, "dt": {"t": "1"}}, "principal": "dx", "parameter": "dt"}"#;

#[test]
fn prolong_prints_the_block_matrix() {
    let out = run(&[&job("prolong.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outputs"]["M"]["matrix"], serde_json::json!([["x*t", "x"], ["0", "x*t"]]));
}

#[test]
fn verify_reports_the_two_failing_diagrams() {
    let out = run(&["--format", "text", &job("verify.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("5/7 checks pass"), "{text}");
    assert!(text.contains("comult") && text.contains("[realized: equal]"));
}

#[test]
fn passing_jobs_exit_zero() {
    for name in ["hopf.json", "unipotent.json", "point.json", "reconstruct.json"] {
        let out = run(&[&job(name)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn verb_on_the_command_line_overrides_the_job() {
    let out = run(&["dual", &job("prolong.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["command"], "dual");
}

#[test]
fn input_errors_exit_two() {
    let bad_entry =
        scratch("bad.json", &format!(r#"{{{FIELD}, "modules": [{{"name": "M", "matrix": [["1/0"]]}}], "command": "prolong"}}"#));
    let out = run(&[&bad_entry]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(0, 0)"));

    let no_derivs = scratch(
        "noderiv.json",
        r#"{"field": {"vars": ["x"], "principal": "dx"}, "modules": [{"name": "M", "matrix": [["x"]]}], "command": "prolong"}"#,
    );
    assert_eq!(run(&[&no_derivs]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", &job("prolong.json")]).status.code(), Some(2));
    assert_eq!(run(&["/nonexistent/job.json"]).status.code(), Some(2));
}

#[test]
fn seeded_runs_repeat_byte_for_byte() {
    let a = run(&["--seed", "11", &job("reconstruct.json")]);
    let b = run(&["--seed", "11", &job("reconstruct.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
