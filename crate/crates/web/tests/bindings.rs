use difftann_web::{hopf_report, parse_rows, prolong_report, verify_report};
use serde_json::Value;

#[test]
fn rows_split() {
    assert_eq!(parse_rows("t*x, 1; 0, t"), vec![vec!["t*x", "1"], vec!["0", "t"]]);
    assert_eq!(parse_rows("t\n"), vec![vec!["t"]]);
}

#[test]
fn prolong_json() {
    let v: Value = serde_json::from_str(&prolong_report("t*x").unwrap()).unwrap();
    assert_eq!(v["outputs"]["M"]["matrix"], serde_json::json!([["x*t", "x"], ["0", "x*t"]]));
}

#[test]
fn verify_json() {
    let v: Value = serde_json::from_str(&verify_report("t*x", false).unwrap()).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 7);
    let bad = verify_report("1/0", false).unwrap_err();
    assert!(bad.contains("(0, 0)"), "{bad}");
}

#[test]
fn hopf_json() {
    let v: Value = serde_json::from_str(&hopf_report(1, 2).unwrap()).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(hopf_report(9, 1).is_err());
}
