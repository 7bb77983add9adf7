//! Browser bindings: each call takes plain strings and returns a JSON report.

use difftann::cli::{self, FieldSpec, ModuleSpec, Options, RawJob};
use wasm_bindgen::prelude::*;

fn field() -> FieldSpec {
    let der = |v: &str| [(v.to_string(), "1".to_string())].into_iter().collect();
    FieldSpec {
        vars: vec!["x".into(), "t".into()],
        derivations: [("dx".to_string(), der("x")), ("dt".to_string(), der("t"))].into_iter().collect(),
        principal: "dx".into(),
        parameter: Some("dt".into()),
    }
}

/// Rows separated by `;` or newlines, entries by `,`.
pub fn parse_rows(text: &str) -> Vec<Vec<String>> {
    text.split([';', '\n']).map(str::trim).filter(|r| !r.is_empty()).map(|r| r.split(',').map(|e| e.trim().to_string()).collect()).collect()
}

fn run(command: &str, modules: Vec<ModuleSpec>, options: Options) -> Result<String, String> {
    let raw = RawJob { field: field(), modules, command: Some(command.into()), options };
    let job = cli::validate(raw).map_err(|e| e.to_string())?;
    cli::run(&job).map(|r| r.to_json()).map_err(|e| e.to_string())
}

pub fn prolong_report(matrix: &str) -> Result<String, String> {
    run("prolong", vec![ModuleSpec { name: "M".into(), matrix: parse_rows(matrix) }], Options::default())
}

pub fn verify_report(matrix: &str, trivial: bool) -> Result<String, String> {
    let opts = Options { trivial: Some(trivial), ..Options::default() };
    run("verify", vec![ModuleSpec { name: "M".into(), matrix: parse_rows(matrix) }], opts)
}

pub fn hopf_report(n: u32, order: u32) -> Result<String, String> {
    if n == 0 || n > 3 || order > 3 {
        return Err("demo limits: 1 ≤ n ≤ 3, order ≤ 3".into());
    }
    let opts = Options { n: Some(n as usize), order: Some(order as u16), ..Options::default() };
    run("hopf-check", Vec::new(), opts)
}

#[wasm_bindgen]
pub fn prolong(matrix: &str) -> Result<String, JsValue> {
    prolong_report(matrix).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(matrix: &str, trivial: bool) -> Result<String, JsValue> {
    verify_report(matrix, trivial).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = hopfCheck)]
pub fn hopf_check(n: u32, order: u32) -> Result<String, JsValue> {
    hopf_report(n, order).map_err(|e| JsValue::from_str(&e))
}
