//! Job files, command dispatch and reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::diffmod::{DiffCategory, DiffModule, ModError, Mode};
use crate::field::{DiffField, FieldError};
use crate::hopf::{Comodule, DiffHopfAlgebra, HopfError};
use crate::matrix::Matrix;
use crate::reconstruct::{GroupPoint, MatrixCoefficient, ReconError, Reconstruction};
use crate::report::AxiomReport;
use crate::structmaps::{Axiom, StructError, StructMaps, DEFAULT_CAP};

pub const VERBS: [&str; 7] = ["prolong", "tensor", "dual", "verify", "hopf-check", "reconstruct-check", "group-point"];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("schema violation at `{path}`: {msg}")]
    Schema { path: String, msg: String },
    #[error("module `{module}` entry ({row}, {col}): {err}")]
    Entry { module: String, row: usize, col: usize, err: FieldError },
    #[error("invalid job: {0}")]
    Invalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Mod(#[from] ModError),
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Recon(#[from] ReconError),
}

impl CliError {
    /// Input problems exit with 2, failures while running with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Schema { .. } | CliError::Entry { .. } | CliError::Invalid(_) | CliError::Field(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub vars: Vec<String>,
    pub derivations: BTreeMap<String, BTreeMap<String, String>>,
    pub principal: String,
    #[serde(default)]
    pub parameter: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

fn default_name() -> String {
    "M".into()
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub gen: String,
    #[serde(default)]
    pub order: u16,
    pub value: String,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub order: Option<u16>,
    pub seed: Option<u64>,
    pub cap: Option<usize>,
    pub trivial: Option<bool>,
    pub format: Option<String>,
    /// GLₙ size for hopf-check when no module is given.
    pub n: Option<usize>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    /// Group point entries for group-point.
    pub point: Option<Vec<Vec<String>>>,
    pub depth: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RawJob {
    pub field: FieldSpec,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
    pub command: Option<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A validated job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub field: DiffField,
    pub modules: Vec<DiffModule>,
    pub names: Vec<String>,
    pub command: String,
    pub options: Options,
    pub format: Format,
}

fn schema<E: std::fmt::Display>(e: serde_path_to_error::Error<E>) -> CliError {
    let path = e.path().to_string();
    CliError::Schema { path, msg: e.into_inner().to_string() }
}

pub fn parse_job(text: &str) -> Result<RawJob, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(schema)
}

pub fn load_job(path: &Path) -> Result<JobSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    validate(parse_job(&text)?)
}

pub fn build_field(spec: &FieldSpec) -> Result<DiffField, CliError> {
    let vars: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
    let imgs: Vec<(&str, Vec<(&str, &str)>)> =
        spec.derivations.iter().map(|(d, m)| (d.as_str(), m.iter().map(|(v, e)| (v.as_str(), e.as_str())).collect())).collect();
    let refs: Vec<(&str, &[(&str, &str)])> = imgs.iter().map(|(d, m)| (*d, m.as_slice())).collect();
    Ok(DiffField::new(&vars, &refs, &spec.principal, spec.parameter.as_deref())?)
}

pub fn parse_matrix(field: &DiffField, name: &str, rows: &[Vec<String>]) -> Result<Matrix, CliError> {
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for (r, row) in rows.iter().enumerate() {
        let mut vals = Vec::with_capacity(row.len());
        for (c, e) in row.iter().enumerate() {
            vals.push(field.parse(e).map_err(|err| CliError::Entry { module: name.to_string(), row: r, col: c, err })?);
        }
        out.push(vals);
    }
    if out.iter().any(|r| r.len() != out.first().map_or(0, Vec::len)) {
        return Err(CliError::Invalid(format!("`{name}` has ragged rows")));
    }
    Ok(Matrix::from_rows(field, out))
}

pub fn validate(raw: RawJob) -> Result<JobSpec, CliError> {
    let field = build_field(&raw.field)?;
    let mut modules = Vec::new();
    for m in &raw.modules {
        let mat = parse_matrix(&field, &m.name, &m.matrix)?;
        if !mat.is_square() || mat.rows() == 0 {
            return Err(CliError::Invalid(format!("module `{}` is not a nonempty square matrix", m.name)));
        }
        modules.push(DiffModule::new(&field, mat, &m.name)?);
    }
    let command = raw.command.clone().unwrap_or_default();
    let format = match raw.options.format.as_deref() {
        None | Some("json") => Format::Json,
        Some("text") => Format::Text,
        Some(other) => return Err(CliError::Schema { path: "options.format".into(), msg: format!("unknown format `{other}`") }),
    };
    let names = raw.modules.iter().map(|m| m.name.clone()).collect();
    Ok(JobSpec { field, modules, names, command, options: raw.options, format })
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub checks: Vec<AxiomReport>,
    pub outputs: BTreeMap<String, Value>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.to_string(), pass: true, checks: Vec::new(), outputs: BTreeMap::new() }
    }

    fn push(&mut self, r: AxiomReport) {
        self.pass &= r.pass;
        self.checks.push(r);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.command, if self.pass { "pass" } else { "FAIL" });
        for (k, v) in &self.outputs {
            s.push_str(&format!("{k}: {v}\n"));
        }
        for c in &self.checks {
            s.push_str(&c.line());
            s.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        if !self.checks.is_empty() {
            s.push_str(&format!("{passed}/{} checks pass\n", self.checks.len()));
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

fn first(job: &JobSpec) -> Result<&DiffModule, CliError> {
    job.modules.first().ok_or_else(|| CliError::Invalid(format!("`{}` needs at least one module", job.command)))
}

fn mat_json(m: &Matrix) -> Value {
    json!(m.to_strings())
}

fn module_json(m: &DiffModule) -> Value {
    json!({ "dim": m.dim(), "basis": m.basis_labels(), "matrix": mat_json(m.sys()) })
}

pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let opts = &job.options;
    let mode = if opts.trivial.unwrap_or(false) { Mode::Trivial } else { Mode::Parametric };
    let cat = DiffCategory::new(&job.field, mode)?;
    let mut rep = Report::new(&job.command);
    match job.command.as_str() {
        "prolong" => {
            for (m, name) in job.modules.iter().zip(&job.names) {
                rep.outputs.insert(name.clone(), module_json(&cat.prolong(m)?));
            }
            first(job)?;
        }
        "tensor" => {
            let m = first(job)?;
            let n = job.modules.get(1).unwrap_or(m);
            rep.outputs.insert("tensor".into(), module_json(&cat.tensor(m, n)?));
        }
        "dual" => {
            for (m, name) in job.modules.iter().zip(&job.names) {
                rep.outputs.insert(name.clone(), module_json(&cat.dual(m)?));
            }
            first(job)?;
        }
        "verify" => verify(job, &cat, &mut rep)?,
        "hopf-check" => hopf_check(job, &mut rep)?,
        "reconstruct-check" => reconstruct_check(job, &mut rep)?,
        "group-point" => group_point(job, &mut rep)?,
        other => return Err(CliError::Invalid(format!("unknown command `{other}`; expected one of {}", VERBS.join(", ")))),
    }
    Ok(rep)
}

fn verify(job: &JobSpec, cat: &DiffCategory, rep: &mut Report) -> Result<(), CliError> {
    let m = first(job)?;
    let n = Some(job.modules.get(1).unwrap_or(m));
    let cap = job.options.cap.unwrap_or(DEFAULT_CAP);
    let maps = StructMaps::new(cat);
    // realization needs the parametric category and a small base
    let recon = if cat.mode() == Mode::Parametric && m.dim() <= 2 { Some(Reconstruction::new(m, 1)?) } else { None };
    for axiom in Axiom::ALL {
        let mut r = maps.verify(axiom, m, n, cap)?;
        if let (false, Some(rc)) = (r.pass, &recon) {
            r.realized = match axiom {
                Axiom::Comult => Some(rc.realized_comult(m)?),
                Axiom::DualCompat => Some(rc.realized_dual_compat(m)?),
                _ => None,
            };
        }
        rep.push(r);
    }
    let witness: Vec<Value> =
        maps.witness_values(m)?.iter().map(|(s, t)| json!({ "via_s": s.to_string(), "via_t": t.to_string() })).collect();
    rep.outputs.insert("witness".into(), json!(witness));
    if cat.mode() == Mode::Parametric {
        let t = job.field.var(job.field.vars().last().expect("field has variables"))?;
        rep.outputs.insert("induced_derivation_of_last_var".into(), json!(cat.induced_derivation(&t)?.to_string()));
    }
    Ok(())
}

fn hopf_check(job: &JobSpec, rep: &mut Report) -> Result<(), CliError> {
    let n = job.options.n.or_else(|| job.modules.first().map(DiffModule::dim)).unwrap_or(1);
    let p = job.options.order.unwrap_or(1);
    let rels: Vec<(&str, u16, &str)> = job.options.relations.iter().map(|r| (r.gen.as_str(), r.order, r.value.as_str())).collect();
    let h = DiffHopfAlgebra::gl_subgroup(&job.field, n, p, &rels)?;
    rep.outputs.insert("generators".into(), json!(h.generators()));
    rep.outputs.insert("relations".into(), json!(h.relation_polys().iter().map(|r| h.display(r)).collect::<Vec<_>>()));
    for r in h.check(p)? {
        rep.push(r);
    }
    let std = Comodule::standard(&h)?;
    for mut r in std.check(&h)? {
        r.objects = vec!["standard comodule".into()];
        rep.push(r);
    }
    if p >= 1 {
        for mut r in std.prolong(&h)?.check(&h)? {
            r.objects = vec!["prolonged standard comodule".into()];
            rep.push(r);
        }
    }
    Ok(())
}

fn reconstruct_check(job: &JobSpec, rep: &mut Report) -> Result<(), CliError> {
    let m = first(job)?;
    let opts = &job.options;
    let depth = opts.depth.unwrap_or(2);
    let samples = opts.samples.unwrap_or(10);
    let p = opts.order.unwrap_or(depth as u16 + 1);
    let cap = opts.cap.unwrap_or(8);
    let rc = Reconstruction::new(m, p)?;
    let mut rng = crate::gen::rng(opts.seed.unwrap_or(0));
    let mut tally: BTreeMap<String, (usize, Option<AxiomReport>)> = BTreeMap::new();
    let mut note = |r: AxiomReport| {
        let e = tally.entry(r.axiom.clone()).or_insert((0, None));
        e.0 += 1;
        if !r.pass && e.1.is_none() {
            e.1 = Some(r);
        }
    };
    let room = p.saturating_sub(1);
    for _ in 0..samples {
        let v = rc.random_object(&mut rng, depth, cap, room)?;
        let w = rc.random_object(&mut rng, depth.min(1), cap.min(4), room)?;
        let a = rc.random_coefficient(&mut rng, &v);
        let b = rc.random_coefficient(&mut rng, &w);
        note(rc.check_multiplicative(&a, &b)?);
        note(rc.check_derive_contract(&a)?);
        note(rc.check_comult_contract(&a)?);
        note(rc.check_counit_contract(&a)?);
        note(rc.check_coinverse_contract(&a)?);
        note(rc.check_diffeval(&a)?);
        note(rc.check_diffdual(&a)?);
        if w.dim() * v.dim() <= cap {
            note(rc.check_product_rule(&a, &b)?);
        }
    }
    let base = rc.base();
    let k = &job.field;
    for f in rc.catalog(std::slice::from_ref(&base), cap.max(16))? {
        let v: Vec<_> = (0..f.src.dim()).map(|_| crate::gen::element(&mut rng, k, 1)).collect();
        let u: Vec<_> = (0..f.dst.dim()).map(|_| crate::gen::element(&mut rng, k, 1)).collect();
        rep.push(rc.check_relation(&f, &v, &u)?);
    }
    for (name, (count, failure)) in tally {
        let r = match failure {
            Some(f) => f,
            None => AxiomReport::new(&name, vec![format!("{count} seeded samples")]),
        };
        rep.push(r);
    }
    let unit = MatrixCoefficient::basis(&rc.unit(), 0, 0);
    rep.outputs.insert("unit_realizes_to".into(), json!(rc.hopf().display(&rc.realize_coefficient(&unit))));
    Ok(())
}

fn group_point(job: &JobSpec, rep: &mut Report) -> Result<(), CliError> {
    let m = first(job)?;
    let rows = job.options.point.clone().unwrap_or_else(|| {
        (0..m.dim()).map(|i| (0..m.dim()).map(|j| if i == j { "1".to_string() } else { "0".to_string() }).collect()).collect()
    });
    let g = parse_matrix(&job.field, "point", &rows)?;
    if g.rows() != m.dim() || !g.is_square() {
        return Err(CliError::Invalid(format!("point must be {0}×{0}", m.dim())));
    }
    let p = job.options.order.unwrap_or(2);
    let rc = Reconstruction::new(m, p)?;
    let point = GroupPoint::over_k(&job.field, &g)?;
    let x = rc.base();
    let objects = vec![x.clone(), rc.dual(&x)?];
    for r in rc.check_group_point(&point, &objects)? {
        rep.push(r);
    }
    let lam: Vec<Vec<String>> = {
        let lp = rc.prolong(&x)?.rep().try_map(|e| point.evaluate(rc.hopf(), e))?;
        (0..lp.rows()).map(|r| (0..lp.cols()).map(|c| point.ring().display(lp.get(r, c))).collect()).collect()
    };
    rep.outputs.insert("lambda_prolonged".into(), json!(lam));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIELD: &str =
        r#""field": {"vars": ["x", "t"], "derivations": {"dx": {"x": "1"}, "dt": {"t": "1"}}, "principal": "dx", "parameter": "dt"}"#;

    fn job(rest: &str) -> Result<JobSpec, CliError> {
        validate(parse_job(&format!("{{{FIELD}, {rest}}}"))?)
    }

    #[test]
    fn minimal_prolong() {
        let j = job(r#""modules": [{"name": "M", "matrix": [["t*x"]]}], "command": "prolong""#).unwrap();
        let r = run(&j).unwrap();
        assert!(r.pass);
        assert_eq!(r.outputs["M"]["matrix"], json!([["x*t", "x"], ["0", "x*t"]]));
    }

    #[test]
    fn bad_entry_is_named() {
        let err = job(r#""modules": [{"name": "M", "matrix": [["1/0"]]}], "command": "prolong""#).unwrap_err();
        assert!(matches!(err, CliError::Entry { row: 0, col: 0, .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn missing_derivations() {
        let err = parse_job(r#"{"field": {"vars": ["x"], "principal": "dx"}, "command": "prolong"}"#).unwrap_err();
        assert!(matches!(&err, CliError::Schema { .. }), "{err}");
        assert!(err.to_string().contains("derivations"), "{err}");
    }

    #[test]
    fn hopf_check_small() {
        let j = job(r#""command": "hopf-check", "options": {"n": 2, "order": 1}"#).unwrap();
        let r = run(&j).unwrap();
        assert!(r.pass, "{}", r.to_text());
    }
}
