//! Pass/fail records shared by every verifier.

use serde::Serialize;

use crate::matrix::Mismatch;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: String,
    pub objects: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Outcome of the same comparison after realization into the coordinate ring, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realized: Option<bool>,
}

impl AxiomReport {
    pub fn new(axiom: &str, objects: Vec<String>) -> Self {
        AxiomReport { axiom: axiom.to_string(), objects, pass: true, mismatch: None, detail: None, realized: None }
    }

    pub fn from_mismatch(axiom: &str, objects: Vec<String>, mismatch: Option<Mismatch>) -> Self {
        AxiomReport { pass: mismatch.is_none(), mismatch, ..Self::new(axiom, objects) }
    }

    pub fn fail(mut self, detail: impl Into<String>) -> Self {
        self.pass = false;
        self.detail = Some(detail.into());
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn line(&self) -> String {
        let mut s = format!("{} [{}]: {}", self.axiom, self.objects.join(", "), if self.pass { "pass" } else { "FAIL" });
        if let Some(m) = &self.mismatch {
            s.push_str(&format!(" at ({}, {}): {} vs {}", m.row, m.col, m.left, m.right));
        }
        if let Some(d) = &self.detail {
            s.push_str(&format!(" ({d})"));
        }
        if let Some(r) = self.realized {
            s.push_str(&format!(" [realized: {}]", if r { "equal" } else { "differ" }));
        }
        s
    }
}
