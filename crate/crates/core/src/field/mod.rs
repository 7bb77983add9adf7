//! Differential rational-function fields Q(x₁,…,x_r) with commuting derivations.

mod parse;
pub mod poly;
mod rational;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use parse::parse_rational;
pub use poly::Poly;
pub use rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown derivation `{0}`")]
    UnknownDerivation(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("derivations `{0}` and `{1}` do not commute on `{2}`")]
    NonCommuting(String, String, String),
    #[error("field has no parameter derivation")]
    NoParameter,
    #[error("invalid field description: {0}")]
    Invalid(String),
}

#[derive(Debug)]
struct Inner {
    vars: Arc<[String]>,
    names: Vec<String>,
    // images[k][i] = k-th derivation applied to variable i
    images: Vec<Vec<RationalFunction>>,
    poly_images: bool,
    principal: usize,
    parameter: Option<usize>,
}

/// A field Q(x₁,…,x_r) with named derivations given on generators.
#[derive(Clone, Debug)]
pub struct DiffField(Arc<Inner>);

impl PartialEq for DiffField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.vars == other.0.vars
                && self.0.names == other.0.names
                && self.0.images == other.0.images
                && self.0.principal == other.0.principal
                && self.0.parameter == other.0.parameter)
    }
}

impl Eq for DiffField {}

impl DiffField {
    /// Builds a field from derivation images written as expressions; unlisted images are 0.
    pub fn new(
        vars: &[&str],
        derivations: &[(&str, &[(&str, &str)])],
        principal: &str,
        parameter: Option<&str>,
    ) -> Result<Self, FieldError> {
        let shape: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        let mut table = Vec::new();
        for (name, imgs) in derivations {
            let mut row = vec![RationalFunction::zero(&shape); shape.len()];
            for (v, e) in imgs.iter() {
                let i = shape.iter().position(|x| x == v).ok_or_else(|| FieldError::UnknownVariable(v.to_string()))?;
                row[i] = parse_rational(e, &shape)?;
            }
            table.push((name.to_string(), row));
        }
        Self::from_images(shape, table, principal, parameter)
    }

    pub fn from_images(
        vars: Arc<[String]>,
        derivations: Vec<(String, Vec<RationalFunction>)>,
        principal: &str,
        parameter: Option<&str>,
    ) -> Result<Self, FieldError> {
        let mut seen = std::collections::BTreeSet::new();
        for v in vars.iter() {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(FieldError::Invalid(format!("bad or repeated variable `{v}`")));
            }
        }
        let names: Vec<String> = derivations.iter().map(|d| d.0.clone()).collect();
        let find = |n: &str| names.iter().position(|x| x == n).ok_or_else(|| FieldError::UnknownDerivation(n.to_string()));
        let principal = find(principal)?;
        let parameter = parameter.map(find).transpose()?;
        if parameter == Some(principal) {
            return Err(FieldError::Invalid("principal and parameter derivations coincide".into()));
        }
        let images: Vec<Vec<RationalFunction>> = derivations.into_iter().map(|d| d.1).collect();
        for row in &images {
            if row.len() != vars.len() || row.iter().any(|r| r.vars() != &vars) {
                return Err(FieldError::Invalid("derivation table does not match variables".into()));
            }
        }
        let poly_images = images.iter().flatten().all(|r| r.is_polynomial());
        let field = DiffField(Arc::new(Inner { vars, names, images, poly_images, principal, parameter }));
        field.check_commuting()?;
        Ok(field)
    }

    /// Q(x,t) with ∂ₓ = `dx` principal and ∂_t = `dt` parameter.
    pub fn standard() -> Self {
        DiffField::new(&["x", "t"], &[("dx", &[("x", "1")]), ("dt", &[("t", "1")])], "dx", Some("dt")).expect("standard field")
    }

    /// Q(v) with a single derivation `d` sending v to 1.
    pub fn univariate(v: &str) -> Self {
        DiffField::new(&[v], &[("d", &[(v, "1")])], "d", None).expect("univariate field")
    }

    fn check_commuting(&self) -> Result<(), FieldError> {
        let k = self.0.names.len();
        for a in 0..k {
            for b in (a + 1)..k {
                for (i, v) in self.0.vars.iter().enumerate() {
                    let ab = self.derive_idx(&self.0.images[b][i], a);
                    let ba = self.derive_idx(&self.0.images[a][i], b);
                    if ab != ba {
                        return Err(FieldError::NonCommuting(self.0.names[a].clone(), self.0.names[b].clone(), v.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.0.vars
    }

    pub fn derivation_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn principal(&self) -> &str {
        &self.0.names[self.0.principal]
    }

    pub fn parameter(&self) -> Option<&str> {
        self.0.parameter.map(|k| self.0.names[k].as_str())
    }

    /// Image of variable `var` under derivation `d`.
    pub fn image(&self, d: &str, var: &str) -> Option<&RationalFunction> {
        let k = self.0.names.iter().position(|x| x == d)?;
        let i = self.0.vars.iter().position(|x| x == var)?;
        Some(&self.0.images[k][i])
    }

    pub fn parse(&self, text: &str) -> Result<RationalFunction, FieldError> {
        parse_rational(text, &self.0.vars)
    }

    pub fn zero(&self) -> RationalFunction {
        RationalFunction::zero(&self.0.vars)
    }

    pub fn one(&self) -> RationalFunction {
        RationalFunction::one(&self.0.vars)
    }

    pub fn int(&self, k: i64) -> RationalFunction {
        RationalFunction::from_integer(&self.0.vars, k)
    }

    pub fn var(&self, name: &str) -> Result<RationalFunction, FieldError> {
        let i = self.0.vars.iter().position(|x| x == name).ok_or_else(|| FieldError::UnknownVariable(name.to_string()))?;
        Ok(RationalFunction::var(&self.0.vars, i))
    }

    pub fn owns(&self, a: &RationalFunction) -> bool {
        Arc::ptr_eq(a.vars(), &self.0.vars) || **a.vars() == *self.0.vars
    }

    /// Applies the named derivation.
    pub fn derive(&self, a: &RationalFunction, d: &str) -> Result<RationalFunction, FieldError> {
        let k = self.0.names.iter().position(|x| x == d).ok_or_else(|| FieldError::UnknownDerivation(d.to_string()))?;
        if !self.owns(a) {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.derive_idx(a, k))
    }

    /// Principal derivation ∂ₓ.
    pub fn dx(&self, a: &RationalFunction) -> RationalFunction {
        self.derive_idx(a, self.0.principal)
    }

    /// Parameter derivation ∂_t.
    pub fn dt(&self, a: &RationalFunction) -> Result<RationalFunction, FieldError> {
        let k = self.0.parameter.ok_or(FieldError::NoParameter)?;
        Ok(self.derive_idx(a, k))
    }

    fn derive_poly(&self, p: &Poly, k: usize) -> RationalFunction {
        let vars = &self.0.vars;
        let imgs = &self.0.images[k];
        if self.0.poly_images {
            let mut acc = Poly::zero(vars.len());
            for (i, img) in imgs.iter().enumerate() {
                if img.is_zero() {
                    continue;
                }
                let part = p.partial(i);
                if !part.is_zero() {
                    acc = acc.add(&part.mul(img.numerator()));
                }
            }
            return RationalFunction::from_poly(vars, acc);
        }
        let mut acc = RationalFunction::zero(vars);
        for (i, img) in imgs.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let part = p.partial(i);
            if !part.is_zero() {
                acc = &acc + &(&RationalFunction::from_poly(vars, part) * img);
            }
        }
        acc
    }

    pub(crate) fn derive_idx(&self, a: &RationalFunction, k: usize) -> RationalFunction {
        let vars = &self.0.vars;
        let dn = self.derive_poly(a.numerator(), k);
        if a.is_polynomial() {
            return dn;
        }
        let dm = self.derive_poly(a.denominator(), k);
        let n = RationalFunction::from_poly(vars, a.numerator().clone());
        let m = RationalFunction::from_poly(vars, a.denominator().clone());
        // (n/m)' = n'/m - n m'/m²
        let first = &dn / &m;
        let second = &(&n * &dm) / &(&m * &m);
        &first - &second
    }
}

impl fmt::Display for DiffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.0.vars.join(","))
    }
}
