//! Elements of the operator ring K[∂] with left coefficients.

use std::fmt;

use crate::field::{DiffField, RationalFunction};

use super::DiffAlgError;

/// L = Σ aᵢ ∂ⁱ for a fixed derivation ∂ of the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinOp {
    coeffs: Vec<RationalFunction>,
    derivation: String,
    field: DiffField,
}

impl LinOp {
    pub fn new(field: &DiffField, derivation: &str, coeffs: Vec<RationalFunction>) -> Result<Self, DiffAlgError> {
        if !field.derivation_names().iter().any(|d| d == derivation) {
            return Err(DiffAlgError::UnknownDerivation(derivation.to_string()));
        }
        if coeffs.iter().any(|c| !field.owns(c)) {
            return Err(DiffAlgError::FieldMismatch);
        }
        let mut op = LinOp { coeffs, derivation: derivation.to_string(), field: field.clone() };
        op.trim();
        Ok(op)
    }

    pub fn zero(field: &DiffField, derivation: &str) -> Result<Self, DiffAlgError> {
        Self::new(field, derivation, Vec::new())
    }

    pub fn one(field: &DiffField, derivation: &str) -> Result<Self, DiffAlgError> {
        Self::new(field, derivation, vec![field.one()])
    }

    /// The operator ∂ itself.
    pub fn d(field: &DiffField, derivation: &str) -> Result<Self, DiffAlgError> {
        Self::new(field, derivation, vec![field.zero(), field.one()])
    }

    /// Multiplication by a ∈ K.
    pub fn scalar(field: &DiffField, derivation: &str, a: RationalFunction) -> Result<Self, DiffAlgError> {
        Self::new(field, derivation, vec![a])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RationalFunction::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[RationalFunction] {
        &self.coeffs
    }

    pub fn derivation(&self) -> &str {
        &self.derivation
    }

    /// Highest power of ∂ with nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn compatible(&self, other: &LinOp) -> Result<(), DiffAlgError> {
        if self.field != other.field {
            return Err(DiffAlgError::FieldMismatch);
        }
        if self.derivation != other.derivation {
            return Err(DiffAlgError::DerivationMismatch(self.derivation.clone(), other.derivation.clone()));
        }
        Ok(())
    }

    fn der(&self, a: &RationalFunction) -> RationalFunction {
        self.field.derive(a, &self.derivation).expect("derivation checked at construction")
    }

    pub fn add(&self, other: &LinOp) -> Result<LinOp, DiffAlgError> {
        self.compatible(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)).collect();
        let mut out = LinOp { coeffs, ..self.clone() };
        out.trim();
        Ok(out)
    }

    /// ∂·L, using ∂·a = a·∂ + ∂(a) on every coefficient.
    fn d_times(&self) -> LinOp {
        let zero = self.field.zero();
        let mut coeffs = vec![zero; self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = &coeffs[j + 1] + c;
            coeffs[j] = &coeffs[j] + &self.der(c);
        }
        let mut out = LinOp { coeffs, ..self.clone() };
        out.trim();
        out
    }

    /// Product in K[∂].
    pub fn mul(&self, other: &LinOp) -> Result<LinOp, DiffAlgError> {
        self.compatible(other)?;
        let mut acc = LinOp { coeffs: Vec::new(), ..self.clone() };
        // power = ∂ⁱ·other, built up one ∂ at a time
        let mut power = other.clone();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.d_times();
            }
            if a.is_zero() {
                continue;
            }
            let scaled = LinOp { coeffs: power.coeffs.iter().map(|c| a * c).collect(), ..self.clone() };
            acc = acc.add(&scaled)?;
        }
        Ok(acc)
    }

    /// Σ aᵢ ∂ⁱ(a).
    pub fn apply(&self, a: &RationalFunction) -> Result<RationalFunction, DiffAlgError> {
        if !self.field.owns(a) {
            return Err(DiffAlgError::FieldMismatch);
        }
        let mut acc = self.field.zero();
        let mut cur = a.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                cur = self.der(&cur);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &cur);
            }
        }
        Ok(acc)
    }

    /// Drops the terms of order above `p`.
    pub fn truncate(&self, p: usize) -> LinOp {
        let mut out = self.clone();
        out.coeffs.truncate(p + 1);
        out.trim();
        out
    }
}

impl fmt::Display for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let d = match i {
                0 => String::new(),
                1 => self.derivation.clone(),
                _ => format!("{}^{}", self.derivation, i),
            };
            match (i, c.is_one()) {
                (0, _) => write!(f, "({c})")?,
                (_, true) => write!(f, "{d}")?,
                _ => write!(f, "({c})*{d}")?,
            }
        }
        Ok(())
    }
}
