//! The operator ring K[∂] and differential polynomial rings K{Y}.

mod diffpoly;
mod linop;

use thiserror::Error;

use crate::field::FieldError;

pub use diffpoly::{DiffPoly, DiffPolyRing, Indet, Monomial};
pub use linop::LinOp;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffAlgError {
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operators use different derivations `{0}` and `{1}`")]
    DerivationMismatch(String, String),
    #[error("unknown derivation `{0}`")]
    UnknownDerivation(String),
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),
    #[error("no value assigned to `{0}`")]
    MissingAssignment(String),
    #[error("invalid indeterminate name `{0}`")]
    BadName(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}
