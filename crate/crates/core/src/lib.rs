//! Exact computer algebra for mod-p Chow rings of versal flag varieties.

pub mod algebra;
pub mod catalog;
pub mod chow;
pub mod steenrod;
pub mod symclass;
pub mod torsion;
pub mod verify;

use thiserror::Error;

pub use algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unsupported case {case}; supported cases: {supported}")]
    Unsupported { case: String, supported: String },
    #[error("missing data: {0}")]
    DataMissing(String),
    #[error("no full presentation for {case}: {reason}")]
    PresentationUnavailable { case: String, reason: String },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
