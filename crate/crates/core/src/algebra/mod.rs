//! Exact graded polynomial arithmetic, Gröbner bases and Hilbert series.

mod groebner;
mod hilbert;
pub mod json;
mod monomial;
mod polynomial;
mod presentation;
mod ring;

use thiserror::Error;

pub use groebner::{groebner, groebner_with_order, GroebnerBasis};
pub use hilbert::{
    hilbert_series, hilbert_series_with_order, is_regular_sequence, series_of, HilbertSeries, SignedSeries,
};
pub use monomial::{GradedVariable, Monomial, MonomialOrder};
pub use polynomial::{format_monomial, poly_mul, PolyRing, Polynomial};
pub use presentation::QuotientPresentation;
pub use ring::{is_prime, rational_to_integer, CoeffTag, Field, Integers, PrimeField, Rationals, Ring, PRIME_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("coefficient rings or variable sets differ ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large; the bound is 2^61")]
    PrimeTooLarge(u64),
    #[error("bad variable: {0}")]
    BadVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid presentation: {0}")]
    Validation(String),
    #[error("degree {degree} is above the truncation degree {maxdeg}")]
    OutOfRange { degree: u32, maxdeg: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}
