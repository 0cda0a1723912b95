//! Graded quotient rings `k[vars]/(relations)`.

use super::polynomial::{PolyRing, Polynomial};
use super::ring::Ring;
use super::AlgebraError;

/// An ambient graded polynomial ring and a list of homogeneous relations.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientPresentation<R: Ring> {
    ring: PolyRing<R>,
    relations: Vec<Polynomial<R>>,
}

pub(crate) fn validate_relations<R: Ring>(ring: &PolyRing<R>, relations: &[Polynomial<R>]) -> Result<(), AlgebraError> {
    for (i, r) in relations.iter().enumerate() {
        if r.ring() != ring {
            return Err(AlgebraError::RingMismatch {
                left: ring.coeffs().tag().to_string(),
                right: r.ring().coeffs().tag().to_string(),
            });
        }
        if r.is_zero() {
            return Err(AlgebraError::Validation(format!("relation {i} is zero")));
        }
        if !r.is_homogeneous() {
            return Err(AlgebraError::Validation(format!("relation {i} is not homogeneous: {r}")));
        }
    }
    Ok(())
}

impl<R: Ring> QuotientPresentation<R> {
    pub fn new(ring: PolyRing<R>, relations: Vec<Polynomial<R>>) -> Result<Self, AlgebraError> {
        validate_relations(&ring, &relations)?;
        Ok(QuotientPresentation { ring, relations })
    }

    /// The ambient ring with no relations.
    pub fn free(ring: PolyRing<R>) -> Self {
        QuotientPresentation { ring, relations: Vec::new() }
    }

    pub fn ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn relations(&self) -> &[Polynomial<R>] {
        &self.relations
    }

    /// Relation degrees in input order.
    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations.iter().filter_map(|r| r.topdeg()).collect()
    }
}
