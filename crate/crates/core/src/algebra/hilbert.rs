//! Hilbert series of graded quotients, truncated at a fixed topdeg.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::groebner::{groebner, groebner_with_order};
use super::monomial::MonomialOrder;
use super::polynomial::{PolyRing, Polynomial};
use super::presentation::QuotientPresentation;
use super::ring::Field;
use super::AlgebraError;

/// `dims[d]` is the dimension of the topdeg-`d` piece, for `d` in `0..=maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertSeries {
    dims: Vec<u64>,
}

impl HilbertSeries {
    pub fn new(dims: Vec<u64>) -> Self {
        HilbertSeries { dims }
    }

    pub fn one(maxdeg: u32) -> Self {
        let mut dims = vec![0; maxdeg as usize + 1];
        dims[0] = 1;
        HilbertSeries { dims }
    }

    /// Series of a graded set with the given degrees, truncated at `maxdeg`.
    pub fn from_degrees(degrees: impl IntoIterator<Item = u32>, maxdeg: u32) -> Self {
        let mut dims = vec![0; maxdeg as usize + 1];
        for d in degrees {
            if d <= maxdeg {
                dims[d as usize] += 1;
            }
        }
        HilbertSeries { dims }
    }

    /// Series of the polynomial ring on generators of the given degrees.
    pub fn free(weights: &[u32], maxdeg: u32) -> Self {
        let mut s = SignedSeries::one(maxdeg);
        for &w in weights {
            s.divide_one_minus(w);
        }
        s.to_hilbert().expect("free series is non-negative")
    }

    /// `Π (1 − q^{d_i}) / Π (1 − q^{w_j})`: a complete intersection of degrees `d_i`.
    pub fn complete_intersection(weights: &[u32], degrees: &[u32], maxdeg: u32) -> Option<Self> {
        let mut s = SignedSeries::one(maxdeg);
        for &w in weights {
            s.divide_one_minus(w);
        }
        for &d in degrees {
            s.times_one_minus(d);
        }
        s.to_hilbert()
    }

    /// Exterior algebra on generators of the given (even) degrees.
    pub fn exterior(degrees: &[u32], maxdeg: u32) -> Self {
        let mut s = SignedSeries::one(maxdeg);
        for &d in degrees {
            s.times_one_plus(d);
        }
        s.to_hilbert().expect("exterior series is non-negative")
    }

    /// Truncated polynomial algebra `k[y]/(y^h)` with `|y| = d`.
    pub fn truncated(d: u32, height: u64, maxdeg: u32) -> Self {
        let degs = (0..height).map(|k| k as u32 * d);
        Self::from_degrees(degs, maxdeg)
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn maxdeg(&self) -> u32 {
        self.dims.len() as u32 - 1
    }

    pub fn get(&self, d: u32) -> u64 {
        self.dims.get(d as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.dims.iter().sum()
    }

    /// Largest degree with a nonzero entry.
    pub fn top_degree(&self) -> Option<u32> {
        self.dims.iter().rposition(|&d| d > 0).map(|d| d as u32)
    }

    /// Truncated Cauchy product; the result stops at the smaller maxdeg.
    pub fn cauchy(&self, other: &HilbertSeries) -> HilbertSeries {
        let n = self.dims.len().min(other.dims.len());
        let mut dims = vec![0u64; n];
        for (i, &a) in self.dims.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.dims.iter().enumerate().take(n - i) {
                dims[i + j] += a * b;
            }
        }
        HilbertSeries { dims }
    }

    pub fn truncate(&self, maxdeg: u32) -> HilbertSeries {
        let n = (maxdeg as usize + 1).min(self.dims.len());
        HilbertSeries { dims: self.dims[..n].to_vec() }
    }

    /// Read as a polynomial with top degree `top`, the series is a palindrome.
    pub fn is_palindrome(&self) -> bool {
        match self.top_degree() {
            None => true,
            Some(top) => (0..=top).all(|d| self.get(d) == self.get(top - d)),
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Power series with signed integer coefficients, truncated at `maxdeg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSeries {
    coeffs: Vec<i128>,
}

impl SignedSeries {
    pub fn one(maxdeg: u32) -> Self {
        let mut coeffs = vec![0; maxdeg as usize + 1];
        coeffs[0] = 1;
        SignedSeries { coeffs }
    }

    pub fn from_hilbert(h: &HilbertSeries) -> Self {
        SignedSeries { coeffs: h.dims.iter().map(|&d| d as i128).collect() }
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn times_one_minus(&mut self, d: u32) {
        let d = d as usize;
        for i in (d..self.coeffs.len()).rev() {
            self.coeffs[i] -= self.coeffs[i - d];
        }
    }

    pub fn times_one_plus(&mut self, d: u32) {
        let d = d as usize;
        for i in (d..self.coeffs.len()).rev() {
            self.coeffs[i] += self.coeffs[i - d];
        }
    }

    pub fn divide_one_minus(&mut self, d: u32) {
        let d = d as usize;
        for i in d..self.coeffs.len() {
            self.coeffs[i] += self.coeffs[i - d];
        }
    }

    pub fn to_hilbert(&self) -> Option<HilbertSeries> {
        let dims = self.coeffs.iter().map(|&c| u64::try_from(c).ok()).collect::<Option<_>>()?;
        Some(HilbertSeries { dims })
    }
}

/// `dims[d]` counts standard monomials of topdeg `d`.
pub fn hilbert_series<F: Field>(pres: &QuotientPresentation<F>, maxdeg: u32) -> Result<HilbertSeries, AlgebraError> {
    let gb = groebner(pres, maxdeg)?;
    Ok(series_of(&gb, maxdeg))
}

pub fn hilbert_series_with_order<F: Field>(
    pres: &QuotientPresentation<F>,
    maxdeg: u32,
    order: MonomialOrder,
) -> Result<HilbertSeries, AlgebraError> {
    let gb = groebner_with_order(pres.ring(), pres.relations(), maxdeg, order)?;
    Ok(series_of(&gb, maxdeg))
}

pub fn series_of<F: Field>(gb: &super::groebner::GroebnerBasis<F>, maxdeg: u32) -> HilbertSeries {
    let mut dims = vec![0u64; maxdeg as usize + 1];
    gb.for_each_standard(maxdeg, |_, d| dims[d as usize] += 1);
    HilbertSeries { dims }
}

/// Compares the quotient series with `HS(ambient)·Π(1 − q^{d_i})`.
pub fn is_regular_sequence<F: Field>(
    ambient: &PolyRing<F>,
    seq: &[Polynomial<F>],
    maxdeg: u32,
) -> Result<bool, AlgebraError> {
    if seq.iter().any(|f| f.is_zero()) {
        return Ok(false);
    }
    let pres = QuotientPresentation::new(ambient.clone(), seq.to_vec())?;
    let actual = hilbert_series(&pres, maxdeg)?;
    let mut expected = SignedSeries::one(maxdeg);
    for &w in ambient.weights() {
        expected.divide_one_minus(w);
    }
    for d in pres.relation_degrees() {
        expected.times_one_minus(d);
    }
    Ok(SignedSeries::from_hilbert(&actual) == expected)
}

#[cfg(test)]
mod tests {
    use super::super::ring::PrimeField;
    use super::*;

    #[test]
    fn free_one_variable() {
        let r = PolyRing::numbered(PrimeField::new(2).unwrap(), "t", 1, 2).unwrap();
        let hs = hilbert_series(&QuotientPresentation::free(r), 8).unwrap();
        assert_eq!(hs.dims(), &[1, 0, 1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn repeated_element_is_not_regular() {
        let r = PolyRing::numbered(PrimeField::new(2).unwrap(), "t", 2, 2).unwrap();
        assert!(!is_regular_sequence(&r, &[r.var(0), r.var(0)], 10).unwrap());
        assert!(is_regular_sequence(&r, &[r.var(0), r.var(1)], 10).unwrap());
    }

    #[test]
    fn series_helpers() {
        let ext = HilbertSeries::exterior(&[2, 4], 8);
        assert_eq!(ext.dims(), &[1, 0, 1, 0, 1, 0, 1, 0, 0]);
        let ci = HilbertSeries::complete_intersection(&[2, 2], &[2, 4], 8).unwrap();
        assert_eq!(ci.dims(), &[1, 0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(ext.cauchy(&ci).total(), 8);
        assert!(ext.is_palindrome());
    }
}
