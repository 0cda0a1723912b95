//! Products of transgressions computed modulo `I_∞` and lower filtration,
//! and the counting bound on how many `y`-factors such products can carry.

use std::fmt;

use serde::Serialize;

use crate::catalog::CohomologyModel;
use crate::steenrod::{GeneratorTerm, ModelAlgebra};
use crate::{Error, Result};

/// `p^s · body` with `body` in `P(y)/p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPolynomial {
    pub p_exponent: u32,
    pub body: GeneratorTerm,
}

impl WitnessPolynomial {
    pub fn one(p: u64) -> Self {
        WitnessPolynomial { p_exponent: 0, body: GeneratorTerm::one(p) }
    }

    pub fn mul(&self, other: &WitnessPolynomial, algebra: &ModelAlgebra) -> Self {
        WitnessPolynomial { p_exponent: self.p_exponent + other.p_exponent, body: algebra.mul(&self.body, &other.body) }
    }
}

impl fmt::Display for WitnessPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{} ({})", self.body.prime(), self.p_exponent, self.body)
    }
}

fn leading(model: &CohomologyModel, index: usize) -> Result<WitnessPolynomial> {
    let e = model
        .entry(index)
        .ok_or_else(|| Error::Invalid(format!("{} has no transgression with index {index}", model.label)))?;
    let lead = e
        .leading
        .as_ref()
        .ok_or_else(|| Error::DataMissing(format!("{}: {} has no p-adic leading term", model.label, e.name)))?;
    Ok(WitnessPolynomial { p_exponent: lead.p_exponent, body: lead.body.clone() })
}

/// The leading part of `b_{i_1} .. b_{i_k}`.
pub fn witness_product(model: &CohomologyModel, indices: &[usize]) -> Result<WitnessPolynomial> {
    let algebra = model.algebra();
    let mut acc = WitnessPolynomial::one(model.prime());
    for &i in indices {
        acc = acc.mul(&leading(model, i)?, &algebra);
    }
    Ok(acc)
}

/// Whether every nonempty sub-multiset of `indices` has a nonzero body.
pub fn witness_subproducts_nonzero(model: &CohomologyModel, indices: &[usize]) -> Result<bool> {
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for &i in indices {
        match distinct.iter_mut().find(|(j, _)| *j == i) {
            Some((_, n)) => *n += 1,
            None => distinct.push((i, 1)),
        }
    }
    let mut counts = vec![0usize; distinct.len()];
    loop {
        let mut k = 0;
        while k < counts.len() && counts[k] == distinct[k].1 {
            counts[k] = 0;
            k += 1;
        }
        if k == counts.len() {
            return Ok(true);
        }
        counts[k] += 1;
        let sub: Vec<usize> =
            distinct.iter().zip(&counts).flat_map(|(&(i, _), &n)| std::iter::repeat_n(i, n)).collect();
        if witness_product(model, &sub)?.body.is_zero() {
            return Ok(false);
        }
    }
}

/// The largest number of `y`-factors, with multiplicity, in a monomial of `t`.
pub fn sharp_y(t: &GeneratorTerm) -> u32 {
    t.terms().map(|(m, _)| m.length()).max().unwrap_or(0)
}

/// The largest `♯_y` of a product of at most `k` leading bodies, subject to
/// the catalog's multiplicity limits. Zero when no product is admissible.
pub fn sharp_y_bound(model: &CohomologyModel, k: u32) -> u32 {
    let limits = model.sharp.as_ref().map(|s| s.limits.as_slice()).unwrap_or(&[]);
    let factors: Vec<(u32, u32, u32)> = model
        .transgression
        .iter()
        .filter_map(|e| {
            let lead = e.leading.as_ref()?;
            let lim = limits.iter().find(|l| l.index == e.index);
            Some((sharp_y(&lead.body), lim.map_or(0, |l| l.min), lim.map_or(k, |l| l.max)))
        })
        .collect();
    fn search(factors: &[(u32, u32, u32)], left: u32) -> Option<u32> {
        let Some((&(value, min, max), rest)) = factors.split_first() else {
            return Some(0);
        };
        (min..=max.min(left)).filter_map(|n| search(rest, left - n).map(|s| s + n * value)).max()
    }
    search(&factors, k).unwrap_or(0)
}
