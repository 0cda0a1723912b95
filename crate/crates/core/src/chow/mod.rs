//! Chow-ring presentations of versal flag varieties, Rost-motive bases and
//! the additive decomposition check.

mod basis;
mod restriction;

use serde::Serialize;

use crate::algebra::{
    hilbert_series, GradedVariable, HilbertSeries, Monomial, PolyRing, Polynomial, PrimeField, QuotientPresentation,
};
use crate::catalog::{CaseId, CohomologyModel, PresentationKind, RostKind, StForm};
use crate::symclass::{elementary_symmetric_in, pontryagin_class_in, symmetric_of};
use crate::{Error, Result};

pub use basis::{a_filtration_basis, rost_chow_basis, rost_part_basis, rost_part_basis_of, BasisElement, VnSymbol};
pub use restriction::{restriction_check, RestrictionReport, RestrictionRow};

/// `CH*(X)/p` as a graded quotient ring.
///
/// When `opaque` is set the variables are the transgressions `b_i` themselves
/// in their catalog degrees and the ring is only the Rost part; the full
/// series multiplies in `S(t)/(b)` for the regular sequence `b`.
#[derive(Clone, Debug)]
pub struct ChowPresentation {
    pub label: String,
    pub presentation: QuotientPresentation<PrimeField>,
    pub opaque: bool,
    pub rank: usize,
    pub transgression_degrees: Vec<u32>,
    pub description: String,
}

impl ChowPresentation {
    pub fn series(&self, maxdeg: u32) -> Result<HilbertSeries> {
        let hs = hilbert_series(&self.presentation, maxdeg)?;
        if !self.opaque {
            return Ok(hs);
        }
        Ok(hs.cauchy(&complete_intersection(self.rank, &self.transgression_degrees, maxdeg)?))
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.presentation.relations().iter().map(|r| r.to_string()).collect()
    }
}

fn complete_intersection(rank: usize, degrees: &[u32], maxdeg: u32) -> Result<HilbertSeries> {
    HilbertSeries::complete_intersection(&vec![2; rank], degrees, maxdeg)
        .ok_or_else(|| Error::Inconsistent("transgression degrees do not form a complete intersection".into()))
}

/// `H*(BT)/p`. For `Spin(2ℓ+1)` this is `F_2[t_1..t_{ℓ−1}, c_1]`: the
/// pulled-back `t_j` satisfy `Σ t_j = 2c_1 ≡ 0`, so `t_ℓ` is eliminated.
pub fn torus_ring(model: &CohomologyModel) -> Result<PolyRing<PrimeField>> {
    let k = PrimeField::new(model.prime())?;
    let l = model.rank();
    if model.case == CaseId::SpinOdd {
        let mut vars: Vec<GradedVariable> = (1..l).map(|i| GradedVariable::new(format!("t{i}"), 2)).collect();
        vars.push(GradedVariable::new("c1", 2));
        return Ok(PolyRing::new(k, vars)?);
    }
    Ok(PolyRing::numbered(k, "t", l, 2)?)
}

fn torus_gens(model: &CohomologyModel, ring: &PolyRing<PrimeField>) -> Vec<Polynomial<PrimeField>> {
    let n = ring.nvars();
    if model.case == CaseId::SpinOdd {
        let mut gens: Vec<_> = (0..n - 1).map(|i| ring.var(i)).collect();
        let last = gens.iter().fold(ring.zero(), |acc, g| &acc + g);
        gens.push(last);
        return gens;
    }
    (0..n).map(|i| ring.var(i)).collect()
}

/// The polynomial in `H*(BT)/p` realizing an explicit transgression.
pub fn st_polynomial(
    model: &CohomologyModel,
    ring: &PolyRing<PrimeField>,
    form: &StForm,
) -> Result<Polynomial<PrimeField>> {
    Ok(match form {
        StForm::Chern(i) => elementary_symmetric_in(ring, *i),
        StForm::Pontryagin(i) => pontryagin_class_in(ring, *i),
        StForm::SpinChern(i) => symmetric_of(ring, &torus_gens(model, ring), *i),
        StForm::C1Power(k) => ring.var_named("c1")?.pow(*k),
        StForm::Explicit(terms) => {
            let mut out = ring.zero();
            for (exps, c) in terms {
                if exps.len() != ring.nvars() {
                    return Err(Error::Inconsistent(format!(
                        "explicit form {exps:?} has the wrong number of variables"
                    )));
                }
                let t = ring.term(Monomial::from_exponents(exps.clone()), ring.coeffs().reduce(*c));
                out = &out + &t;
            }
            out
        }
    })
}

/// The explicit transgressions `b_1, .., b_ℓ` in `H*(BT)/p`.
pub fn transgressions(model: &CohomologyModel, ring: &PolyRing<PrimeField>) -> Result<Vec<Polynomial<PrimeField>>> {
    model
        .transgression
        .iter()
        .map(|e| {
            let form = e
                .st_form
                .as_ref()
                .ok_or_else(|| Error::DataMissing(format!("{} has no explicit form for {}", model.label, e.name)))?;
            st_polynomial(model, ring, form)
        })
        .collect()
}

fn relations_from(b: &[Polynomial<PrimeField>], kind: &PresentationKind) -> Vec<Polynomial<PrimeField>> {
    let mut out = Vec::new();
    match kind {
        PresentationKind::Transgressions => out.extend(b.iter().cloned()),
        PresentationKind::Squares { count } => {
            for (i, f) in b.iter().enumerate() {
                out.push(if i < *count { f * f } else { f.clone() });
            }
        }
        PresentationKind::PairwiseProducts { count, .. } => {
            for i in 0..*count {
                for j in i..*count {
                    out.push(&b[i] * &b[j]);
                }
            }
            out.extend(b[*count..].iter().cloned());
        }
        PresentationKind::Unavailable { .. } => {}
    }
    out
}

/// The presentation of `CH*(X)/p`, or an error for the cases where only a
/// surjection onto a Rost-part basis is known.
pub fn chow_presentation(model: &CohomologyModel) -> Result<ChowPresentation> {
    let label = model.descriptor.to_string();
    let degrees: Vec<u32> = model.transgression.iter().map(|e| e.topdeg).collect();
    let (opaque, description) = match &model.presentation {
        PresentationKind::Unavailable { reason } => {
            return Err(Error::PresentationUnavailable { case: label, reason: reason.clone() })
        }
        PresentationKind::Transgressions => (false, "S(t)/(p, b_1, .., b_l)".to_string()),
        PresentationKind::Squares { count } if *count == model.rank() => {
            (false, "S(t)/(2, c_1^2, .., c_l^2)".to_string())
        }
        PresentationKind::Squares { .. } => (false, "S(t)/(2, c_1^2, .., c_(l-1)^2, c_l)".to_string()),
        PresentationKind::PairwiseProducts { count, explicit } => (
            !explicit,
            format!(
                "S(t)/(p, b_i b_j | i, j <= {count}{})",
                if *count < model.rank() { ", b_k | k > count" } else { "" }
            ),
        ),
    };
    let presentation = if opaque {
        let k = PrimeField::new(model.prime())?;
        let vars = model.transgression.iter().map(|e| GradedVariable::new(e.name.clone(), e.topdeg)).collect();
        let ring = PolyRing::new(k, vars)?;
        let b: Vec<_> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        QuotientPresentation::new(ring, relations_from(&b, &model.presentation))?
    } else {
        let ring = torus_ring(model)?;
        let b = transgressions(model, &ring)?;
        QuotientPresentation::new(ring, relations_from(&b, &model.presentation))?
    };
    Ok(ChowPresentation {
        label,
        presentation,
        opaque,
        rank: model.rank(),
        transgression_degrees: degrees,
        description,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub group: String,
    pub maxdeg: u32,
    pub opaque: bool,
    pub rost_basis: Vec<BasisElement>,
    pub chow_series: Vec<u64>,
    pub product_series: Vec<u64>,
    pub passed: bool,
}

/// Compares `HS(CH*(X)/p)` with `HS(Rost part) · HS(S(t)/(b))`, where the
/// Rost part is the exact basis and `S(t)/(b)` is computed independently
/// from the explicit transgressions when they are known.
pub fn verify_additive_decomposition(model: &CohomologyModel, maxdeg: u32) -> Result<DecompositionReport> {
    let pres = chow_presentation(model)?;
    let rost = rost_part_basis_of(model, RostKind::Exact)
        .ok_or_else(|| Error::DataMissing(format!("{} has no exact Rost-part basis", model.label)))?;
    let lhs = pres.series(maxdeg)?;
    let rost_series = HilbertSeries::from_degrees(rost.iter().map(|b| b.topdeg), maxdeg);
    let coinvariants = if pres.opaque {
        complete_intersection(model.rank(), &pres.transgression_degrees, maxdeg)?
    } else {
        let ring = torus_ring(model)?;
        let b = transgressions(model, &ring)?;
        hilbert_series(&QuotientPresentation::new(ring, b)?, maxdeg)?
    };
    let rhs = rost_series.cauchy(&coinvariants);
    Ok(DecompositionReport {
        group: pres.label,
        maxdeg,
        opaque: pres.opaque,
        rost_basis: rost,
        passed: lhs.dims() == rhs.dims(),
        chow_series: lhs.dims().to_vec(),
        product_series: rhs.dims().to_vec(),
    })
}
