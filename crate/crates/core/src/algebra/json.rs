//! JSON forms of polynomials, presentations and series.
//!
//! ```json
//! {"ring": "GF(2)",
//!  "variables": [{"name": "t1", "topdeg": 2}],
//!  "terms": [{"exps": {"t1": 2}, "coef": "1"}]}
//! ```
//!
//! Coefficients are exact decimal strings (`"-3"`, `"1/2"`, residues for `GF(p)`).
//! A presentation carries `"relations"`, a list of term lists.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::{GradedVariable, Monomial};
use super::polynomial::{PolyRing, Polynomial};
use super::presentation::QuotientPresentation;
use super::ring::Ring;
use super::AlgebraError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: BTreeMap<String, u32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub ring: String,
    pub variables: Vec<GradedVariable>,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub ring: String,
    pub variables: Vec<GradedVariable>,
    pub relations: Vec<Vec<TermJson>>,
}

pub fn terms_to_json<R: Ring>(p: &Polynomial<R>) -> Vec<TermJson> {
    let vars = p.ring().vars();
    let k = p.ring().coeffs();
    let w = p.ring().weights();
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| b.topdeg(w).cmp(&a.topdeg(w)).then_with(|| b.cmp(a)));
    terms
        .into_iter()
        .map(|(m, c)| TermJson {
            exps: m.exponents().iter().zip(vars).filter(|(&e, _)| e > 0).map(|(&e, v)| (v.name.clone(), e)).collect(),
            coef: k.to_decimal(c),
        })
        .collect()
}

pub fn terms_from_json<R: Ring>(ring: &PolyRing<R>, terms: &[TermJson]) -> Result<Polynomial<R>, AlgebraError> {
    let mut p = ring.zero();
    for t in terms {
        let mut e = vec![0; ring.nvars()];
        for (name, k) in &t.exps {
            let i = ring.var_index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.clone()))?;
            e[i] += k;
        }
        let c = ring
            .coeffs()
            .parse_decimal(&t.coef)
            .ok_or_else(|| AlgebraError::Parse(format!("bad coefficient `{}`", t.coef)))?;
        p.add_term(Monomial::from_exponents(e), &c);
    }
    Ok(p)
}

fn check_tag<R: Ring>(coeffs: &R, ring: &str) -> Result<(), AlgebraError> {
    let tag: super::ring::CoeffTag = ring.parse()?;
    if tag != coeffs.tag() {
        return Err(AlgebraError::RingMismatch { left: tag.to_string(), right: coeffs.tag().to_string() });
    }
    Ok(())
}

impl<R: Ring> Polynomial<R> {
    pub fn to_json(&self) -> PolynomialJson {
        PolynomialJson {
            ring: self.ring().coeffs().tag().to_string(),
            variables: self.ring().vars().to_vec(),
            terms: terms_to_json(self),
        }
    }

    pub fn from_json(json: &PolynomialJson, coeffs: R) -> Result<Self, AlgebraError> {
        check_tag(&coeffs, &json.ring)?;
        let ring = PolyRing::new(coeffs, json.variables.clone())?;
        terms_from_json(&ring, &json.terms)
    }
}

impl<R: Ring> QuotientPresentation<R> {
    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            ring: self.ring().coeffs().tag().to_string(),
            variables: self.ring().vars().to_vec(),
            relations: self.relations().iter().map(terms_to_json).collect(),
        }
    }

    pub fn from_json(json: &PresentationJson, coeffs: R) -> Result<Self, AlgebraError> {
        check_tag(&coeffs, &json.ring)?;
        let ring = PolyRing::new(coeffs, json.variables.clone())?;
        let rels = json.relations.iter().map(|t| terms_from_json(&ring, t)).collect::<Result<Vec<_>, _>>()?;
        QuotientPresentation::new(ring, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::super::ring::{Integers, PrimeField};
    use super::*;

    #[test]
    fn integer_round_trip() {
        let r = PolyRing::numbered(Integers, "t", 2, 2).unwrap();
        let f = &(&r.var(0).pow(2) - &r.var(1).pow(2)) + &r.int(-12345678901234567);
        let json = serde_json::to_string(&f.to_json()).unwrap();
        assert!(json.contains(r#""coef":"-12345678901234567""#));
        let back: PolynomialJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Polynomial::from_json(&back, Integers).unwrap(), f);
    }

    #[test]
    fn presentation_round_trip() {
        let k = PrimeField::new(3).unwrap();
        let r = PolyRing::numbered(k, "t", 2, 2).unwrap();
        let pres = QuotientPresentation::new(r.clone(), vec![&r.var(0) * &r.var(1)]).unwrap();
        let back = QuotientPresentation::from_json(&pres.to_json(), k).unwrap();
        assert_eq!(back, pres);
        assert!(QuotientPresentation::from_json(&pres.to_json(), PrimeField::new(5).unwrap()).is_err());
    }
}
