//! Graded polynomial rings and sparse polynomials over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::monomial::{GradedVariable, Monomial};
use super::ring::Ring;
use super::AlgebraError;

/// A coefficient ring together with an ordered list of graded variables.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    coeffs: R,
    vars: Arc<[GradedVariable]>,
    weights: Arc<[u32]>,
}

impl<R: Ring> PartialEq for PolyRing<R> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }
}

impl<R: Ring> PolyRing<R> {
    pub fn new(coeffs: R, vars: Vec<GradedVariable>) -> Result<Self, AlgebraError> {
        for (i, v) in vars.iter().enumerate() {
            if v.topdeg < 2 || v.topdeg % 2 != 0 {
                return Err(AlgebraError::BadVariable(format!(
                    "variable `{}` has topdeg {}; expected an even degree >= 2",
                    v.name, v.topdeg
                )));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(AlgebraError::BadVariable(format!("duplicate variable `{}`", v.name)));
            }
        }
        let weights: Vec<u32> = vars.iter().map(|v| v.topdeg).collect();
        Ok(PolyRing { coeffs, vars: vars.into(), weights: weights.into() })
    }

    /// `prefix1 .. prefixN`, all of degree `topdeg`.
    pub fn numbered(coeffs: R, prefix: &str, n: usize, topdeg: u32) -> Result<Self, AlgebraError> {
        let vars = (1..=n).map(|i| GradedVariable::new(format!("{prefix}{i}"), topdeg)).collect();
        Self::new(coeffs, vars)
    }

    pub fn coeffs(&self) -> &R {
        &self.coeffs
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Same variables over another coefficient ring.
    pub fn with_coeffs<S: Ring>(&self, coeffs: S) -> PolyRing<S> {
        PolyRing { coeffs, vars: self.vars.clone(), weights: self.weights.clone() }
    }

    pub fn zero(&self) -> Polynomial<R> {
        Polynomial { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Polynomial<R> {
        self.constant(self.coeffs.one())
    }

    pub fn constant(&self, c: R::Elem) -> Polynomial<R> {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn int(&self, n: i64) -> Polynomial<R> {
        self.constant(self.coeffs.from_i64(n))
    }

    pub fn term(&self, m: Monomial, c: R::Elem) -> Polynomial<R> {
        assert_eq!(m.nvars(), self.nvars(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !self.coeffs.is_zero(&c) {
            terms.insert(m, c);
        }
        Polynomial { ring: self.clone(), terms }
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial<R> {
        self.term(m, self.coeffs.one())
    }

    pub fn var(&self, i: usize) -> Polynomial<R> {
        self.monomial(Monomial::var(self.nvars(), i, 1))
    }

    pub fn var_named(&self, name: &str) -> Result<Polynomial<R>, AlgebraError> {
        self.var_index(name).map(|i| self.var(i)).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Monomial from `(name, exponent)` pairs.
    pub fn monomial_from_names(&self, pairs: &[(&str, u32)]) -> Result<Monomial, AlgebraError> {
        let mut e = vec![0; self.nvars()];
        for (name, k) in pairs {
            let i = self.var_index(name).ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
            e[i] += k;
        }
        Ok(Monomial::from_exponents(e))
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Polynomial<R> {
        let mut p = self.zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }
}

/// A polynomial: finitely many monomials with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<R: Ring> {
    ring: PolyRing<R>,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for Polynomial<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: Ring> Polynomial<R> {
    pub fn ring(&self) -> &PolyRing<R> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.coeffs.zero())
    }

    /// Largest topdeg among the terms; `None` for zero.
    pub fn topdeg(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.topdeg(self.ring.weights())).max()
    }

    /// Zero is vacuously homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut degs = self.terms.keys().map(|m| m.topdeg(w));
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &R::Elem) {
        let k = &self.ring.coeffs;
        if k.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = k.add(v, c);
                if k.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self.ring.coeffs.tag().to_string(),
                right: other.ring.coeffs.tag().to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let k = &self.ring.coeffs;
        let mut out = self.ring.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &k.mul(ca, cb));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        let k = &self.ring.coeffs;
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect() }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let k = &self.ring.coeffs;
        let mut out = self.ring.zero();
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &k.mul(a, c));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `m ↦ f(m)` termwise: the result is Σ c·f(m).
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Option<Monomial>) -> Self {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            if let Some(n) = f(m) {
                out.add_term(n, c);
            }
        }
        out
    }

    /// Move to `target` (same arity) mapping coefficients through `f`.
    pub fn map_coefficients<S: Ring>(&self, target: &PolyRing<S>, f: impl Fn(&R::Elem) -> S::Elem) -> Polynomial<S> {
        assert_eq!(target.nvars(), self.ring.nvars(), "variable count");
        let mut out = target.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Terms in ascending monomial (lex on exponent vectors) order.
    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, R::Elem)> {
        self.terms.into_iter()
    }
}

/// Exact product of two polynomials over the same ring.
pub fn poly_mul<R: Ring>(a: &Polynomial<R>, b: &Polynomial<R>) -> Result<Polynomial<R>, AlgebraError> {
    a.checked_mul(b)
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, rhs: Self) -> Polynomial<R> {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, rhs: Self) -> Polynomial<R> {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, rhs: Self) -> Polynomial<R> {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        self.neg_ref()
    }
}

impl<R: Ring> fmt::Display for Polynomial<R> {
    /// Highest topdeg first, then descending exponent vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let w = self.ring.weights();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b.topdeg(w).cmp(&a.topdeg(w)).then_with(|| b.cmp(a)));
        let k = &self.ring.coeffs;
        for (n, (m, c)) in terms.into_iter().enumerate() {
            let mono = format_monomial(m, &self.ring.vars);
            let dec = k.to_decimal(c);
            let (neg, mag) = match dec.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, dec),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (mono.is_empty(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{mag}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// `t1^2*t3`; the unit formats as the empty string.
pub fn format_monomial(m: &Monomial, vars: &[GradedVariable]) -> String {
    m.exponents()
        .iter()
        .zip(vars)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, v)| if e == 1 { v.name.clone() } else { format!("{}^{e}", v.name) })
        .collect::<Vec<_>>()
        .join("*")
}

#[cfg(test)]
mod tests {
    use super::super::ring::{Integers, PrimeField};
    use super::*;

    #[test]
    fn difference_of_squares() {
        let r = PolyRing::numbered(Integers, "t", 2, 2).unwrap();
        let (a, b) = (r.var(0), r.var(1));
        let p = poly_mul(&(&a + &b), &(&a - &b)).unwrap();
        assert_eq!(p, &(&a * &a) - &(&b * &b));
        assert_eq!(p.to_string(), "t1^2 - t2^2");
    }

    #[test]
    fn frobenius_mod_two() {
        let r = PolyRing::numbered(PrimeField::new(2).unwrap(), "t", 2, 2).unwrap();
        let s = &r.var(0) + &r.var(1);
        assert_eq!(s.pow(2), &r.var(0).pow(2) + &r.var(1).pow(2));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = PolyRing::numbered(PrimeField::new(2).unwrap(), "t", 2, 2).unwrap();
        let b = PolyRing::numbered(PrimeField::new(3).unwrap(), "t", 2, 2).unwrap();
        let c = PolyRing::numbered(PrimeField::new(2).unwrap(), "s", 2, 2).unwrap();
        assert!(matches!(poly_mul(&a.var(0), &b.var(0)), Err(AlgebraError::RingMismatch { .. })));
        assert!(poly_mul(&a.var(0), &c.var(0)).is_err());
    }

    #[test]
    fn variable_validation() {
        assert!(PolyRing::new(Integers, vec![GradedVariable::new("x", 3)]).is_err());
        assert!(PolyRing::new(Integers, vec![GradedVariable::new("x", 2), GradedVariable::new("x", 4)]).is_err());
    }

    #[test]
    fn degrees() {
        let r = PolyRing::new(Integers, vec![GradedVariable::new("y", 4), GradedVariable::new("t", 2)]).unwrap();
        let f = &r.var(0) - &r.var(1).pow(2);
        assert!(f.is_homogeneous());
        assert_eq!(f.topdeg(), Some(4));
        assert!(!(&f + &r.var(1)).is_homogeneous());
        assert_eq!(r.zero().topdeg(), None);
        assert!(r.zero().is_homogeneous());
    }
}
