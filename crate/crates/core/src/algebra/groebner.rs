//! Degree-truncated Buchberger algorithm for homogeneous ideals.

use std::cmp::Ordering;

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::{PolyRing, Polynomial};
use super::presentation::{validate_relations, QuotientPresentation};
use super::ring::Field;
use super::AlgebraError;

type Terms<E> = Vec<(Monomial, E)>;

#[derive(Clone, Debug)]
struct Element<E> {
    /// Descending in the monomial order; the first coefficient is one.
    terms: Terms<E>,
    mask: u64,
}

impl<E> Element<E> {
    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: u32,
}

/// A Gröbner basis valid through topdeg `maxdeg`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    order: MonomialOrder,
    maxdeg: u32,
    elems: Vec<Element<F::Elem>>,
}

/// Gröbner basis of the relations of `pres` through `maxdeg`, grevlex order.
pub fn groebner<F: Field>(pres: &QuotientPresentation<F>, maxdeg: u32) -> Result<GroebnerBasis<F>, AlgebraError> {
    groebner_with_order(pres.ring(), pres.relations(), maxdeg, MonomialOrder::GrevLex)
}

pub fn groebner_with_order<F: Field>(
    ring: &PolyRing<F>,
    relations: &[Polynomial<F>],
    maxdeg: u32,
    order: MonomialOrder,
) -> Result<GroebnerBasis<F>, AlgebraError> {
    validate_relations(ring, relations)?;
    let mut gb = GroebnerBasis { ring: ring.clone(), order, maxdeg, elems: Vec::new() };
    let mut inputs: Vec<(u32, Terms<F::Elem>)> = relations
        .iter()
        .filter_map(|r| {
            let d = r.topdeg()?;
            (d <= maxdeg).then(|| (d, gb.sorted_terms(r)))
        })
        .collect();
    inputs.sort_by_key(|(d, _)| *d);
    let mut inputs = inputs.into_iter().peekable();
    let mut pairs: Vec<Pair> = Vec::new();

    for d in 0..=maxdeg {
        let mut todo: Vec<Terms<F::Elem>> = Vec::new();
        let (now, later): (Vec<Pair>, Vec<Pair>) = pairs.drain(..).partition(|p| p.deg == d);
        pairs = later;
        for p in &now {
            todo.push(gb.s_polynomial(p));
        }
        while inputs.peek().is_some_and(|(e, _)| *e == d) {
            todo.push(inputs.next().unwrap().1);
        }
        for f in todo {
            let r = gb.reduce(f);
            if r.is_empty() {
                continue;
            }
            gb.insert(r, &mut pairs);
        }
        if pairs.is_empty() && inputs.peek().is_none() {
            break;
        }
    }
    gb.interreduce();
    Ok(gb)
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Basis polynomials, sorted by degree then insertion.
    pub fn basis(&self) -> Vec<Polynomial<F>> {
        self.elems.iter().map(|e| self.ring.from_terms(e.terms.iter().cloned())).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lead().clone()).collect()
    }

    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.ring.weights())
    }

    fn sorted_terms(&self, p: &Polynomial<F>) -> Terms<F::Elem> {
        let mut t: Terms<F::Elem> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        t
    }

    fn divisor(&self, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.elems.iter().position(|e| e.mask & !mask == 0 && e.lead().divides(m))
    }

    /// `a − c·q·b` for descending term lists.
    fn merge_sub(
        &self,
        a: &[(Monomial, F::Elem)],
        c: &F::Elem,
        q: &Monomial,
        b: &[(Monomial, F::Elem)],
    ) -> Terms<F::Elem> {
        let k = self.ring.coeffs();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut ia = a.iter().peekable();
        let mut ib = b.iter().map(|(m, e)| (m.mul(q), k.neg(&k.mul(c, e)))).peekable();
        loop {
            let ord = match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => self.cmp(&x.0, &y.0),
            };
            match ord {
                Ordering::Greater => out.push(ia.next().unwrap().clone()),
                Ordering::Less => out.push(ib.next().unwrap()),
                Ordering::Equal => {
                    let (m, x) = ia.next().unwrap();
                    let (_, y) = ib.next().unwrap();
                    let s = k.add(x, &y);
                    if !k.is_zero(&s) {
                        out.push((m.clone(), s));
                    }
                }
            }
        }
        out
    }

    /// Full reduction modulo the current basis.
    fn reduce(&self, mut rest: Terms<F::Elem>) -> Terms<F::Elem> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < rest.len() {
            match self.divisor(&rest[i].0) {
                Some(g) => {
                    let e = &self.elems[g];
                    let q = rest[i].0.div(e.lead()).expect("divisor");
                    let c = rest[i].1.clone();
                    rest = self.merge_sub(&rest[i + 1..], &c, &q, &e.terms[1..]);
                    i = 0;
                }
                None => {
                    out.push(rest[i].clone());
                    i += 1;
                }
            }
        }
        out
    }

    fn s_polynomial(&self, p: &Pair) -> Terms<F::Elem> {
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let qa = p.lcm.div(a.lead()).expect("lcm");
        let qb = p.lcm.div(b.lead()).expect("lcm");
        let k = self.ring.coeffs();
        let left: Terms<F::Elem> = a.terms[1..].iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
        self.merge_sub(&left, &k.one(), &qb, &b.terms[1..])
    }

    fn insert(&mut self, mut terms: Terms<F::Elem>, pairs: &mut Vec<Pair>) {
        let k = self.ring.coeffs().clone();
        let inv = k.inv(&terms[0].1);
        for t in terms.iter_mut() {
            t.1 = k.mul(&t.1, &inv);
        }
        let lead = terms[0].0.clone();
        let w = self.ring.weights().to_vec();
        let new = self.elems.len();

        // Gebauer-Möller: drop old pairs made redundant by the new lead.
        pairs.retain(|p| {
            !(lead.divides(&p.lcm)
                && self.elems[p.i].lead().lcm(&lead) != p.lcm
                && self.elems[p.j].lead().lcm(&lead) != p.lcm)
        });

        let cands: Vec<(usize, Monomial, bool)> =
            self.elems.iter().enumerate().map(|(i, e)| (i, e.lead().lcm(&lead), e.lead().is_coprime(&lead))).collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (n, c) in cands.iter().enumerate() {
            let strictly_divided = cands.iter().enumerate().any(|(m, o)| m != n && o.1 != c.1 && o.1.divides(&c.1));
            if !strictly_divided {
                kept.push(c.clone());
            }
        }
        let mut seen: Vec<Monomial> = Vec::new();
        for (i, l, _) in &kept {
            if seen.contains(l) {
                continue;
            }
            seen.push(l.clone());
            if kept.iter().any(|(_, l2, cop)| l2 == l && *cop) {
                continue;
            }
            let d = l.topdeg(&w);
            if d <= self.maxdeg {
                pairs.push(Pair { i: *i, j: new, lcm: l.clone(), deg: d });
            }
        }

        let mask = lead.support_mask();
        self.elems.push(Element { terms, mask });
    }

    fn interreduce(&mut self) {
        for n in 0..self.elems.len() {
            let tail = self.elems[n].terms[1..].to_vec();
            let reduced = self.reduce(tail);
            let e = &mut self.elems[n];
            e.terms.truncate(1);
            e.terms.extend(reduced);
        }
    }

    fn check_ring(&self, f: &Polynomial<F>) -> Result<(), AlgebraError> {
        if f.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch {
                left: f.ring().coeffs().tag().to_string(),
                right: self.ring.coeffs().tag().to_string(),
            });
        }
        Ok(())
    }

    /// Canonical representative of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, AlgebraError> {
        self.check_ring(f)?;
        if let Some(d) = f.topdeg() {
            if d > self.maxdeg {
                return Err(AlgebraError::OutOfRange { degree: d, maxdeg: self.maxdeg });
            }
        }
        let r = self.reduce(self.sorted_terms(f));
        Ok(self.ring.from_terms(r))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.divisor(m).is_none()
    }

    /// Consistency check used by tests: every pair with lcm in range reduces to zero.
    pub fn all_s_pairs_reduce(&self) -> bool {
        let w = self.ring.weights();
        for j in 0..self.elems.len() {
            for i in 0..j {
                let lcm = self.elems[i].lead().lcm(self.elems[j].lead());
                let deg = lcm.topdeg(w);
                if deg > self.maxdeg {
                    continue;
                }
                let s = self.s_polynomial(&Pair { i, j, lcm, deg });
                if !self.reduce(s).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Visit every standard monomial of topdeg at most `maxdeg`.
    pub fn for_each_standard(&self, maxdeg: u32, mut visit: impl FnMut(&Monomial, u32)) {
        let w = self.ring.weights().to_vec();
        let mut exps = vec![0u32; self.ring.nvars()];
        if !self.is_standard(&Monomial::one(exps.len())) {
            return;
        }
        self.walk(0, 0, maxdeg.min(self.maxdeg), &w, &mut exps, &mut visit);
    }

    fn walk(
        &self,
        var: usize,
        deg: u32,
        maxdeg: u32,
        w: &[u32],
        exps: &mut Vec<u32>,
        visit: &mut impl FnMut(&Monomial, u32),
    ) {
        if var == exps.len() {
            visit(&Monomial::from_exponents(exps.clone()), deg);
            return;
        }
        let mut d = deg;
        loop {
            self.walk(var + 1, d, maxdeg, w, exps, visit);
            d += w[var];
            if d > maxdeg {
                break;
            }
            exps[var] += 1;
            if !self.is_standard(&Monomial::from_exponents(exps.clone())) {
                break;
            }
        }
        exps[var] = 0;
    }

    /// Standard monomials of topdeg exactly `d`.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        self.for_each_standard(d, |m, e| {
            if e == d {
                out.push(m.clone());
            }
        });
        out
    }
}
