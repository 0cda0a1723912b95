//! Formal sums of monomials in named cohomology generators over `GF(p)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A named generator of `H*(G; Z/p)` with its degree. Odd degree means exterior.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gen {
    pub name: String,
    pub topdeg: u32,
}

impl Gen {
    pub fn new(name: impl Into<String>, topdeg: u32) -> Self {
        Gen { name: name.into(), topdeg }
    }

    pub fn is_odd(&self) -> bool {
        self.topdeg % 2 == 1
    }
}

/// Alphabetic prefix, then the numeric part, then whatever follows.
fn natural_key(name: &str) -> (&str, u64, &str) {
    let alpha_end = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    let (alpha, rest) = name.split_at(alpha_end);
    let digit_end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
    let (digits, tail) = rest.split_at(digit_end);
    (alpha, digits.parse().unwrap_or(0), tail)
}

impl Ord for Gen {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_key(&self.name).cmp(&natural_key(&other.name)).then_with(|| self.topdeg.cmp(&other.topdeg))
    }
}

impl PartialOrd for Gen {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A product of generator powers, sorted by generator with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenMonomial(Vec<(Gen, u32)>);

impl GenMonomial {
    pub fn one() -> Self {
        GenMonomial(Vec::new())
    }

    pub fn gen(g: Gen, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        GenMonomial(vec![(g, e)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m: BTreeMap<Gen, u32> = BTreeMap::new();
        for (g, e) in factors {
            *m.entry(g).or_insert(0) += e;
        }
        GenMonomial(m.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn topdeg(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.topdeg * e).sum()
    }

    pub fn exponent(&self, name: &str) -> u32 {
        self.0.iter().find(|(g, _)| g.name == name).map_or(0, |(_, e)| *e)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Product with the graded-commutative sign `(-1)^k` returned as `k mod 2`.
    pub fn mul_with_sign(&self, other: &GenMonomial) -> (GenMonomial, bool) {
        let mut sign = false;
        for (b, eb) in &other.0 {
            if !b.is_odd() || eb % 2 == 0 {
                continue;
            }
            // b moves past every odd factor of self that sorts after it.
            let passed: u32 = self.0.iter().filter(|(a, _)| a.is_odd() && a > b).map(|(_, e)| e).sum();
            sign ^= passed % 2 == 1;
        }
        let product = GenMonomial::from_factors(self.0.iter().chain(&other.0).cloned());
        (product, sign)
    }

    pub fn divides(&self, other: &GenMonomial) -> bool {
        self.0.iter().all(|(g, e)| other.exponent(&g.name) >= *e)
    }
}

impl fmt::Display for GenMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|(g, e)| if *e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) }).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A formal `GF(p)`-linear combination of generator monomials.
///
/// Products here follow graded commutativity only; truncation heights and
/// the squaring rules of a particular model are applied by [`ModelAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTerm {
    p: u64,
    terms: BTreeMap<GenMonomial, u64>,
}

impl GeneratorTerm {
    pub fn zero(p: u64) -> Self {
        GeneratorTerm { p, terms: BTreeMap::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::monomial(p, GenMonomial::one(), 1)
    }

    pub fn monomial(p: u64, m: GenMonomial, c: i64) -> Self {
        let mut t = Self::zero(p);
        t.add_term(m, c);
        t
    }

    pub fn gen(p: u64, g: Gen) -> Self {
        Self::monomial(p, GenMonomial::gen(g, 1), 1)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn reduce(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    pub fn add_term(&mut self, m: GenMonomial, c: i64) {
        let c = self.reduce(c);
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenMonomial, u64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &GenMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous sums.
    pub fn topdeg(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(GenMonomial::topdeg);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.topdeg().is_some()
    }

    pub fn add(&self, other: &GeneratorTerm) -> GeneratorTerm {
        assert_eq!(self.p, other.p, "generator terms over different primes");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c as i64);
        }
        out
    }

    pub fn scale(&self, c: i64) -> GeneratorTerm {
        let c = self.reduce(c);
        let mut out = Self::zero(self.p);
        for (m, d) in &self.terms {
            out.add_term(m.clone(), ((c as u128 * *d as u128) % self.p as u128) as i64);
        }
        out
    }

    pub fn neg(&self) -> GeneratorTerm {
        self.scale(-1)
    }

    pub fn sub(&self, other: &GeneratorTerm) -> GeneratorTerm {
        self.add(&other.neg())
    }

    /// Graded-commutative product with no truncation. At odd `p` an odd
    /// generator squares to zero; at `p = 2` squares are kept.
    pub fn mul_free(&self, other: &GeneratorTerm) -> GeneratorTerm {
        assert_eq!(self.p, other.p, "generator terms over different primes");
        let mut out = Self::zero(self.p);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (m, sign) = a.mul_with_sign(b);
                if self.p > 2 && m.factors().iter().any(|(g, e)| g.is_odd() && *e > 1) {
                    continue;
                }
                let c = ((*ca as u128 * *cb as u128) % self.p as u128) as i64;
                out.add_term(m, if sign { -c } else { c });
            }
        }
        out
    }

    /// Keeps only the monomials accepted by `keep`.
    pub fn filter(&self, keep: impl Fn(&GenMonomial) -> bool) -> GeneratorTerm {
        GeneratorTerm {
            p: self.p,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    /// Symmetric residue: `p - 1` prints as `-1`.
    fn signed(&self, c: u64) -> i64 {
        if self.p > 2 && c > self.p / 2 {
            c as i64 - self.p as i64
        } else {
            c as i64
        }
    }

    pub fn to_json(&self) -> TermJson {
        TermJson {
            prime: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermEntryJson {
                    exps: m.0.iter().map(|(g, e)| (g.name.clone(), *e)).collect(),
                    coef: self.signed(*c).to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for GeneratorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let c = self.signed(*c);
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (m.is_one(), mag) {
                (true, _) => write!(f, "{mag}")?,
                (false, 1) => write!(f, "{m}")?,
                (false, _) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub prime: u64,
    pub terms: Vec<TermEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntryJson {
    pub exps: BTreeMap<String, u32>,
    pub coef: String,
}

/// Multiplication in `P(y)/p ⊗ Λ(x)`: even generators truncate at their
/// height, odd generators square to zero.
#[derive(Clone, Debug)]
pub struct ModelAlgebra {
    p: u64,
    heights: BTreeMap<String, u32>,
}

impl ModelAlgebra {
    /// `heights` maps each even generator to its truncation exponent.
    pub fn new(p: u64, heights: impl IntoIterator<Item = (String, u32)>) -> Self {
        ModelAlgebra { p, heights: heights.into_iter().collect() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn survives(&self, m: &GenMonomial) -> bool {
        m.factors().iter().all(
            |(g, e)| {
                if g.is_odd() {
                    *e < 2
                } else {
                    self.heights.get(&g.name).is_none_or(|h| e < h)
                }
            },
        )
    }

    pub fn reduce(&self, t: &GeneratorTerm) -> GeneratorTerm {
        t.filter(|m| self.survives(m))
    }

    pub fn mul(&self, a: &GeneratorTerm, b: &GeneratorTerm) -> GeneratorTerm {
        self.reduce(&a.mul_free(b))
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a GeneratorTerm>) -> GeneratorTerm {
        factors.into_iter().fold(GeneratorTerm::one(self.p), |acc, f| self.mul(&acc, f))
    }
}
