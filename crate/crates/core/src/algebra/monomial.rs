//! Graded variables, monomials and monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A polynomial variable with its topological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedVariable {
    pub name: String,
    pub topdeg: u32,
}

impl GradedVariable {
    pub fn new(name: impl Into<String>, topdeg: u32) -> Self {
        GradedVariable { name: name.into(), topdeg }
    }
}

/// Exponent vector over a fixed variable list. The empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_exponent(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn topdeg(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set when variable `i` (for `i < 64`) occurs.
    pub fn support_mask(&self) -> u64 {
        self.0.iter().enumerate().filter(|(i, &e)| e > 0 && *i < 64).fold(0, |m, (i, _)| m | (1 << i))
    }
}

/// Monomial orders. Degrees are weighted by variable topdeg.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
    /// Variables `0..high` form the high block; each block is compared by grevlex.
    Block {
        high: usize,
    },
}

fn grevlex(a: &[u32], b: &[u32], w: &[u32]) -> Ordering {
    let da: u32 = a.iter().zip(w).map(|(e, w)| e * w).sum();
    let db: u32 = b.iter().zip(w).map(|(e, w)| e * w).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::GrevLex => grevlex(a, b, weights),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block { high } => {
                let h = high.min(a.len());
                grevlex(&a[..h], &b[..h], &weights[..h]).then_with(|| grevlex(&a[h..], &b[h..], &weights[h..]))
            }
        }
    }
}
