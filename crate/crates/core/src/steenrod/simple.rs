//! `H*(SO(m); Z/2)` on its simple system `x_1, …, x_{m−1}` with
//! `x_i² = x_{2i}`, and the squares acting on it.

use std::collections::BTreeSet;

use super::term::{Gen, GenMonomial, GeneratorTerm};
use crate::symclass::lucas_unchecked;

/// An element is a set of square-free monomials, each a bitmask of indices.
pub type Element = BTreeSet<u64>;

#[derive(Clone, Copy, Debug)]
pub struct SimpleSystem {
    m: usize,
}

fn toggle(e: &mut Element, mask: u64) {
    if !e.remove(&mask) {
        e.insert(mask);
    }
}

impl SimpleSystem {
    pub fn new(m: usize) -> Self {
        assert!(m <= 64, "SO(m) simple system needs m <= 64");
        SimpleSystem { m }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn one(&self) -> Element {
        BTreeSet::from([0])
    }

    pub fn generator(&self, i: usize) -> Element {
        if i == 0 || i >= self.m {
            return Element::new();
        }
        BTreeSet::from([1u64 << i])
    }

    fn mul_gen_mask(&self, mask: u64, j: usize) -> Option<u64> {
        if j >= self.m {
            return None;
        }
        if mask & (1 << j) == 0 {
            return Some(mask | (1 << j));
        }
        self.mul_gen_mask(mask & !(1 << j), 2 * j)
    }

    fn mul_masks(&self, a: u64, b: u64) -> Option<u64> {
        let mut acc = a;
        for j in bits(b) {
            acc = self.mul_gen_mask(acc, j)?;
        }
        Some(acc)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::new();
        for &x in a {
            for &y in b {
                if let Some(z) = self.mul_masks(x, y) {
                    toggle(&mut out, z);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        a.symmetric_difference(b).copied().collect()
    }

    fn sq_gen(&self, k: usize, i: usize) -> Element {
        if k == 0 {
            return self.generator(i);
        }
        if lucas_unchecked(i as u64, k as u64, 2) == 1 {
            self.generator(i + k)
        } else {
            Element::new()
        }
    }

    fn sq_mask(&self, k: usize, mask: u64) -> Element {
        if mask == 0 {
            return if k == 0 { self.one() } else { Element::new() };
        }
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut out = Element::new();
        for a in 0..=k.min(low) {
            let left = self.sq_gen(a, low);
            if left.is_empty() {
                continue;
            }
            let right = self.sq_mask(k - a, rest);
            out = self.add(&out, &self.mul(&left, &right));
        }
        out
    }

    /// `Sq^k` by the Cartan formula.
    pub fn sq(&self, k: usize, e: &Element) -> Element {
        e.iter().fold(Element::new(), |acc, &m| self.add(&acc, &self.sq_mask(k, m)))
    }

    /// `Q_0 = Sq^1`, `Q_n = Sq^{2^n} Q_{n−1} + Q_{n−1} Sq^{2^n}`.
    pub fn q(&self, n: u32, e: &Element) -> Element {
        if n == 0 {
            return self.sq(1, e);
        }
        let s = 1usize << n;
        let a = self.sq(s, &self.q(n - 1, e));
        let b = self.q(n - 1, &self.sq(s, e));
        self.add(&a, &b)
    }

    /// Writes even indices as `y_j` and odd ones as `x_j`.
    pub fn to_term(&self, e: &Element) -> GeneratorTerm {
        let mut t = GeneratorTerm::zero(2);
        for &mask in e {
            let mono = GenMonomial::from_factors(bits(mask).map(|j| {
                let name = if j % 2 == 0 { format!("y{j}") } else { format!("x{j}") };
                (Gen::new(name, j as u32), 1)
            }));
            t.add_term(mono, 1);
        }
        t
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |j| mask & (1 << j) != 0)
}
