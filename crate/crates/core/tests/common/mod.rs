//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use flagchow::algebra::{Monomial, PolyRing, Polynomial, PrimeField, Ring};

/// All monomials of topdeg exactly `d` in the variables of `ring`.
pub fn monomials_of_degree<R: Ring>(ring: &PolyRing<R>, d: u32) -> Vec<Monomial> {
    fn go(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == w.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * w[i] <= left {
            cur.push(e);
            go(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    go(ring.weights(), 0, d, &mut Vec::new(), &mut out);
    out
}

/// Rank over GF(p) of a list of rows, by Gaussian elimination.
pub fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let k = PrimeField::new(p).unwrap();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = k.pow(rows[rank][col], p - 2);
        for x in rows[rank].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn row(f: &Polynomial<PrimeField>, basis: &[Monomial]) -> Vec<u64> {
    basis.iter().map(|m| f.coefficient(m)).collect()
}

/// Spanning set of the degree-`d` part of the ideal: all `m·r` of degree `d`.
pub fn ideal_rows(ring: &PolyRing<PrimeField>, rels: &[Polynomial<PrimeField>], d: u32) -> Vec<Vec<u64>> {
    let basis = monomials_of_degree(ring, d);
    let mut rows = Vec::new();
    for r in rels {
        let Some(e) = r.topdeg() else { continue };
        if e > d {
            continue;
        }
        for m in monomials_of_degree(ring, d - e) {
            rows.push(row(&r.mul_monomial(&m), &basis));
        }
    }
    rows
}

/// Graded dimensions of `ring/(rels)` by linear algebra on each graded piece.
pub fn oracle_series(ring: &PolyRing<PrimeField>, rels: &[Polynomial<PrimeField>], maxdeg: u32) -> Vec<u64> {
    let p = ring.coeffs().characteristic();
    (0..=maxdeg)
        .map(|d| {
            let n = monomials_of_degree(ring, d).len();
            let mut rows = ideal_rows(ring, rels, d);
            (n - rank_mod_p(&mut rows, p)) as u64
        })
        .collect()
}

/// Whether homogeneous `f` lies in the ideal, by a rank comparison.
pub fn oracle_in_ideal(
    ring: &PolyRing<PrimeField>,
    rels: &[Polynomial<PrimeField>],
    f: &Polynomial<PrimeField>,
) -> bool {
    let Some(d) = f.topdeg() else { return true };
    let p = ring.coeffs().characteristic();
    let basis = monomials_of_degree(ring, d);
    let mut rows = ideal_rows(ring, rels, d);
    let r0 = rank_mod_p(&mut rows.clone(), p);
    rows.push(row(f, &basis));
    rank_mod_p(&mut rows, p) == r0
}

/// `Π (1 + t_k x)` expanded fully and read off at `x^i`.
pub fn symmetric_by_expansion<R: Ring>(ring: &PolyRing<R>, gens: &[Polynomial<R>], i: usize) -> Polynomial<R> {
    let mut subsets: Vec<(usize, Polynomial<R>)> = vec![(0, ring.one())];
    for g in gens {
        let mut next = Vec::new();
        for (k, p) in subsets {
            next.push((k, p.clone()));
            next.push((k + 1, &p * g));
        }
        subsets = next;
    }
    let mut out = ring.zero();
    for (k, p) in subsets {
        if k == i {
            out = &out + &p;
        }
    }
    out
}

/// `binom(n, k) mod p` by exact integer arithmetic.
pub fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut c = num_bigint::BigUint::from(1u32);
    for j in 0..k {
        c = c * (n - j) / (j + 1);
    }
    (c % p).try_into().unwrap()
}
