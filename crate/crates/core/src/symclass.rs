//! Elementary symmetric polynomials, Pontryagin classes and Lucas binomials.

use crate::algebra::{AlgebraError, Integers, PolyRing, Polynomial, Ring};

/// The ring `Z[t1..tl]` with `|t_i| = 2`.
pub fn t_ring(l: usize) -> PolyRing<Integers> {
    PolyRing::numbered(Integers, "t", l, 2).expect("t variables are valid")
}

/// `σ_i` of `gens`, by `σ_i(k) = σ_i(k−1) + g_k·σ_{i−1}(k−1)`.
pub fn symmetric_of<R: Ring>(ring: &PolyRing<R>, gens: &[Polynomial<R>], i: usize) -> Polynomial<R> {
    if i > gens.len() {
        return ring.zero();
    }
    let mut sigma = vec![ring.zero(); i + 1];
    sigma[0] = ring.one();
    for (k, g) in gens.iter().enumerate() {
        for j in (1..=i.min(k + 1)).rev() {
            let step = g * &sigma[j - 1];
            sigma[j] = &sigma[j] + &step;
        }
    }
    sigma.pop().expect("non-empty")
}

/// `σ_i(t_1, .., t_l)` over the integers; zero when `i > l`.
pub fn elementary_symmetric(l: usize, i: usize) -> Polynomial<Integers> {
    elementary_symmetric_in(&t_ring(l), i)
}

/// `σ_i(t_1², .., t_l²)`; zero when `i > l`.
pub fn pontryagin_class(l: usize, i: usize) -> Polynomial<Integers> {
    pontryagin_class_in(&t_ring(l), i)
}

/// `σ_i` of all variables of `ring`.
pub fn elementary_symmetric_in<R: Ring>(ring: &PolyRing<R>, i: usize) -> Polynomial<R> {
    let gens: Vec<_> = (0..ring.nvars()).map(|k| ring.var(k)).collect();
    symmetric_of(ring, &gens, i)
}

/// `σ_i` of the squares of all variables of `ring`.
pub fn pontryagin_class_in<R: Ring>(ring: &PolyRing<R>, i: usize) -> Polynomial<R> {
    let gens: Vec<_> = (0..ring.nvars()).map(|k| ring.var(k).pow(2)).collect();
    symmetric_of(ring, &gens, i)
}

/// `σ_i` of the first `l` variables of `ring` (the rest are ignored).
pub fn elementary_symmetric_prefix<R: Ring>(ring: &PolyRing<R>, l: usize, i: usize) -> Polynomial<R> {
    let gens: Vec<_> = (0..l).map(|k| ring.var(k)).collect();
    symmetric_of(ring, &gens, i)
}

/// `binom(n, k) mod p` from the base-`p` digits of `n` and `k`.
pub fn lucas_binomial(n: u64, k: u64, p: u64) -> Result<u64, AlgebraError> {
    if !crate::algebra::is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    Ok(lucas_unchecked(n, k, p))
}

pub(crate) fn lucas_unchecked(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    while k > 0 || n > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        acc = acc * small_binomial_mod(a, b, p) as u128 % p as u128;
        n /= p;
        k /= p;
    }
    acc as u64
}

/// `binom(a, b) mod p` for `b <= a < p`.
fn small_binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    let pm = p as u128;
    let (mut num, mut den) = (1u128, 1u128);
    for j in 0..b {
        num = num * ((a - j) as u128) % pm;
        den = den * ((j + 1) as u128) % pm;
    }
    let mut inv = 1u128;
    let (mut base, mut e) = (den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % pm;
        }
        base = base * base % pm;
        e >>= 1;
    }
    (num * inv % pm) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(elementary_symmetric(3, 0), t_ring(3).one());
        let r = t_ring(3);
        assert_eq!(elementary_symmetric(3, 1), &(&r.var(0) + &r.var(1)) + &r.var(2));
        let r4 = t_ring(4);
        let top = &(&r4.var(0) * &r4.var(1)) * &(&r4.var(2) * &r4.var(3));
        assert_eq!(elementary_symmetric(4, 4), top);
        assert!(elementary_symmetric(2, 3).is_zero());
        let r2 = t_ring(2);
        assert_eq!(pontryagin_class(2, 1), &r2.var(0).pow(2) + &r2.var(1).pow(2));
        assert_eq!(pontryagin_class(2, 2), (&r2.var(0) * &r2.var(1)).pow(2));
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial(17, 0, 3), Ok(1));
        assert_eq!(lucas_binomial(5, 2, 2), Ok(0));
        assert_eq!(lucas_binomial(3, 1, 2), Ok(1));
        assert_eq!(lucas_binomial(3, 1, 4), Err(AlgebraError::NotPrime(4)));
    }
}
