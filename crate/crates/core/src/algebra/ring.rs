//! Coefficient rings: the integers, the rationals and prime fields.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest prime accepted by [`PrimeField`] is below this bound.
pub const PRIME_BOUND: u64 = 1 << 61;

/// Identifies a coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CoeffTag {
    Integers,
    Rationals,
    Prime(u64),
}

impl fmt::Display for CoeffTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffTag::Integers => write!(f, "Z"),
            CoeffTag::Rationals => write!(f, "Q"),
            CoeffTag::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for CoeffTag {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Z" => return Ok(CoeffTag::Integers),
            "Q" => return Ok(CoeffTag::Rationals),
            _ => {}
        }
        t.strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|d| d.parse::<u64>().ok())
            .map(CoeffTag::Prime)
            .ok_or_else(|| AlgebraError::Parse(format!("unknown coefficient ring `{s}`")))
    }
}

/// A commutative coefficient ring with exact arithmetic.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn tag(&self) -> CoeffTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The image of an integer; the ring supplies the modulus.
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// Exact decimal form: `-12`, `3/4`, or a residue in `0..p`.
    fn to_decimal(&self, a: &Self::Elem) -> String;
    fn parse_decimal(&self, s: &str) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn tag(&self) -> CoeffTag {
        CoeffTag::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn to_decimal(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse_decimal(&self, s: &str) -> Option<BigInt> {
        s.trim().parse().ok()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> CoeffTag {
        CoeffTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn to_decimal(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse_decimal(&self, s: &str) -> Option<BigRational> {
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(BigRational::new(n.trim().parse().ok()?, d))
            }
            None => Some(BigRational::from_integer(s.parse().ok()?)),
        }
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
}

/// The prime field with `p` elements, residues stored reduced in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p >= PRIME_BOUND {
            return Err(AlgebraError::PrimeTooLarge(p));
        }
        if !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn tag(&self) -> CoeffTag {
        CoeffTag::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n)
    }
    fn to_decimal(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_decimal(&self, s: &str) -> Option<u64> {
        let n: BigInt = s.trim().parse().ok()?;
        Some(self.from_int(&n))
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        assert!(!(*a).is_multiple_of(self.p), "inverse of zero");
        self.pow(*a, self.p - 2)
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact rational to integer, if the denominator is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.denom().is_one() {
        Some(q.numer().clone())
    } else {
        None
    }
}
