mod common;

use common::{binomial_mod, symmetric_by_expansion};
use flagchow::algebra::{Integers, PolyRing, PrimeField, Ring};
use flagchow::symclass::{elementary_symmetric, elementary_symmetric_prefix, lucas_binomial, pontryagin_class, t_ring};
use proptest::prelude::*;

#[test]
fn matches_product_expansion() {
    for l in 0..=5 {
        let r = t_ring(l);
        let gens: Vec<_> = (0..l).map(|k| r.var(k)).collect();
        let squares: Vec<_> = gens.iter().map(|g| g.pow(2)).collect();
        for i in 0..=l + 1 {
            assert_eq!(elementary_symmetric(l, i), symmetric_by_expansion(&r, &gens, i));
            assert_eq!(pontryagin_class(l, i), symmetric_by_expansion(&r, &squares, i));
        }
    }
}

#[test]
fn pascal_recurrence() {
    for l in 1..=6 {
        let r = t_ring(l);
        for i in 0..=l {
            let lhs = elementary_symmetric(l, i);
            let prev = elementary_symmetric_prefix(&r, l - 1, i);
            let step = if i == 0 { r.zero() } else { &r.var(l - 1) * &elementary_symmetric_prefix(&r, l - 1, i - 1) };
            assert_eq!(lhs, &prev + &step, "l={l} i={i}");
            assert_eq!(lhs.topdeg(), Some(2 * i as u32));
        }
    }
}

#[test]
fn pontryagin_is_chern_squared_mod_two() {
    let f2 = PrimeField::new(2).unwrap();
    for l in 1..=4 {
        let target = PolyRing::numbered(f2, "t", l, 2).unwrap();
        let reduce = |f: &flagchow::algebra::Polynomial<Integers>| f.map_coefficients(&target, |c| f2.from_int(c));
        for i in 0..=l {
            let c = elementary_symmetric(l, i);
            assert_eq!(reduce(&pontryagin_class(l, i)), reduce(&c.pow(2)), "l={l} i={i}");
        }
    }
}

#[test]
fn lucas_against_brute_force() {
    for p in [2, 3, 5] {
        for n in 0..=64 {
            for k in 0..=64 {
                assert_eq!(lucas_binomial(n, k, p).unwrap(), binomial_mod(n, k, p), "({n},{k},{p})");
            }
        }
    }
    assert!(lucas_binomial(3, 1, 1).is_err());
    assert!(lucas_binomial(3, 1, 9).is_err());
}

proptest! {
    #[test]
    fn lucas_large_arguments(n in 0u64..5000, k in 0u64..5000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        prop_assert_eq!(lucas_binomial(n, k, p).unwrap(), binomial_mod(n, k, p));
    }
}
