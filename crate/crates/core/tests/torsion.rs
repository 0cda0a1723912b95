use flagchow::algebra::{Integers, Monomial, Polynomial};
use flagchow::catalog::{lookup, CohomologyModel, Family, GroupDescriptor};
use flagchow::symclass::symmetric_of;
use flagchow::torsion::{
    marlin_bound, sharp_y, sharp_y_bound, top_lattice_generator_exhaustive, torsion_index, torsion_index_of,
    torsion_index_so, tw_build, tw_from_relations, tw_relations, witness_product, witness_subproducts_nonzero,
    JConvention, TodaWatanabeRing, Verification,
};
use flagchow::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn model(group: &str, p: Option<u64>) -> CohomologyModel {
    lookup(&GroupDescriptor::parse(group, None, p).unwrap()).unwrap()
}

#[test]
fn integral_ring_shapes() {
    for (l, rank, top) in [(2, 8, 8), (3, 48, 18)] {
        let tw = tw_build(l).unwrap();
        assert_eq!(tw.expected_rank, rank);
        assert_eq!(tw.topdim, top);
        assert_eq!(tw.convention, tw.matching[0]);
    }
}

#[test]
fn mutated_relation_is_rejected() {
    let (ring, mut rels) = tw_relations(2, JConvention::QuarterSum).unwrap();
    let last = rels.len() - 1;
    rels[last] = rels[last - 1].clone();
    assert!(matches!(tw_from_relations(2, ring, rels, JConvention::QuarterSum), Err(Error::Inconsistent(_))));
}

/// Doubling `c_1 - 2y_2` keeps the rational ranks but adds 2-torsion,
/// which the mod-2 ranks detect.
#[test]
fn torsion_creating_mutation_is_rejected() {
    let (ring, mut rels) = tw_relations(2, JConvention::QuarterSum).unwrap();
    rels[0] = rels[0].scale(&BigInt::from(2));
    let r = tw_from_relations(2, ring, rels, JConvention::QuarterSum);
    assert!(matches!(r, Err(Error::Inconsistent(_))), "{:?}", r.map(|t| t.topdim));
}

#[test]
fn square_free_generators_span_the_top_piece() {
    let tw = tw_build(2).unwrap();
    assert_eq!(&top_lattice_generator_exhaustive(&tw).unwrap(), tw.top_unit());
}

#[test]
fn fundamental_coefficients_rank_two() {
    let tw = tw_build(2).unwrap();
    let mut seen_four = false;
    for m in tw.top_t_monomials() {
        let k = tw.fundamental_coefficient(&m).unwrap();
        assert!((&k % BigInt::from(4)).is_zero(), "{} -> {k}", tw.describe(&m));
        seen_four |= k == BigInt::from(4) || k == BigInt::from(-4);
    }
    assert!(seen_four);
    let m = Monomial::from_exponents(vec![1, 0, 0, 0]);
    assert!(matches!(tw.fundamental_coefficient(&m), Err(Error::Invalid(_))));
}

fn coefficient_of(tw: &TodaWatanabeRing, f: &Polynomial<Integers>) -> BigInt {
    f.terms().map(|(m, c)| c * tw.fundamental_coefficient(m).unwrap()).sum()
}

#[test]
fn product_of_chern_classes_is_two_to_the_l_times_top() {
    for l in 2..=3 {
        let tw = tw_build(l).unwrap();
        let ring = &tw.ring;
        let t: Vec<_> = (0..l).map(|i| ring.var(i)).collect();
        let mut delta = vec![0u32; 2 * l];
        for (i, e) in delta[..l].iter_mut().enumerate() {
            *e = (l - 1 - i) as u32;
        }
        let delta = ring.monomial(Monomial::from_exponents(delta));
        let chern = (1..=l).fold(ring.one(), |acc, i| &acc * &symmetric_of(ring, &t, i));
        let y_top = (0..l).fold(ring.one(), |acc, i| &acc * &ring.var(l + i));
        let lhs = coefficient_of(&tw, &(&chern * &delta));
        let rhs = coefficient_of(&tw, &(&y_top * &delta));
        assert!(!rhs.is_zero());
        assert_eq!(lhs, rhs * BigInt::from(1 << l), "l = {l}");
    }
}

#[test]
fn fundamental_coefficients_rank_three_are_multiples_of_eight() {
    let tw = tw_build(3).unwrap();
    for m in tw.top_t_monomials().iter().step_by(7) {
        let k = tw.fundamental_coefficient(m).unwrap();
        assert!((&k % BigInt::from(8)).is_zero());
    }
}

#[test]
fn orthogonal_torsion_indices() {
    assert_eq!(torsion_index_so(2).unwrap().value, 4);
    assert_eq!(torsion_index_so(3).unwrap().value, 8);
}

#[test]
fn orthogonal_torsion_index_rank_four() {
    let r = torsion_index_so(4).unwrap();
    assert_eq!(r.value, 16);
    assert_eq!(r.monomials_checked, 969);
}

#[test]
fn both_conventions_give_the_same_index_when_both_are_free() {
    for l in 2..=3 {
        let tw = tw_build(l).unwrap();
        assert_eq!(tw.convention, JConvention::QuarterSum);
        for conv in tw.matching.clone() {
            let (ring, rels) = tw_relations(l, conv).unwrap();
            let other = tw_from_relations(l, ring, rels, conv).unwrap();
            assert_eq!(torsion_index_of(&other).unwrap().value, 1 << l);
        }
    }
}

#[test]
fn marlin_bounds() {
    assert_eq!(marlin_bound(5), 4);
    assert_eq!(marlin_bound(3), 2);
    assert_eq!(marlin_bound(8), 16);
    assert_eq!(marlin_bound(1), 1);
    for l in 3..=9 {
        let m = lookup(&GroupDescriptor::new(Family::SpinOdd, l, 2)).unwrap();
        if let Some(t) = m.torsion_index_p {
            assert_eq!(marlin_bound(l) % t, 0, "Spin({})", 2 * l + 1);
        }
    }
}

#[test]
fn witness_examples() {
    let e8 = model("E8", Some(2));
    let w = witness_product(&e8, &[5, 5, 5, 4, 6, 8]).unwrap();
    assert_eq!(w.p_exponent, 6);
    assert_eq!(w.body.to_string(), "y1^7*y2^3*y3*y4");

    let e8 = model("E8", Some(3));
    let w = witness_product(&e8, &[2, 8]).unwrap();
    assert_eq!((w.p_exponent, w.body.to_string()), (2, "y^2*y'^2".to_string()));

    let so = model("SO(7)", None);
    let w = witness_product(&so, &[1, 2, 3]).unwrap();
    assert_eq!((w.p_exponent, w.body.to_string()), (3, "y2*y4*y6".to_string()));

    assert!(matches!(witness_product(&model("E8", Some(2)), &[1]), Err(Error::DataMissing(_))));
}

#[test]
fn witness_exponents_add() {
    let e8 = model("E8", Some(2));
    let alg = e8.algebra();
    let a = witness_product(&e8, &[5, 5]).unwrap();
    let b = witness_product(&e8, &[6, 4]).unwrap();
    assert_eq!(a.mul(&b, &alg), witness_product(&e8, &[5, 5, 6, 4]).unwrap());
}

fn all_models() -> Vec<CohomologyModel> {
    let mut out: Vec<CohomologyModel> = [
        ("G2", None),
        ("F4", None),
        ("E8", Some(5)),
        ("E8", Some(3)),
        ("E8", Some(2)),
        ("E7", None),
        ("PU(3)", None),
        ("PU(5)", None),
    ]
    .iter()
    .map(|(g, p)| model(g, *p))
    .collect();
    for l in 1..=6 {
        out.push(lookup(&GroupDescriptor::new(Family::SOOdd, l, 2)).unwrap());
    }
    for l in 2..=6 {
        out.push(lookup(&GroupDescriptor::new(Family::SOEven, l, 2)).unwrap());
    }
    for l in 3..=9 {
        out.push(lookup(&GroupDescriptor::new(Family::SpinOdd, l, 2)).unwrap());
    }
    out
}

#[test]
fn catalog_witnesses_reproduce_and_their_subproducts_survive() {
    for m in all_models() {
        for w in &m.witnesses {
            let got = witness_product(&m, &w.indices).unwrap();
            assert_eq!((got.p_exponent, &got.body), (w.p_exponent, &w.body), "{}", m.label);
            assert!(witness_subproducts_nonzero(&m, &w.indices).unwrap(), "{}", m.label);
        }
    }
}

#[test]
fn counting_bounds() {
    let e8 = model("E8", Some(2));
    assert_eq!(sharp_y_bound(&e8, 5), 11);
    assert_eq!(sharp_y_bound(&e8, 0), 0);
    assert_eq!(e8.y_top().length(), 12);
    assert!(sharp_y_bound(&e8, 5) < e8.y_top().length());
    let e7 = model("E7", None);
    assert_eq!(sharp_y_bound(&e7, 1), 2);
    assert_eq!(sharp_y_bound(&e7, 0), 0);
    let b6 = e8.entry(6).unwrap().leading.as_ref().unwrap();
    assert_eq!(sharp_y(&b6.body), 4);
}

/// Brute force over all index sequences of length at most `k`.
fn sharp_oracle(m: &CohomologyModel, k: u32) -> u32 {
    let leads: Vec<(usize, u32)> =
        m.transgression.iter().filter_map(|e| e.leading.as_ref().map(|l| (e.index, sharp_y(&l.body)))).collect();
    let limits = m.sharp.as_ref().map(|s| s.limits.clone()).unwrap_or_default();
    let mut best = 0;
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(seq) = stack.pop() {
        let ok = limits.iter().all(|l| {
            let n = seq.iter().filter(|&&i| leads[i].0 == l.index).count() as u32;
            n >= l.min && n <= l.max
        });
        if ok {
            best = best.max(seq.iter().map(|&i| leads[i].1).sum());
        }
        if (seq.len() as u32) < k {
            let from = seq.last().copied().unwrap_or(0);
            for i in from..leads.len() {
                let mut next = seq.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    best
}

#[test]
fn counting_bound_matches_brute_force() {
    for (g, p) in [("E8", Some(2)), ("E7", None), ("E8", Some(3)), ("F4", None)] {
        let m = model(g, p);
        for k in 0..=6 {
            assert_eq!(sharp_y_bound(&m, k), sharp_oracle(&m, k), "{g} k = {k}");
        }
    }
}

#[test]
fn torsion_index_levels() {
    let r = torsion_index(&model("SO(7)", None)).unwrap();
    assert_eq!((r.value, r.verification), (8, Verification::Exact));
    assert_eq!(r.monomials_checked, Some(55));
    let r = torsion_index(&model("E8", Some(2))).unwrap();
    assert_eq!((r.value, r.verification), (64, Verification::UpperCount));
    let c = r.count.unwrap();
    assert_eq!((c.exchanges, c.bound, c.top_count), (5, 11, 12));
    let r = torsion_index(&model("F4", None)).unwrap();
    assert_eq!((r.value, r.verification), (3, Verification::UpperWitness));
    let r = torsion_index(&model("E8", Some(3))).unwrap();
    assert_eq!((r.value, r.verification), (9, Verification::UpperWitness));
    let r = torsion_index(&model("Spin(17)", None)).unwrap();
    assert_eq!((r.value, r.verification, r.marlin_bound), (16, Verification::UpperWitness, Some(16)));
    assert!(matches!(torsion_index(&model("Spin(13)", None)), Err(Error::DataMissing(_))));
    let s = serde_json::to_value(torsion_index(&model("SO(7)", None)).unwrap()).unwrap();
    assert_eq!(s["verification"], "EXACT");
}

#[test]
fn every_stored_index_has_a_witness_or_is_trivial() {
    for m in all_models() {
        let Ok(r) = torsion_index(&m) else { continue };
        if r.value > 1 {
            assert_ne!(r.verification, Verification::Table, "{}", m.label);
        }
    }
}

proptest! {
    #[test]
    fn witness_exponent_additivity(a in proptest::collection::vec(2usize..=8, 0..4), b in proptest::collection::vec(2usize..=8, 0..4)) {
        let m = model("E8", Some(2));
        let alg = m.algebra();
        let wa = witness_product(&m, &a).unwrap();
        let wb = witness_product(&m, &b).unwrap();
        let ab: Vec<usize> = a.iter().chain(&b).copied().collect();
        let wab = witness_product(&m, &ab).unwrap();
        prop_assert_eq!(wab.p_exponent, wa.p_exponent + wb.p_exponent);
        prop_assert_eq!(wab.body, alg.mul(&wa.body, &wb.body));
    }
}
