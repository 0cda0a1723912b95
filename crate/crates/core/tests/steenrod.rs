mod common;

use common::binomial_mod;
use flagchow::catalog::{lookup, CohomologyModel, Family, GroupDescriptor};
use flagchow::steenrod::{
    beta_preimages, cartan_check, derive_q1_check, derive_qn_check, q_milnor, q_milnor_term, sq_hits,
    sq_on_so_generator, sq_on_y, GeneratorTerm, Provenance, SimpleSystem,
};
use flagchow::Error;
use proptest::prelude::*;

fn model(group: &str, p: Option<u64>) -> CohomologyModel {
    lookup(&GroupDescriptor::parse(group, None, p).unwrap()).unwrap()
}

fn all_models() -> Vec<CohomologyModel> {
    let mut out: Vec<CohomologyModel> =
        [("G2", None), ("F4", None), ("E8", Some(5)), ("E8", Some(3)), ("E8", Some(2)), ("E7", None), ("PU(5)", None)]
            .iter()
            .map(|(g, p)| model(g, *p))
            .collect();
    for l in 1..=6 {
        out.push(lookup(&GroupDescriptor::new(Family::SOOdd, l, 2)).unwrap());
        out.push(lookup(&GroupDescriptor::new(Family::U, l, 3)).unwrap());
    }
    for l in 2..=6 {
        out.push(lookup(&GroupDescriptor::new(Family::SOEven, l, 2)).unwrap());
    }
    for l in 3..=9 {
        out.push(lookup(&GroupDescriptor::new(Family::SpinOdd, l, 2)).unwrap());
    }
    out
}

fn names(m: &CohomologyModel) -> Vec<String> {
    m.x_gens.iter().map(|x| x.name.clone()).chain(m.y_gens.iter().map(|y| y.name.clone())).collect()
}

#[test]
fn wu_formula_examples() {
    let so = model("SO(9)", None);
    assert_eq!(sq_on_so_generator(&so, 3, 0).unwrap().to_string(), "x3");
    assert_eq!(sq_on_so_generator(&so, 3, 1).unwrap().to_string(), "y4");
    assert!(sq_on_so_generator(&so, 4, 2).unwrap().is_zero());
    assert!(sq_on_so_generator(&so, 7, 2).unwrap().is_zero());
    assert!(matches!(sq_on_so_generator(&model("G2", None), 3, 1), Err(Error::Unsupported { .. })));
}

#[test]
fn squares_on_y_examples() {
    assert_eq!(sq_on_y(1, 1, 4).to_string(), "y4");
    assert_eq!(sq_on_y(2, 2, 4).to_string(), "y8");
    assert!(sq_on_y(2, 1, 4).is_zero());
    assert!(sq_on_y(3, 2, 4).is_zero());
}

#[test]
fn hits_examples() {
    assert!(!sq_hits(3, 8));
    assert!(sq_hits(5, 8));
    assert!(!sq_hits(1, 8));
}

#[test]
fn hits_exactly_off_mersenne_numbers() {
    for i in 1..=64usize {
        let mersenne = (i + 1).is_power_of_two();
        let existential = (1..i).any(|ip| binomial_mod(ip as u64, (i - ip) as u64, 2) == 1);
        assert_eq!(sq_hits(i, 64), existential, "i = {i}");
        assert_eq!(sq_hits(i, 64), !mersenne, "i = {i}");
    }
}

#[test]
fn milnor_examples() {
    let so = model("SO(11)", None);
    let v = q_milnor(&so, "x9", 1).unwrap();
    assert!(v.value.is_zero());
    assert!(v.note.unwrap().contains("beyond"));

    let e8 = model("E8", Some(3));
    assert_eq!(q_milnor(&e8, "x2", 0).unwrap().value.to_string(), "y");
    assert_eq!(q_milnor(&e8, "z7", 0).unwrap().provenance, Provenance::Table);

    let spin = model("Spin(11)", None);
    assert_eq!(q_milnor(&spin, "z15", 0).unwrap().value.to_string(), "y6*y10");
}

#[test]
fn milnor_missing_is_an_error() {
    let e8 = model("E8", Some(2));
    assert!(matches!(q_milnor(&e8, "x8", 1), Err(Error::DataMissing(_))));
    assert!(matches!(q_milnor(&e8, "w3", 0), Err(Error::Invalid(_))));
}

#[test]
fn composed_squares_match_catalog_rule() {
    for l in 1..=6 {
        let r = derive_q1_check(l).unwrap();
        assert_eq!(r.rows.len(), l);
        assert!(r.agree(), "{:?}", r.rows);
        for n in 0..=3 {
            assert!(derive_qn_check(l, n).unwrap().agree(), "l = {l}, n = {n}");
        }
    }
    let r = derive_q1_check(3).unwrap();
    let x3 = r.rows.iter().find(|row| row.gen == "x3").unwrap();
    assert_eq!(x3.derived.to_string(), "y6");
    assert!(derive_q1_check(2).unwrap().rows.iter().any(|row| row.derived.is_zero()));
}

#[test]
fn derivation_matches_cartan_expansion() {
    for l in 2..=5 {
        for n in 0..=2 {
            let r = cartan_check(l, n).unwrap();
            assert!(r.agree(), "l = {l}, n = {n}: {:?}", r.rows.iter().filter(|x| !x.agree).collect::<Vec<_>>());
        }
    }
}

#[test]
fn milnor_squares_to_zero() {
    for m in all_models() {
        for g in names(&m) {
            for n in 0..=3 {
                let Ok(v) = q_milnor(&m, &g, n) else { continue };
                match q_milnor_term(&m, &v.value, n) {
                    Ok(qq) => assert!(qq.is_zero(), "{}: Q{n}Q{n}({g}) = {qq}", m.label),
                    Err(Error::DataMissing(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn milnor_degree_law() {
    for m in all_models() {
        let p = m.prime();
        for g in names(&m) {
            let d = m.gen(&g).unwrap().topdeg;
            for n in 0..=3 {
                let Ok(v) = q_milnor(&m, &g, n) else { continue };
                if let Some(t) = v.value.topdeg() {
                    assert!(v.value.is_homogeneous());
                    assert_eq!(t, d + 2 * (p.pow(n) as u32) - 1, "{}: Q{n}({g})", m.label);
                }
            }
        }
    }
}

/// The `v_n` term of each transgression must agree, up to a unit, with
/// however `Q_n` of the paired generator is otherwise obtained.
#[test]
fn transgression_terms_agree_with_tables() {
    for m in all_models() {
        let p = m.prime();
        for e in &m.transgression {
            let mut expected: Vec<(u32, GeneratorTerm)> = e.v_terms.iter().map(|v| (v.level, v.body.clone())).collect();
            if let Some(lead) = e.leading.as_ref().filter(|l| l.p_exponent == 1) {
                expected.push((0, lead.body.clone()));
            }
            for (n, body) in expected {
                let got = q_milnor(&m, &e.x_gen, n).unwrap().value;
                let unit = (1..p as i64).any(|c| got == body.scale(c));
                assert!(unit, "{}: Q{n}({}) = {got}, transgression says {body}", m.label, e.x_gen);
            }
        }
    }
}

#[test]
fn y_classes_are_killed() {
    for m in all_models() {
        for y in &m.y_gens {
            for n in 0..=3 {
                assert!(q_milnor(&m, &y.name, n).unwrap().value.is_zero());
            }
        }
    }
}

#[test]
fn e8_at_three_has_no_beta_preimage_of_the_square() {
    let m = model("E8", Some(3));
    let sq = m.parse_term("y^2*y'^2").unwrap();
    assert!(beta_preimages(&m, &sq).is_empty());
    let y = m.parse_term("y").unwrap();
    assert_eq!(beta_preimages(&m, &y), vec!["x2".to_string()]);
}

proptest! {
    #[test]
    fn wu_matches_binomial(l in 1usize..=10, i in 1usize..20, k in 0u32..20) {
        let m = lookup(&GroupDescriptor::new(Family::SOOdd, l, 2)).unwrap();
        let size = 2 * l + 1;
        prop_assume!(i < size);
        let v = sq_on_so_generator(&m, i, k).unwrap();
        let live = i + (k as usize) < size && binomial_mod(i as u64, k as u64, 2) == 1;
        prop_assert_eq!(!v.is_zero(), live);
    }

    #[test]
    fn simple_system_squares_obey_unstable_range(m in 3usize..16, i in 1usize..15) {
        prop_assume!(i < m);
        let ss = SimpleSystem::new(m);
        let x = ss.generator(i);
        prop_assert_eq!(ss.sq(0, &x), x.clone());
        prop_assert!(ss.sq(i + 1, &x).is_empty());
        prop_assert_eq!(ss.sq(i, &x), ss.mul(&x, &x));
    }

    #[test]
    fn simple_system_q_is_nilpotent(m in 3usize..14, a in 1usize..13, b in 1usize..13, n in 0u32..3) {
        prop_assume!(a < m && b < m);
        let ss = SimpleSystem::new(m);
        let e = ss.mul(&ss.generator(a), &ss.generator(b));
        prop_assert!(ss.q(n, &ss.q(n, &e)).is_empty());
    }
}
