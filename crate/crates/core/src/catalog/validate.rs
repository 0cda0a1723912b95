use std::collections::BTreeSet;

use serde::Serialize;

use super::data::lookup;
use super::types::*;

/// Failures for one catalog entry, over all the instances that were built.
#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub case: CaseId,
    pub instances: Vec<String>,
    pub failures: Vec<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryReport>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }
}

fn representatives(case: CaseId) -> Vec<GroupDescriptor> {
    use Family::*;
    let g = GroupDescriptor::new;
    match case {
        CaseId::UnitarySymplectic => {
            [2, 3, 5, 7].iter().flat_map(|&p| (1..=5).flat_map(move |l| [g(U, l, p), g(Sp, l, p)])).collect()
        }
        CaseId::ProjectiveUnitary => [2, 3, 5, 7, 11].iter().map(|&p| g(PU, p as usize - 1, p)).collect(),
        CaseId::SpecialOrthogonalOdd => (1..=10).map(|l| g(SOOdd, l, 2)).collect(),
        CaseId::SpecialOrthogonalEven => (2..=10).map(|l| g(SOEven, l, 2)).collect(),
        CaseId::SpinOdd => (3..=10).map(|l| g(SpinOdd, l, 2)).collect(),
        CaseId::G2 => vec![g(G2, 2, 2)],
        CaseId::F4 => vec![g(F4, 4, 3)],
        CaseId::E8AtFive => vec![g(E8, 8, 5)],
        CaseId::E8AtThree => vec![g(E8, 8, 3)],
        CaseId::E8AtTwo => vec![g(E8, 8, 2)],
        CaseId::E7AtTwo => vec![g(E7, 7, 2)],
    }
}

/// Builds every entry over a range of ranks and primes and checks each
/// model with [`validate_model`].
pub fn validate_catalog() -> CatalogReport {
    let entries = CaseId::ALL
        .iter()
        .map(|&case| {
            let mut instances = Vec::new();
            let mut failures = Vec::new();
            for d in representatives(case) {
                instances.push(d.to_string());
                match lookup(&d) {
                    Ok(m) if m.case == case => {
                        failures.extend(validate_model(&m).into_iter().map(|f| format!("{d}: {f}")))
                    }
                    Ok(m) => failures.push(format!("{d}: resolved to {} instead", m.case)),
                    Err(e) => failures.push(format!("{d}: {e}")),
                }
            }
            EntryReport { case, instances, failures }
        })
        .collect();
    CatalogReport { entries }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn vn_degree(p: u64, n: u32) -> u32 {
    2 * (p.pow(n) as u32 - 1)
}

/// Every degree law and structural invariant of one model; empty if it passes.
pub fn validate_model(m: &CohomologyModel) -> Vec<String> {
    let mut f = Vec::new();
    let p = m.prime();
    let l = m.rank();

    if m.x_gens.len() != l {
        f.push(format!("{} exterior generators for rank {l}", m.x_gens.len()));
    }
    let mut names = BTreeSet::new();
    for y in &m.y_gens {
        if y.topdeg == 0 || y.topdeg % 2 == 1 {
            f.push(format!("{} has odd or zero degree {}", y.name, y.topdeg));
        }
        if y.truncation < 2 || !is_power_of(y.truncation as u64, p) {
            f.push(format!("{} truncation {} is not a power of {p}", y.name, y.truncation));
        }
        names.insert(y.name.clone());
    }
    for x in &m.x_gens {
        if x.topdeg % 2 == 0 {
            f.push(format!("{} has even degree {}", x.name, x.topdeg));
        }
        names.insert(x.name.clone());
    }
    if names.len() != m.y_gens.len() + m.x_gens.len() {
        f.push("generator names are not unique".into());
    }

    // Dimension count and Poincaré duality of P(y) ⊗ Λ(x).
    let total: u32 = m.x_gens.iter().map(|x| x.topdeg).sum::<u32>()
        + m.y_gens.iter().map(|y| (y.truncation - 1) * y.topdeg).sum::<u32>();
    if total != m.dim {
        f.push(format!("top degree {total} differs from dim G = {}", m.dim));
    }
    let poincare = m.poincare_series();
    if !poincare.is_palindrome() {
        f.push("Poincare series of P(y) (x) Lambda(x) is not a palindrome".into());
    }

    if m.transgression.len() != m.x_gens.len() {
        f.push(format!("{} transgressions for {} exterior generators", m.transgression.len(), m.x_gens.len()));
    }
    let mut seen = BTreeSet::new();
    for (k, e) in m.transgression.iter().enumerate() {
        if e.index != k + 1 {
            f.push(format!("{} has index {} at position {}", e.name, e.index, k + 1));
        }
        if !seen.insert(e.x_gen.clone()) {
            f.push(format!("{} is paired twice", e.x_gen));
        }
        match m.x_gens.iter().find(|x| x.name == e.x_gen) {
            Some(x) if x.topdeg + 1 == e.topdeg => {}
            Some(x) => f.push(format!("|{}| = {} but |{}| + 1 = {}", e.name, e.topdeg, x.name, x.topdeg + 1)),
            None => f.push(format!("{} pairs with unknown {}", e.name, e.x_gen)),
        }
        if let Some(lead) = &e.leading {
            if lead.body.is_zero() || lead.body.topdeg() != Some(e.topdeg) {
                f.push(format!("leading part {} of {} has the wrong degree", lead.body, e.name));
            }
            if !only_y(m, &lead.body) {
                f.push(format!("leading part of {} involves exterior generators", e.name));
            }
        }
        for v in &e.v_terms {
            let ok =
                v.level >= 1 && v.body.topdeg().map(|d| d.checked_sub(vn_degree(p, v.level))) == Some(Some(e.topdeg));
            if !ok || !only_y(m, &v.body) {
                f.push(format!("v_{} term {} of {} has the wrong degree", v.level, v.body, e.name));
            }
        }
        if let Some(StForm::Explicit(terms)) = &e.st_form {
            for (exps, _) in terms {
                if exps.len() != l || 2 * exps.iter().sum::<u32>() != e.topdeg {
                    f.push(format!("explicit form of {} has a term of the wrong shape", e.name));
                }
            }
        }
    }

    if matches!(m.case, CaseId::SpecialOrthogonalOdd | CaseId::SpecialOrthogonalEven) {
        let n = if m.case == CaseId::SpecialOrthogonalOdd { l } else { l - 1 };
        for i in 1..=n {
            let want = format!("y{}", 2 * i);
            let ok = m
                .entry(i)
                .and_then(|e| e.leading.as_ref())
                .is_some_and(|lead| lead.p_exponent == 1 && lead.body.to_string() == want);
            if !ok {
                f.push(format!("c_{i} does not lead with 2*{want}"));
            }
        }
    }

    for r in &m.op_table {
        let src = match m.gen(&r.source) {
            Some(g) => g,
            None => {
                f.push(format!("{} acts on unknown {}", r.op, r.source));
                continue;
            }
        };
        let valid = match r.op {
            Operation::Sq(_) => p == 2,
            Operation::P(_) | Operation::Bockstein => p != 2,
            Operation::Q(_) => true,
        };
        if !valid {
            f.push(format!("{} is not an operation at p = {p}", r.op));
        }
        if !r.target.is_zero() && r.target.topdeg() != Some(src.topdeg + r.op.topdeg(p)) {
            f.push(format!("{}({}) = {} breaks the degree law", r.op, r.source, r.target));
        }
    }

    if m.j_invariant.len() != m.y_gens.len() {
        f.push("J-invariant length differs from the number of y-generators".into());
    }
    for (j, y) in m.j_invariant.iter().zip(&m.y_gens) {
        let r = (0..32).find(|&r| p.pow(r) >= y.truncation as u64).unwrap_or(0);
        if *j != r {
            f.push(format!("J-invariant entry {j} for {} differs from r = {r}", y.name));
        }
    }
    if let Some(t) = m.torsion_index_p {
        if !is_power_of(t, p) {
            f.push(format!("torsion index {t} is not a power of {p}"));
        }
    }
    if m.case.is_type_one() && l < 2 * p as usize - 2 {
        f.push(format!("type (I) entry has rank {l} < 2p-2"));
    }

    let bdeg = |indices: &[usize]| m.product_degree(indices);
    let ytop = m.y_top_degree();
    for w in &m.witnesses {
        match bdeg(&w.indices) {
            Some(d) if w.body.topdeg() == Some(d) => {}
            _ => f.push(format!("witness {} has the wrong degree", m.product_name(&w.indices))),
        }
    }
    for b in &m.bp_products {
        let Some(d) = bdeg(&b.indices) else {
            f.push(format!("BP product {:?} names unknown transgressions", b.indices));
            continue;
        };
        for t in &b.terms {
            let vdeg: u32 = t.v.iter().map(|(n, e)| vn_degree(p, *n) * e).sum();
            if t.y.topdeg().checked_sub(vdeg) != Some(d) {
                f.push(format!("BP product {} has a term of the wrong degree", m.product_name(&b.indices)));
            }
        }
    }
    for r in &m.rost_parts {
        for prod in &r.products {
            match bdeg(prod) {
                Some(d) if d <= ytop => {}
                Some(d) => {
                    f.push(format!("Rost element {} of degree {d} exceeds |y_top| = {ytop}", m.product_name(prod)))
                }
                None => f.push(format!("Rost element {:?} names unknown transgressions", prod)),
            }
        }
    }
    if let Some(s) = &m.sharp {
        for lim in &s.limits {
            if m.entry(lim.index).is_none() || lim.min > lim.max {
                f.push(format!("bad multiplicity limit for index {}", lim.index));
            }
        }
    }
    if let Some(s) = &m.spin {
        let want = if l.is_power_of_two() { l - 1 } else { l };
        if s.l_bar != want {
            f.push(format!("l-bar {} should be {want}", s.l_bar));
        }
    }
    for t in &m.restrictions {
        f.extend(restriction_degree_failures(m, t));
    }
    f
}

fn only_y(m: &CohomologyModel, t: &crate::steenrod::term::GeneratorTerm) -> bool {
    t.terms().all(|(mono, _)| mono.factors().iter().all(|(g, _)| m.is_y(&g.name)))
}

/// Degree and naming problems of a restriction table.
pub(crate) fn restriction_degree_failures(m: &CohomologyModel, t: &RestrictionTable) -> Vec<String> {
    let p = m.prime();
    let mut f = Vec::new();
    for (name, img) in &t.images {
        let Some(src) = t.sources.iter().find(|s| &s.name == name) else {
            f.push(format!("{}: image for unknown source {name}", t.name));
            continue;
        };
        match img {
            Image::Zero => {}
            Image::Vn { level, body } => {
                if body.topdeg().and_then(|d| d.checked_sub(vn_degree(p, *level))) != Some(src.topdeg) {
                    f.push(format!("{}: {name} -> v_{level} {body} breaks the degree law", t.name));
                }
            }
            Image::Same { name: target, topdeg } => {
                if *topdeg != src.topdeg || m.entry_named(target).map(|e| e.topdeg) != Some(*topdeg) {
                    f.push(format!("{}: {name} -> {target} changes degree", t.name));
                }
            }
        }
    }
    for n in &t.expected_image_basis {
        if n != "1" && !t.sources.iter().any(|s| &s.name == n) {
            f.push(format!("{}: basis element {n} is not a source", t.name));
        }
    }
    if let Some(target) = &t.target {
        let want = 2 * (target.rost_p.pow(target.rost_n) - 1) / (target.rost_p - 1);
        match m.y_gens.iter().find(|y| y.name == target.rost_gen) {
            Some(y) if y.topdeg as u64 == want => {}
            _ => f.push(format!("{}: Rost generator {} should have degree {want}", t.name, target.rost_gen)),
        }
    }
    f
}
