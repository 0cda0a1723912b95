//! Restriction tables checked entry by entry against degrees and against
//! the Rost-motive basis of the target.

use std::collections::BTreeSet;

use serde::Serialize;

use super::basis::{rost_chow_basis, VnSymbol};
use crate::catalog::{CohomologyModel, Image, RestrictionTable, RestrictionTarget};
use crate::steenrod::GeneratorTerm;

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionRow {
    pub source: String,
    pub source_topdeg: u32,
    pub image: String,
    pub image_topdeg: Option<i64>,
    /// The Rost-basis element `c_j(y^i)` hit, times any rational factor.
    pub rost_element: Option<String>,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub table: String,
    pub description: String,
    pub rows: Vec<RestrictionRow>,
    pub image_basis: Vec<String>,
    pub expected_basis: Vec<String>,
    pub basis_matches: bool,
    /// Whether the images without rational factors exhaust `CH*(R_n)/p`.
    pub covers_rost_basis: Option<bool>,
    pub passed: bool,
}

fn image_text(p: u64, level: u32, body: &GeneratorTerm) -> String {
    let b = if body.num_terms() > 1 { format!("({body})") } else { body.to_string() };
    if level == 0 {
        format!("{p}*{b}")
    } else {
        format!("v_{level}*{b}")
    }
}

/// Splits `body = y^i · r` with `r` a monomial in the rational generators.
fn rost_factor(target: &RestrictionTarget, level: u32, body: &GeneratorTerm) -> Option<(String, bool)> {
    if body.num_terms() != 1 || level >= target.rost_n {
        return None;
    }
    let (mono, _) = body.terms().next()?;
    let i = mono.exponent(&target.rost_gen);
    if i == 0 || i as u64 >= target.rost_p {
        return None;
    }
    let mut rest = Vec::new();
    for (g, e) in mono.factors() {
        if g.name == target.rost_gen {
            continue;
        }
        let (_, h) = target.rational.iter().find(|(r, _)| r.name == g.name)?;
        if e >= h {
            return None;
        }
        rest.push(if *e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) });
    }
    let y = if i == 1 { target.rost_gen.clone() } else { format!("{}^{i}", target.rost_gen) };
    let mut name = format!("c_{level}({y})");
    for r in &rest {
        name.push('*');
        name.push_str(r);
    }
    Some((name, rest.is_empty()))
}

pub fn restriction_check(model: &CohomologyModel, table: &RestrictionTable) -> RestrictionReport {
    let p = model.prime();
    let mut rows = Vec::new();
    let mut image_basis = vec!["1".to_string()];
    let mut seen = BTreeSet::new();
    let mut distinct = true;
    let mut pure_rost = BTreeSet::new();
    for (name, img) in &table.images {
        let source_topdeg = table.sources.iter().find(|s| &s.name == name).map_or(0, |s| s.topdeg);
        let row = match img {
            Image::Zero => RestrictionRow {
                source: name.clone(),
                source_topdeg,
                image: "0".into(),
                image_topdeg: None,
                rost_element: None,
                consistent: true,
            },
            Image::Vn { level, body } => {
                let deg = body.topdeg().map(|d| d as i64 + VnSymbol { n: *level }.topdeg(p));
                let rost = table.target.as_ref().map(|t| rost_factor(t, *level, body));
                let rost_ok = !matches!(rost, Some(None));
                if let Some(Some((n, true))) = &rost {
                    pure_rost.insert(n.clone());
                }
                distinct &= seen.insert((*level, body.to_string()));
                image_basis.push(name.clone());
                RestrictionRow {
                    source: name.clone(),
                    source_topdeg,
                    image: image_text(p, *level, body),
                    image_topdeg: deg,
                    rost_element: rost.flatten().map(|(n, _)| n),
                    consistent: deg == Some(source_topdeg as i64) && rost_ok,
                }
            }
            Image::Same { name: target, topdeg } => {
                let target_deg = model.entry_named(target).map(|e| e.topdeg);
                distinct &= seen.insert((u32::MAX, target.clone()));
                image_basis.push(target.clone());
                RestrictionRow {
                    source: name.clone(),
                    source_topdeg,
                    image: target.clone(),
                    image_topdeg: Some(*topdeg as i64),
                    rost_element: None,
                    consistent: *topdeg == source_topdeg && target_deg == Some(*topdeg),
                }
            }
        };
        rows.push(row);
    }
    let got: BTreeSet<&String> = image_basis.iter().collect();
    let want: BTreeSet<&String> = table.expected_image_basis.iter().collect();
    let basis_matches = distinct && got == want && image_basis.len() == table.expected_image_basis.len();
    let covers_rost_basis = table.target.as_ref().map(|t| {
        rost_chow_basis(t.rost_n, t.rost_p).iter().skip(1).all(|b| {
            let name = b.name.replace("(y", &format!("({}", t.rost_gen));
            pure_rost.contains(&name)
        })
    });
    let passed = basis_matches && rows.iter().all(|r| r.consistent);
    RestrictionReport {
        table: table.name.clone(),
        description: table.description.clone(),
        rows,
        image_basis,
        expected_basis: table.expected_image_basis.clone(),
        basis_matches,
        covers_rost_basis,
        passed,
    }
}
