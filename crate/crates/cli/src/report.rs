//! What each subcommand prints. Every report serializes to JSON and renders
//! the same numbers as text, so the two formats never disagree.

use std::fmt::Write as _;

use flagchow::algebra::PrimeField;
use flagchow::catalog::{validate_catalog, CohomologyModel, Operation, QRule};
use flagchow::chow::{
    chow_presentation, restriction_check, rost_chow_basis, BasisElement, DecompositionReport, RestrictionReport,
};
use flagchow::steenrod::{q_milnor, sq_on_so_generator, table_value, GeneratorTerm, Provenance};
use flagchow::torsion::TorsionIndexReport;
use flagchow::verify::{CaseReport, Status};
use flagchow::{Error, Result};
use serde::Serialize;

pub trait Render: Serialize {
    fn text(&self) -> String;
}

/// A degree in both gradings.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Degree {
    pub topdeg: u32,
    pub chowdeg: u32,
}

impl Degree {
    fn of(topdeg: u32) -> Self {
        Degree { topdeg, chowdeg: topdeg / 2 }
    }
}

fn degrees(d: Option<u32>) -> String {
    d.map_or_else(|| "-".into(), |d| format!("topdeg {d}, chowdeg {}", d / 2))
}

fn basis_lines(out: &mut String, basis: &[BasisElement]) {
    for b in basis {
        let _ = writeln!(out, "  {:<14} topdeg {:>4}  chowdeg {:>4}", b.name, b.topdeg, b.chowdeg());
    }
}

fn series_line(dims: &[u64]) -> String {
    dims.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
pub struct CatalogRow {
    pub case: String,
    pub instances: usize,
    pub valid: bool,
    pub failures: Vec<String>,
}

#[derive(Serialize)]
pub struct CatalogListing {
    pub entries: Vec<CatalogRow>,
    pub valid: bool,
}

pub fn catalog_listing() -> CatalogListing {
    let report = validate_catalog();
    let entries = report
        .entries
        .into_iter()
        .map(|e| CatalogRow {
            case: e.case.label().to_string(),
            instances: e.instances.len(),
            valid: e.failures.is_empty(),
            failures: e.failures,
        })
        .collect::<Vec<_>>();
    let valid = entries.iter().all(|e: &CatalogRow| e.valid);
    CatalogListing { entries, valid }
}

impl Render for CatalogListing {
    fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let status = if e.valid { "valid" } else { "INVALID" };
            let _ = writeln!(out, "{:<22} {:>3} instances  {status}", e.case, e.instances);
            for f in &e.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
        out
    }
}

#[derive(Serialize)]
pub struct Generator {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
    pub topdeg: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

#[derive(Serialize)]
pub struct Transgression {
    pub index: usize,
    pub name: String,
    pub topdeg: u32,
    pub chowdeg: u32,
}

#[derive(Serialize)]
pub struct CatalogEntry {
    pub group: String,
    pub case: String,
    pub rank: usize,
    pub prime: u64,
    pub dim: u32,
    pub y_gens: Vec<Generator>,
    pub x_gens: Vec<Generator>,
    pub transgressions: Vec<Transgression>,
    pub y_top: Degree,
    pub torsion_index_p: Option<u64>,
    pub j_invariant: Vec<u32>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn new(m: &CohomologyModel) -> Self {
        CatalogEntry {
            group: m.label.clone(),
            case: m.case.label().to_string(),
            rank: m.rank(),
            prime: m.prime(),
            dim: m.dim,
            y_gens: m
                .y_gens
                .iter()
                .map(|y| Generator {
                    name: y.name.clone(),
                    alias: y.alias.clone(),
                    topdeg: y.topdeg,
                    truncation: Some(y.truncation),
                })
                .collect(),
            x_gens: m
                .x_gens
                .iter()
                .map(|x| Generator { name: x.name.clone(), alias: x.alias.clone(), topdeg: x.topdeg, truncation: None })
                .collect(),
            transgressions: m
                .transgression
                .iter()
                .map(|e| Transgression {
                    index: e.index,
                    name: e.name.clone(),
                    topdeg: e.topdeg,
                    chowdeg: e.topdeg / 2,
                })
                .collect(),
            y_top: Degree::of(m.y_top_degree()),
            torsion_index_p: m.torsion_index_p,
            j_invariant: m.j_invariant.clone(),
            notes: m.notes.clone(),
        }
    }
}

fn gen_list(gens: &[Generator]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .map(|g| {
            let alias = g.alias.as_ref().map(|a| format!("={a}")).unwrap_or_default();
            let height = g.truncation.map(|h| format!(" ^{h}")).unwrap_or_default();
            format!("{}{alias} ({}{height})", g.name, g.topdeg)
        })
        .collect();
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(", ")
    }
}

impl Render for CatalogEntry {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} at p={} [{}]", self.group, self.prime, self.case);
        let _ = writeln!(out, "rank {}, dim {}", self.rank, self.dim);
        let _ = writeln!(out, "y generators: {}", gen_list(&self.y_gens));
        let _ = writeln!(out, "x generators: {}", gen_list(&self.x_gens));
        let _ = writeln!(out, "y_top: {}", degrees(Some(self.y_top.topdeg)));
        for t in &self.transgressions {
            let _ = writeln!(out, "  b_{:<3} {:<8} topdeg {:>4}  chowdeg {:>4}", t.index, t.name, t.topdeg, t.chowdeg);
        }
        let ti = self.torsion_index_p.map_or_else(|| "undetermined".into(), |t| t.to_string());
        let _ = writeln!(out, "torsion index (p-part): {ti}");
        let j: Vec<String> = self.j_invariant.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "J-invariant: ({})", j.join(","));
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct Variable {
    pub name: String,
    pub topdeg: u32,
    pub chowdeg: u32,
}

#[derive(Serialize)]
pub struct Relation {
    pub text: String,
    pub topdeg: u32,
    pub chowdeg: u32,
}

#[derive(Serialize)]
pub struct Presentation {
    pub group: String,
    pub prime: u64,
    pub opaque: bool,
    pub description: String,
    pub variables: Vec<Variable>,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(m: &CohomologyModel) -> Result<Self> {
        let pres = chow_presentation(m)?;
        let q = &pres.presentation;
        let variables = q
            .ring()
            .vars()
            .iter()
            .map(|v| Variable { name: v.name.clone(), topdeg: v.topdeg, chowdeg: v.topdeg / 2 })
            .collect();
        let relations = pres
            .relation_strings()
            .into_iter()
            .zip(q.relation_degrees())
            .map(|(text, d)| Relation { text, topdeg: d, chowdeg: d / 2 })
            .collect();
        Ok(Presentation {
            group: m.label.clone(),
            prime: m.prime(),
            opaque: pres.opaque,
            description: pres.description,
            variables,
            relations,
        })
    }
}

impl Render for Presentation {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} at p={}", self.group, self.prime);
        let _ = writeln!(out, "{}", self.description);
        if self.opaque {
            let _ = writeln!(out, "(variables are the transgressions; the full ring is this part times S(t)/(b))");
        }
        let vars: Vec<String> =
            self.variables.iter().map(|v| format!("{} ({}/{})", v.name, v.topdeg, v.chowdeg)).collect();
        let _ = writeln!(out, "variables (topdeg/chowdeg): {}", vars.join(", "));
        let _ = writeln!(out, "relations:");
        for r in &self.relations {
            let _ = writeln!(out, "  [{}/{}] {}", r.topdeg, r.chowdeg, r.text);
        }
        out
    }
}

#[derive(Serialize)]
pub struct Hilbert {
    pub group: String,
    pub prime: u64,
    pub maxdeg: u32,
    pub opaque: bool,
    /// Dimension in each topological degree `0..=maxdeg`.
    pub series: Vec<u64>,
    pub total: u64,
}

impl Hilbert {
    pub fn new(m: &CohomologyModel, maxdeg: u32) -> Result<Self> {
        let pres = chow_presentation(m)?;
        let hs = pres.series(maxdeg)?;
        Ok(Hilbert {
            group: m.label.clone(),
            prime: m.prime(),
            maxdeg,
            opaque: pres.opaque,
            series: hs.dims().to_vec(),
            total: hs.total(),
        })
    }
}

impl Render for Hilbert {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} at p={}, maxdeg {}", self.group, self.prime, self.maxdeg);
        let _ = writeln!(out, "series: {}", series_line(&self.series));
        let _ = writeln!(out, "total: {}", self.total);
        let _ = writeln!(out, "topdeg chowdeg dim");
        for (d, n) in self.series.iter().enumerate().filter(|(_, n)| **n > 0) {
            let _ = writeln!(out, "{d:>6} {:>7} {n}", d / 2);
        }
        out
    }
}

#[derive(Serialize)]
pub struct Rost {
    pub n: u32,
    pub p: u64,
    pub size: usize,
    pub basis: Vec<BasisElement>,
}

impl Rost {
    pub fn new(n: u32, p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::Invalid("the Rost motive R_n needs n >= 1".into()));
        }
        let fits = p.checked_pow(n).and_then(|q| q.checked_mul(2 * (p - 1))).is_some_and(|v| v <= u32::MAX as u64);
        if !fits {
            return Err(Error::Invalid(format!("R_{n} at p={p} has degrees beyond the supported range")));
        }
        let basis = rost_chow_basis(n, p);
        Ok(Rost { n, p, size: basis.len(), basis })
    }
}

impl Render for Rost {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "CH*(R_{})/{}: {} elements", self.n, self.p, self.size);
        basis_lines(&mut out, &self.basis);
        out
    }
}

#[derive(Serialize)]
pub struct Restrictions {
    pub group: String,
    pub tables: Vec<RestrictionReport>,
    pub passed: bool,
}

impl Restrictions {
    pub fn new(m: &CohomologyModel) -> Self {
        let tables: Vec<RestrictionReport> = m.restrictions.iter().map(|t| restriction_check(m, t)).collect();
        let passed = tables.iter().all(|t| t.passed);
        Restrictions { group: m.label.clone(), tables, passed }
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

impl Render for Restrictions {
    fn text(&self) -> String {
        let mut out = String::new();
        if self.tables.is_empty() {
            let _ = writeln!(out, "{}: no restriction tables in the catalog", self.group);
        }
        for t in &self.tables {
            let _ = writeln!(out, "{} [{}]: {}", t.table, verdict(t.passed), t.description);
            for r in &t.rows {
                let img = r.image_topdeg.map_or_else(|| "-".into(), |d| format!("{d}/{}", d / 2));
                let rost = r.rost_element.as_ref().map(|e| format!("  ~ {e}")).unwrap_or_default();
                let mark = if r.consistent { "" } else { "  INCONSISTENT" };
                let _ = writeln!(
                    out,
                    "  {:<10} [{}/{}] -> {} [{img}]{rost}{mark}",
                    r.source,
                    r.source_topdeg,
                    r.source_topdeg / 2,
                    r.image
                );
            }
            let _ = writeln!(out, "  image basis ({}): {}", t.image_basis.len(), t.image_basis.join(", "));
            let _ = writeln!(out, "  expected    ({}): {}", t.expected_basis.len(), t.expected_basis.join(", "));
            if let Some(c) = t.covers_rost_basis {
                let _ = writeln!(out, "  covers CH*(R_n)/p: {c}");
            }
        }
        let _ = writeln!(out, "{}", verdict(self.passed));
        out
    }
}

impl Render for DecompositionReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}, maxdeg {}", self.group, self.maxdeg);
        let _ = writeln!(out, "Rost part ({} elements):", self.rost_basis.len());
        basis_lines(&mut out, &self.rost_basis);
        let _ = writeln!(out, "CH*(X)/p:          {}", series_line(&self.chow_series));
        let _ = writeln!(out, "Rost * S(t)/(b):   {}", series_line(&self.product_series));
        let _ = writeln!(out, "{}", verdict(self.passed));
        out
    }
}

impl Render for TorsionIndexReport {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: torsion index {} [{}]", self.group, self.value, self.verification);
        if let Some(n) = self.monomials_checked {
            let _ = writeln!(out, "top monomials checked: {n}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {} = p^{} ({})", w.product, w.p_exponent, w.body);
        }
        if let Some(c) = &self.count {
            let _ = writeln!(
                out,
                "count: {} exchanges give at most {} y-factors, y_top has {}",
                c.exchanges, c.bound, c.top_count
            );
        }
        if let Some(b) = self.marlin_bound {
            let _ = writeln!(out, "divides: {b}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct Steenrod {
    pub group: String,
    pub op: String,
    pub gen: String,
    pub value: GeneratorTerm,
    pub topdeg: u32,
    pub chowdeg: u32,
    pub provenance: Provenance,
    pub note: Option<String>,
}

fn generator_index(name: &str) -> Option<usize> {
    name.strip_prefix(['x', 'y']).and_then(|s| s.parse().ok())
}

impl Steenrod {
    pub fn new(m: &CohomologyModel, op: &str, gen: &str) -> Result<Self> {
        let op: Operation = op.parse()?;
        let p = m.prime();
        let g = m.gen(gen).ok_or_else(|| Error::Invalid(format!("unknown generator `{gen}` for {}", m.label)))?;
        if matches!(op, Operation::Sq(_)) && p != 2 || matches!(op, Operation::P(_)) && p == 2 {
            return Err(Error::Invalid(format!("{op} is not an operation at p={p}")));
        }
        let (value, provenance, note) = match op {
            Operation::Q(n) => {
                let v = q_milnor(m, &g.name, n)?;
                (v.value, v.provenance, v.note)
            }
            _ if op.is_q0(p) => {
                let v = q_milnor(m, &g.name, 0)?;
                (v.value, v.provenance, v.note)
            }
            _ => match table_value(m, op, &g.name) {
                Some(v) => (v.clone(), Provenance::Table, None),
                None => match (op, m.q_rule, generator_index(&g.name)) {
                    (Operation::Sq(k), Some(QRule::Orthogonal { .. }), Some(i)) => {
                        (sq_on_so_generator(m, i, k)?, Provenance::Formula, Some("Sq^k x_i = C(i,k) x_(i+k)".into()))
                    }
                    _ => return Err(Error::DataMissing(format!("{op}({}) for {} is not tabulated", g.name, m.label))),
                },
            },
        };
        let topdeg = g.topdeg + op.topdeg(p);
        Ok(Steenrod {
            group: m.label.clone(),
            op: op.to_string(),
            gen: g.name,
            value,
            topdeg,
            chowdeg: topdeg / 2,
            provenance,
            note,
        })
    }
}

impl Render for Steenrod {
    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}({}) = {}", self.group, self.op, self.gen, self.value);
        let _ = writeln!(out, "{}", degrees(Some(self.topdeg)));
        let _ = writeln!(out, "provenance: {}", self.provenance);
        if let Some(n) = &self.note {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

#[derive(Serialize)]
pub struct Suite {
    pub reports: Vec<CaseReport>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Suite {
    pub fn new(reports: Vec<CaseReport>) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skipped));
        Suite { reports, passed, failed, skipped }
    }
}

impl Render for Suite {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let _ = writeln!(out, "{}  {:<34} {}", r.status, r.id, r.title);
            for c in &r.diff {
                let _ =
                    writeln!(out, "      {}: expected {} ({}), computed {}", c.name, c.expected, c.source, c.computed);
            }
            if r.status == Status::Skipped {
                for c in &r.checks {
                    let _ = writeln!(out, "      {}", c.computed);
                }
            }
        }
        let _ = writeln!(out, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped);
        out
    }
}
