//! Steenrod squares on orthogonal-group generators, Milnor primitives from
//! the catalog tables, and cross-checks between the two.

pub mod simple;
pub mod term;

use std::fmt;

use serde::Serialize;

use crate::algebra::HilbertSeries;
use crate::catalog::{lookup, CohomologyModel, Family, GroupDescriptor, Operation, QRule};
use crate::symclass::lucas_unchecked;
use crate::{Error, Result};

pub use simple::SimpleSystem;
pub use term::{Gen, GenMonomial, GeneratorTerm, ModelAlgebra};

fn odd_binomial(n: u64, k: u64) -> bool {
    lucas_unchecked(n, k, 2) == 1
}

/// In `SO(m)` the generator of degree `j` is `x_j` for odd `j`, and the
/// even one `x_j` is identified with `y_j`.
fn so_gen(j: usize) -> Gen {
    let name = if j % 2 == 1 { format!("x{j}") } else { format!("y{j}") };
    Gen::new(name, j as u32)
}

fn orthogonal_size(model: &CohomologyModel) -> Result<usize> {
    match model.q_rule {
        Some(QRule::Orthogonal { m }) => Ok(m),
        _ => Err(Error::Unsupported {
            case: format!("Wu-formula squares on {}", model.label),
            supported: "SO(2l+1) and SO(2l) at p=2".into(),
        }),
    }
}

/// `Sq^k(x_i) = C(i, k) x_{i+k}` in `H*(SO(m); Z/2)`, where an even-index
/// target is the class `y_{i+k}` and targets past `x_{m−1}` vanish.
pub fn sq_on_so_generator(model: &CohomologyModel, i: usize, k: u32) -> Result<GeneratorTerm> {
    let m = orthogonal_size(model)?;
    if i == 0 || i >= m {
        return Err(Error::Invalid(format!("x_{i} is not a generator of H*(SO({m}))")));
    }
    let j = i + k as usize;
    if j >= m || !odd_binomial(i as u64, k as u64) {
        return Ok(GeneratorTerm::zero(2));
    }
    Ok(GeneratorTerm::gen(2, so_gen(j)))
}

/// `Sq^{2k}(y_{2i}) = C(i, k) y_{2(i+k)}`, zero once `i + k > ℓ`.
pub fn sq_on_y(i: usize, k: usize, l: usize) -> GeneratorTerm {
    if i + k > l || !odd_binomial(i as u64, k as u64) {
        return GeneratorTerm::zero(2);
    }
    GeneratorTerm::gen(2, Gen::new(format!("y{}", 2 * (i + k)), 2 * (i + k) as u32))
}

/// Whether `y_{2i}` is hit by some `Sq^{2k}(y_{2i'})` with `i' < i`.
/// The ambient rank `ℓ` only bounds the search, since `i' + k = i ≤ ℓ`.
pub fn sq_hits(i: usize, l: usize) -> bool {
    i <= l && (1..i).any(|ip| odd_binomial(ip as u64, (i - ip) as u64))
}

/// How an operation value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Table,
    Formula,
    Derived,
    DegreeForced,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Table => "table",
            Provenance::Formula => "formula",
            Provenance::Derived => "derived",
            Provenance::DegreeForced => "degree-forced",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OpValue {
    pub value: GeneratorTerm,
    pub provenance: Provenance,
    pub note: Option<String>,
}

impl OpValue {
    fn new(value: GeneratorTerm, provenance: Provenance, note: Option<String>) -> Self {
        OpValue { value, provenance, note }
    }
}

fn op_is_q(op: Operation, n: u32, p: u64) -> bool {
    op == Operation::Q(n) || (n == 0 && op.is_q0(p))
}

/// Looks `op(source)` up in the model's table.
pub fn table_value<'a>(model: &'a CohomologyModel, op: Operation, source: &str) -> Option<&'a GeneratorTerm> {
    let name = model.gen(source)?.name;
    let p = model.prime();
    model
        .op_table
        .iter()
        .find(|r| r.source == name && (r.op == op || (op.is_q0(p) && r.op.is_q0(p))))
        .map(|r| &r.target)
}

fn formula_value(model: &CohomologyModel, rule: QRule, g: &Gen, n: u32) -> OpValue {
    let p = model.prime();
    let zero = || GeneratorTerm::zero(p);
    let y = |d: usize| -> GeneratorTerm { GeneratorTerm::gen(p, Gen::new(format!("y{d}"), d as u32)) };
    let idx: usize = g.name.strip_prefix('x').and_then(|s| s.parse().ok()).unwrap_or(0);
    let shift = (1usize << (n + 1)) - 1;
    match rule {
        QRule::Orthogonal { m } => {
            let target = idx + shift;
            if target >= m {
                let note = format!("y_{target} lies beyond the model and is set to 0");
                return OpValue::new(zero(), Provenance::Formula, Some(note));
            }
            OpValue::new(y(target), Provenance::Formula, None)
        }
        QRule::Spin { l } => {
            if g.name.starts_with('z') {
                let t = usize::BITS - 1 - l.leading_zeros();
                let s = (1usize << (t + 1)) + (1usize << n) - 1;
                let mut out = zero();
                for i in 1..=s / 2 {
                    let j = s - i;
                    let (a, b) = (model.gen(&format!("y{}", 2 * i)), model.gen(&format!("y{}", 2 * j)));
                    if let (true, Some(a), Some(b)) = (i < j, a, b) {
                        out = out.add(&GeneratorTerm::gen(p, a).mul_free(&GeneratorTerm::gen(p, b)));
                    }
                }
                return OpValue::new(out, Provenance::Formula, None);
            }
            let i = idx.div_ceil(2);
            let m = i + (1usize << n) - 1;
            let note = if m > l {
                Some(format!("y_{} lies beyond the model and is set to 0", 2 * m))
            } else if m.is_power_of_two() {
                Some(format!("y_{} lies in S(t') and vanishes in the quotient", 2 * m))
            } else {
                return OpValue::new(y(2 * m), Provenance::Formula, None);
            };
            OpValue::new(zero(), Provenance::Formula, note)
        }
    }
}

/// Whether `P(y)` has a monomial of degree `d`.
fn y_degree_occupied(model: &CohomologyModel, d: u32) -> bool {
    let top = model.y_top_degree();
    d <= top
        && model
            .y_gens
            .iter()
            .fold(HilbertSeries::one(top), |acc, y| {
                acc.cauchy(&HilbertSeries::truncated(y.topdeg, y.truncation as u64, top))
            })
            .get(d)
            > 0
}

/// The `v_n` component of the transgression of `gen`, with `v_0 = p`.
fn from_transgression(model: &CohomologyModel, gen: &str, n: u32) -> Option<(String, GeneratorTerm)> {
    let e = model.transgression.iter().find(|e| e.x_gen == gen)?;
    let body = if n == 0 {
        e.leading.as_ref().filter(|l| l.p_exponent == 1)?.body.clone()
    } else {
        e.v_terms.iter().find(|v| v.level == n)?.body.clone()
    };
    Some((e.name.clone(), body))
}

/// `Q_n(gen)`, tried in order: the operation table; `Q_n y = 0`, since the
/// y-classes come from the even-degree `H*(G/T)`; the closed formula for the
/// orthogonal and spin families; the `v_n` term of the transgression
/// `b = Σ v_i y(i)` with `π*y(i) = Q_i x`; and finally, since `Q_n x` lies
/// in `P(y)`, zero when `P(y)` is empty in the target degree. Anything else
/// is missing data.
pub fn q_milnor(model: &CohomologyModel, gen: &str, n: u32) -> Result<OpValue> {
    let p = model.prime();
    let g = model.gen(gen).ok_or_else(|| Error::Invalid(format!("unknown generator `{gen}` for {}", model.label)))?;
    if let Some(r) = model.op_table.iter().find(|r| r.source == g.name && op_is_q(r.op, n, p)) {
        return Ok(OpValue::new(r.target.clone(), Provenance::Table, r.note.clone()));
    }
    if !g.is_odd() {
        let note = format!("{} is pulled back from H*(G/T), which is concentrated in even degrees", g.name);
        return Ok(OpValue::new(GeneratorTerm::zero(p), Provenance::Formula, Some(note)));
    }
    if let Some(v) = model.q_rule.map(|rule| formula_value(model, rule, &g, n)) {
        return Ok(v);
    }
    if let Some((b, body)) = from_transgression(model, &g.name, n) {
        let note = format!("read off the v_{n} term of {b}");
        return Ok(OpValue::new(body, Provenance::Derived, Some(note)));
    }
    let target = g.topdeg + Operation::Q(n).topdeg(p);
    if !y_degree_occupied(model, target) {
        return Ok(OpValue::new(
            GeneratorTerm::zero(p),
            Provenance::DegreeForced,
            Some(format!("P(y) has no class of degree {target}")),
        ));
    }
    Err(Error::DataMissing(format!("Q_{n}({}) for {} is not tabulated or derivable", g.name, model.label)))
}

/// `Q_n` extended to sums of products by the derivation rule
/// `Q(ab) = Q(a) b + (−1)^{|a|} a Q(b)`, computed in `P(y) ⊗ Λ(x)`.
pub fn q_milnor_term(model: &CohomologyModel, term: &GeneratorTerm, n: u32) -> Result<GeneratorTerm> {
    let p = model.prime();
    let alg = model.algebra();
    let mut out = GeneratorTerm::zero(p);
    for (mono, c) in term.terms() {
        let factors: Vec<Gen> =
            mono.factors().iter().flat_map(|(g, e)| std::iter::repeat_n(g.clone(), *e as usize)).collect();
        for k in 0..factors.len() {
            let q = q_milnor(model, &factors[k].name, n)?.value;
            if q.is_zero() {
                continue;
            }
            let left =
                GeneratorTerm::monomial(p, GenMonomial::from_factors(factors[..k].iter().map(|g| (g.clone(), 1))), 1);
            let right = GeneratorTerm::monomial(
                p,
                GenMonomial::from_factors(factors[k + 1..].iter().map(|g| (g.clone(), 1))),
                1,
            );
            let odd_left = factors[..k].iter().filter(|g| g.is_odd()).count();
            let sign = if odd_left % 2 == 1 { -1 } else { 1 };
            let piece = left.mul_free(&q).mul_free(&right).scale(sign * c as i64);
            out = out.add(&piece);
        }
    }
    Ok(alg.reduce(&out))
}

/// Generators whose tabulated Bockstein is a nonzero multiple of `target`.
pub fn beta_preimages(model: &CohomologyModel, target: &GeneratorTerm) -> Vec<String> {
    let p = model.prime();
    model
        .op_table
        .iter()
        .filter(|r| r.op.is_q0(p))
        .filter(|r| (1..p as i64).any(|c| r.target == target.scale(c)) && !target.is_zero())
        .map(|r| r.source.clone())
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct QCheckRow {
    pub gen: String,
    pub derived: GeneratorTerm,
    pub catalog: GeneratorTerm,
    pub provenance: Provenance,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QCheckReport {
    pub group: String,
    pub n: u32,
    pub rows: Vec<QCheckRow>,
}

impl QCheckReport {
    pub fn agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

/// Compares `Q_n` on every exterior generator of `SO(2ℓ+1)`, computed from
/// the recursion `Q_n = Sq^{2^n} Q_{n−1} + Q_{n−1} Sq^{2^n}` with the Wu-type
/// formula, against the catalog value.
pub fn derive_qn_check(l: usize, n: u32) -> Result<QCheckReport> {
    let model = lookup(&GroupDescriptor::new(Family::SOOdd, l, 2))?;
    let ss = SimpleSystem::new(2 * l + 1);
    let mut rows = Vec::new();
    for x in &model.x_gens {
        let idx = x.topdeg as usize;
        let derived = ss.to_term(&ss.q(n, &ss.generator(idx)));
        let cat = q_milnor(&model, &x.name, n)?;
        rows.push(QCheckRow {
            gen: x.name.clone(),
            agree: derived == cat.value,
            derived,
            catalog: cat.value,
            provenance: cat.provenance,
        });
    }
    Ok(QCheckReport { group: model.label.clone(), n, rows })
}

/// [`derive_qn_check`] at `n = 1`, where `Q_1 = Sq^2 Sq^1 + Sq^1 Sq^2`.
pub fn derive_q1_check(l: usize) -> Result<QCheckReport> {
    derive_qn_check(l, 1)
}

/// `Q_n(x_a x_b)` two ways in `SO(2ℓ+1)`: the derivation rule on catalog
/// values, and the squaring recursion applied to the product via Cartan.
pub fn cartan_check(l: usize, n: u32) -> Result<QCheckReport> {
    let model = lookup(&GroupDescriptor::new(Family::SOOdd, l, 2))?;
    let ss = SimpleSystem::new(2 * l + 1);
    let mut rows = Vec::new();
    for (ia, a) in model.x_gens.iter().enumerate() {
        for b in &model.x_gens[ia + 1..] {
            let product = GeneratorTerm::gen(2, Gen::new(a.name.clone(), a.topdeg))
                .mul_free(&GeneratorTerm::gen(2, Gen::new(b.name.clone(), b.topdeg)));
            let catalog = q_milnor_term(&model, &product, n)?;
            let elt = ss.mul(&ss.generator(a.topdeg as usize), &ss.generator(b.topdeg as usize));
            let derived = ss.to_term(&ss.q(n, &elt));
            rows.push(QCheckRow {
                gen: product.to_string(),
                agree: derived == catalog,
                derived,
                catalog,
                provenance: Provenance::Derived,
            });
        }
    }
    Ok(QCheckReport { group: model.label.clone(), n, rows })
}
