//! Torsion indices and the witnesses behind them.

mod witness;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{
    groebner, hilbert_series, GradedVariable, GroebnerBasis, HilbertSeries, Integers, Monomial, PolyRing, Polynomial,
    PrimeField, QuotientPresentation, Rationals, Ring,
};
use crate::catalog::{CaseId, CohomologyModel};
use crate::symclass::symmetric_of;
use crate::{Error, Result};

pub use witness::{sharp_y, sharp_y_bound, witness_product, witness_subproducts_nonzero, WitnessPolynomial};

/// The two ways of writing `J_{2i}`: the quarter sum `¼ Σ_j (−1)^j c_j c_{2i−j}`
/// with `c_j = 2y_{2j}` substituted, which gives `y_{4i} + Σ_{0<j<2i} (−1)^j y_{2j} y_{4i−2j}`,
/// and the displayed closed form with the opposite sign on the sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JConvention {
    QuarterSum,
    Displayed,
}

/// `H*(SO(2ℓ+1)/T; Z) = Z[t_i, y_{2i}]/(c_i − 2y_{2i}, J_{2i})`.
#[derive(Clone, Debug)]
pub struct TodaWatanabeRing {
    pub l: usize,
    pub convention: JConvention,
    /// Every convention that passed the free-rank criterion.
    pub matching: Vec<JConvention>,
    pub ring: PolyRing<Integers>,
    pub relations: Vec<Polynomial<Integers>>,
    pub expected_rank: u64,
    pub topdim: u32,
    nf: Arc<Mutex<NormalForms>>,
    top_standard: Monomial,
    /// The normal-form coefficient of a generator of the top piece over `Z`.
    top_unit: BigRational,
}

/// The integral presentation for one convention.
pub fn tw_relations(l: usize, convention: JConvention) -> Result<(PolyRing<Integers>, Vec<Polynomial<Integers>>)> {
    if l == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    let mut vars: Vec<GradedVariable> = (1..=l).map(|i| GradedVariable::new(format!("t{i}"), 2)).collect();
    vars.extend((1..=l).map(|i| GradedVariable::new(format!("y{}", 2 * i), 2 * i as u32)));
    let ring = PolyRing::new(Integers, vars)?;
    let t: Vec<_> = (0..l).map(|i| ring.var(i)).collect();
    // y(k) is y_{2k}, zero past the rank.
    let y = |k: usize| if (1..=l).contains(&k) { ring.var(l + k - 1) } else { ring.zero() };
    let mut rels = Vec::new();
    for i in 1..=l {
        rels.push(&symmetric_of(&ring, &t, i) - &y(i).scale(&BigInt::from(2)));
    }
    let sign = match convention {
        JConvention::QuarterSum => 1,
        JConvention::Displayed => -1,
    };
    for i in 1..=l {
        let mut j2 = y(2 * i);
        for j in 1..2 * i {
            let c = if j % 2 == 0 { sign } else { -sign };
            j2 = &j2 + &(&y(j) * &y(2 * i - j)).scale(&BigInt::from(c));
        }
        rels.push(j2);
    }
    Ok((ring, rels))
}

/// `HS(P(y)) · HS(S(t)/(c_1, .., c_ℓ))` through `maxdeg`.
fn expected_series(l: usize, maxdeg: u32) -> Result<HilbertSeries> {
    let degs: Vec<u32> = (1..=l as u32).map(|i| 2 * i).collect();
    let coinv = HilbertSeries::complete_intersection(&vec![2; l], &degs, maxdeg)
        .ok_or_else(|| Error::Inconsistent("coinvariant series is not a polynomial".into()))?;
    Ok(HilbertSeries::exterior(&degs, maxdeg).cauchy(&coinv))
}

fn reduce_to<S: Ring>(ring: &PolyRing<S>, f: &Polynomial<Integers>) -> Polynomial<S> {
    f.map_coefficients(ring, |c| ring.coeffs().from_int(c))
}

/// The free-rank criterion: over `Q`, `F_2` and `F_3` the graded ranks
/// equal the expected ones, so the `Z`-module is free of the right rank.
fn ranks_match(l: usize, ring: &PolyRing<Integers>, rels: &[Polynomial<Integers>]) -> Result<bool> {
    let topdim = 2 * (l * l) as u32;
    let maxdeg = topdim + 2;
    let want = expected_series(l, maxdeg)?;
    let q = ring.with_coeffs(Rationals);
    let qrels = rels.iter().map(|f| reduce_to(&q, f)).collect();
    if hilbert_series(&QuotientPresentation::new(q, qrels)?, maxdeg)? != want {
        return Ok(false);
    }
    for p in [2, 3] {
        let fp = ring.with_coeffs(PrimeField::new(p)?);
        // A relation divisible by p imposes nothing mod p.
        let rels = rels.iter().map(|f| reduce_to(&fp, f)).filter(|f| !f.is_zero()).collect();
        if hilbert_series(&QuotientPresentation::new(fp, rels)?, maxdeg)? != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monomials of the given topdeg in variables of the given weights.
pub(crate) fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exponents(exps.clone()));
            }
            return;
        }
        let mut e = 0;
        while e * weights[i] <= left {
            exps[i] = e;
            go(weights, i + 1, left - e * weights[i], exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    BigRational::new(num, a.denom() * b.denom())
}

/// Rational normal forms, memoized through `NF(x_i m) = NF(x_i NF(m))`.
#[derive(Debug)]
struct NormalForms {
    gb: GroebnerBasis<Rationals>,
    memo: HashMap<Monomial, Polynomial<Rationals>>,
    times_var: HashMap<(usize, Monomial), Polynomial<Rationals>>,
}

impl NormalForms {
    fn new(gb: GroebnerBasis<Rationals>) -> Self {
        NormalForms { gb, memo: HashMap::new(), times_var: HashMap::new() }
    }

    fn of(&mut self, m: &Monomial) -> Result<Polynomial<Rationals>> {
        if let Some(f) = self.memo.get(m) {
            return Ok(f.clone());
        }
        let ring = self.gb.ring().clone();
        let out = match m.exponents().iter().position(|&e| e > 0) {
            None => self.gb.normal_form(&ring.one())?,
            Some(i) => {
                let x = Monomial::var(m.nvars(), i, 1);
                let rest = self.of(&m.div(&x).expect("variable divides"))?;
                let mut acc = ring.zero();
                for (s, c) in rest.terms() {
                    let key = (i, s.clone());
                    let xs = match self.times_var.get(&key) {
                        Some(f) => f.clone(),
                        None => {
                            let f = self.gb.normal_form(&ring.monomial(s.mul(&x)))?;
                            self.times_var.insert(key, f.clone());
                            f
                        }
                    };
                    acc = &acc + &xs.scale(c);
                }
                acc
            }
        };
        self.memo.insert(m.clone(), out.clone());
        Ok(out)
    }
}

impl TodaWatanabeRing {
    fn top_coefficient(&self, m: &Monomial) -> Result<BigRational> {
        let nf = self.nf.lock().expect("normal-form cache").of(m)?;
        if nf.terms().any(|(s, _)| s != &self.top_standard) {
            return Err(Error::Inconsistent("top graded piece is not spanned by one standard monomial".into()));
        }
        Ok(nf.coefficient(&self.top_standard))
    }

    /// The integer `k` with `m = k · [top generator]`.
    pub fn fundamental_coefficient(&self, m: &Monomial) -> Result<BigInt> {
        if m.nvars() != self.ring.nvars() {
            return Err(Error::Invalid(format!(
                "monomial has {} variables, ring has {}",
                m.nvars(),
                self.ring.nvars()
            )));
        }
        let d = m.topdeg(self.ring.weights());
        if d != self.topdim {
            return Err(Error::Invalid(format!("monomial has topdeg {d}, top degree is {}", self.topdim)));
        }
        let r = self.top_coefficient(m)? / &self.top_unit;
        if !r.is_integer() {
            return Err(Error::Inconsistent(format!("coefficient {r} of {} is not integral", self.describe(m))));
        }
        Ok(r.to_integer())
    }

    /// A monomial written in the ring's variable names.
    pub fn describe(&self, m: &Monomial) -> String {
        crate::algebra::format_monomial(m, self.ring.vars())
    }

    /// `t`-monomials of the top degree.
    pub fn top_t_monomials(&self) -> Vec<Monomial> {
        let l = self.l;
        monomials_of_degree(&vec![2; l], self.topdim)
            .into_iter()
            .map(|m| {
                let mut e = m.exponents().to_vec();
                e.resize(2 * l, 0);
                Monomial::from_exponents(e)
            })
            .collect()
    }

    pub fn top_standard(&self) -> String {
        self.describe(&self.top_standard)
    }
}

/// Builds and checks the ring from explicit relations.
pub fn tw_from_relations(
    l: usize,
    ring: PolyRing<Integers>,
    relations: Vec<Polynomial<Integers>>,
    convention: JConvention,
) -> Result<TodaWatanabeRing> {
    if !ranks_match(l, &ring, &relations)? {
        return Err(Error::Inconsistent(format!(
            "graded ranks of the integral ring for l = {l} do not match a free module of rank 2^l l!"
        )));
    }
    let topdim = 2 * (l * l) as u32;
    let q = ring.with_coeffs(Rationals);
    let qrels: Vec<_> = relations.iter().map(|f| reduce_to(&q, f)).collect();
    let gb = groebner(&QuotientPresentation::new(q, qrels)?, topdim)?;
    let top = gb.standard_monomials(topdim);
    let [top_standard] = <[Monomial; 1]>::try_from(top)
        .map_err(|v| Error::Inconsistent(format!("top graded piece has rank {}", v.len())))?;
    let expected_rank = (1u64 << l) * (1..=l as u64).product::<u64>();
    let mut tw = TodaWatanabeRing {
        l,
        convention,
        matching: vec![convention],
        ring,
        relations,
        expected_rank,
        topdim,
        nf: Arc::new(Mutex::new(NormalForms::new(gb))),
        top_standard,
        top_unit: BigRational::one(),
    };
    tw.top_unit = top_lattice_generator(&tw)?;
    Ok(tw)
}

/// The generator of `H^top(Z)` inside `Q`: the gcd of the coefficients of
/// the products `y_I · t^a` with `I` square-free. Squares `y_{2i}^2` are
/// rewritten by `J_{2i}` into such products, so these span the top piece.
fn top_lattice_generator(tw: &TodaWatanabeRing) -> Result<BigRational> {
    let l = tw.l;
    let mut candidates = Vec::new();
    for mask in 0u32..(1 << l) {
        let ydeg: u32 = (1..=l as u32).filter(|i| mask & (1 << (i - 1)) != 0).map(|i| 2 * i).sum();
        if ydeg > tw.topdim {
            continue;
        }
        for m in monomials_of_degree(&vec![2; l], tw.topdim - ydeg) {
            let mut e = m.exponents().to_vec();
            e.extend((0..l).map(|i| (mask >> i) & 1));
            candidates.push(Monomial::from_exponents(e));
        }
    }
    lattice_gcd(tw, &candidates)
}

pub(crate) fn lattice_gcd(tw: &TodaWatanabeRing, monomials: &[Monomial]) -> Result<BigRational> {
    let coeffs: Vec<BigRational> = monomials.iter().map(|m| tw.top_coefficient(m)).collect::<Result<_>>()?;
    let g = coeffs.iter().fold(BigRational::zero(), |acc, c| rational_gcd(&acc, c));
    if g.is_zero() {
        return Err(Error::Inconsistent("top graded piece is zero".into()));
    }
    Ok(g)
}

/// The gcd of the top coefficients of all products of `t`'s and `y`'s,
/// with no square-free restriction. Exponential; for cross-checks only.
pub fn top_lattice_generator_exhaustive(tw: &TodaWatanabeRing) -> Result<BigRational> {
    let all = monomials_of_degree(tw.ring.weights(), tw.topdim);
    lattice_gcd(tw, &all)
}

impl TodaWatanabeRing {
    pub fn top_unit(&self) -> &BigRational {
        &self.top_unit
    }
}

/// The integral ring for `2 ≤ ℓ ≤ 4`, keeping the first `J` convention that
/// passes the free-rank criterion.
pub fn tw_build(l: usize) -> Result<TodaWatanabeRing> {
    if !(2..=4).contains(&l) {
        return Err(Error::Invalid(format!("the integral ring is built for 2 <= l <= 4, not l = {l}")));
    }
    let mut matching = Vec::new();
    for conv in [JConvention::QuarterSum, JConvention::Displayed] {
        let (ring, rels) = tw_relations(l, conv)?;
        if ranks_match(l, &ring, &rels)? {
            matching.push(conv);
        }
    }
    let Some(&conv) = matching.first() else {
        return Err(Error::Inconsistent(format!("neither form of J gives a free module of rank 2^l l! for l = {l}")));
    };
    let (ring, rels) = tw_relations(l, conv)?;
    let mut tw = tw_from_relations(l, ring, rels, conv)?;
    tw.matching = matching;
    Ok(tw)
}

#[derive(Clone, Debug, Serialize)]
pub struct SoTorsionIndex {
    pub l: usize,
    pub value: u64,
    pub monomials_checked: usize,
    pub convention: JConvention,
}

/// `t(SO(2ℓ+1))` as the gcd of the top coefficients of all `t`-monomials.
pub fn torsion_index_so(l: usize) -> Result<SoTorsionIndex> {
    let tw = tw_build(l)?;
    torsion_index_of(&tw)
}

pub fn torsion_index_of(tw: &TodaWatanabeRing) -> Result<SoTorsionIndex> {
    let monos = tw.top_t_monomials();
    let coeffs: Vec<BigInt> = monos.iter().map(|m| tw.fundamental_coefficient(m)).collect::<Result<_>>()?;
    let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let value = u64::try_from(g).map_err(|_| Error::Inconsistent("torsion index does not fit in 64 bits".into()))?;
    Ok(SoTorsionIndex { l: tw.l, value, monomials_checked: monos.len(), convention: tw.convention })
}

/// `2^(ℓ − ⌊log₂ ℓ⌋ − 1)`, which `t(Spin(2ℓ+1))` divides.
pub fn marlin_bound(l: usize) -> u64 {
    assert!(l >= 1, "rank must be positive");
    let log = usize::BITS - 1 - l.leading_zeros();
    1 << (l as u32 - log - 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verification {
    #[serde(rename = "EXACT")]
    Exact,
    #[serde(rename = "UPPER-WITNESS")]
    UpperWitness,
    #[serde(rename = "UPPER+COUNT")]
    UpperCount,
    #[serde(rename = "TABLE")]
    Table,
}

impl std::fmt::Display for Verification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verification::Exact => "EXACT",
            Verification::UpperWitness => "UPPER-WITNESS",
            Verification::UpperCount => "UPPER+COUNT",
            Verification::Table => "TABLE",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessCheck {
    pub indices: Vec<usize>,
    pub product: String,
    pub p_exponent: u32,
    pub body: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountCheck {
    pub exchanges: u32,
    pub bound: u32,
    pub top_count: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionIndexReport {
    pub group: String,
    pub value: u64,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomials_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<CountCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marlin_bound: Option<u64>,
}

/// The catalog torsion index with the strongest check that applies.
pub fn torsion_index(model: &CohomologyModel) -> Result<TorsionIndexReport> {
    let value = model
        .torsion_index_p
        .ok_or_else(|| Error::DataMissing(format!("{}: torsion index is not determined", model.label)))?;
    let mut report = TorsionIndexReport {
        group: model.label.clone(),
        value,
        verification: Verification::Table,
        monomials_checked: None,
        witness: None,
        count: None,
        marlin_bound: (model.case == CaseId::SpinOdd).then(|| marlin_bound(model.rank())),
    };
    if model.case == CaseId::SpecialOrthogonalOdd && (2..=4).contains(&model.rank()) {
        let so = torsion_index_so(model.rank())?;
        if so.value != value {
            return Err(Error::Inconsistent(format!(
                "{}: computed {} but the catalog has {value}",
                model.label, so.value
            )));
        }
        report.verification = Verification::Exact;
        report.monomials_checked = Some(so.monomials_checked);
    }
    let p = model.prime();
    let top = crate::steenrod::GeneratorTerm::monomial(p, model.y_top(), 1);
    for w in &model.witnesses {
        if p.checked_pow(w.p_exponent) != Some(value) {
            continue;
        }
        let got = witness_product(model, &w.indices)?;
        if got.p_exponent != w.p_exponent || got.body != w.body {
            return Err(Error::Inconsistent(format!(
                "{}: witness {} computes to {got}, the catalog has p^{} {}",
                model.label,
                model.product_name(&w.indices),
                w.p_exponent,
                w.body
            )));
        }
        if got.body != top {
            continue;
        }
        report.witness = Some(WitnessCheck {
            indices: w.indices.clone(),
            product: model.product_name(&w.indices),
            p_exponent: got.p_exponent,
            body: got.body.to_string(),
        });
        if report.verification == Verification::Table {
            report.verification = Verification::UpperWitness;
        }
        if model.sharp.is_some() && got.p_exponent >= 1 {
            let exchanges = got.p_exponent - 1;
            let bound = sharp_y_bound(model, exchanges);
            let top_count = model.y_top().length();
            if bound < top_count && report.verification == Verification::UpperWitness {
                report.verification = Verification::UpperCount;
            }
            report.count = Some(CountCheck { exchanges, bound, top_count });
        }
        break;
    }
    Ok(report)
}
