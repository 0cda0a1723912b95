use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::HilbertSeries;
use crate::steenrod::term::{Gen, GenMonomial, GeneratorTerm, ModelAlgebra};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    U,
    Sp,
    PU,
    #[serde(rename = "SO_odd")]
    SOOdd,
    #[serde(rename = "SO_even")]
    SOEven,
    #[serde(rename = "Spin_odd")]
    SpinOdd,
    G2,
    F4,
    E7,
    E8,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::U,
        Family::Sp,
        Family::PU,
        Family::SOOdd,
        Family::SOEven,
        Family::SpinOdd,
        Family::G2,
        Family::F4,
        Family::E7,
        Family::E8,
    ];

    /// The rank of an exceptional family; `None` for the classical series.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Family::G2 => Some(2),
            Family::F4 => Some(4),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::U => "U",
            Family::Sp => "Sp",
            Family::PU => "PU",
            Family::SOOdd => "SO_odd",
            Family::SOEven => "SO_even",
            Family::SpinOdd => "Spin_odd",
            Family::G2 => "G2",
            Family::F4 => "F4",
            Family::E7 => "E7",
            Family::E8 => "E8",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let f = match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "u" | "gl" => Family::U,
            "sp" => Family::Sp,
            "pu" | "pgl" => Family::PU,
            "so" | "so_odd" => Family::SOOdd,
            "so_even" => Family::SOEven,
            "spin" | "spin_odd" => Family::SpinOdd,
            "g2" => Family::G2,
            "f4" => Family::F4,
            "e7" => Family::E7,
            "e8" => Family::E8,
            _ => return Err(Error::Invalid(format!("unknown group family `{s}`"))),
        };
        Ok(f)
    }
}

/// A group by family, rank `ℓ` and prime. For `SO_odd` and `Spin_odd` the
/// group is `SO(2ℓ+1)`/`Spin(2ℓ+1)`; for `SO_even` it is `SO(2ℓ)`; for `PU`
/// the rank is `p − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupDescriptor {
    pub family: Family,
    pub rank: usize,
    pub prime: u64,
}

impl GroupDescriptor {
    pub fn new(family: Family, rank: usize, prime: u64) -> Self {
        GroupDescriptor { family, rank, prime }
    }

    pub fn label(&self) -> String {
        let l = self.rank;
        match self.family {
            Family::U => format!("U({l})"),
            Family::Sp => format!("Sp({l})"),
            Family::PU => format!("PU({})", self.prime),
            Family::SOOdd => format!("SO({})", 2 * l + 1),
            Family::SOEven => format!("SO({})", 2 * l),
            Family::SpinOdd => format!("Spin({})", 2 * l + 1),
            f => f.to_string(),
        }
    }

    /// Parses `SO`, `SO(7)`, `Spin(11)`, `U(3)`, `PU(5)`, `E8` and similar,
    /// with the optional rank and prime flags filling in the rest.
    pub fn parse(group: &str, rank: Option<usize>, prime: Option<u64>) -> Result<Self> {
        let g = group.trim();
        let (head, size) = match g.find('(') {
            Some(i) => {
                let inner =
                    g[i + 1..].strip_suffix(')').ok_or_else(|| Error::Invalid(format!("malformed group `{g}`")))?;
                let n: usize =
                    inner.trim().parse().map_err(|_| Error::Invalid(format!("malformed group size in `{g}`")))?;
                (&g[..i], Some(n))
            }
            None => (g, None),
        };
        let mut family: Family = head.parse()?;
        let mut l = rank;
        let mut p = prime;
        if let Some(n) = size {
            match family {
                Family::SOOdd | Family::SOEven | Family::SpinOdd => {
                    if n % 2 == 1 {
                        if family == Family::SOEven {
                            return Err(Error::Invalid(format!("SO_even needs an even size, got {n}")));
                        }
                        l = Some((n - 1) / 2);
                    } else if family == Family::SpinOdd {
                        return Err(Error::Invalid(format!("only odd spin groups are supported, got Spin({n})")));
                    } else {
                        family = Family::SOEven;
                        l = Some(n / 2);
                    }
                }
                Family::PU => {
                    p = Some(n as u64);
                    l = Some(n.saturating_sub(1));
                }
                _ => l = Some(n),
            }
        }
        let p = match (family, p) {
            (_, Some(p)) => p,
            (Family::SOOdd | Family::SOEven | Family::SpinOdd | Family::G2 | Family::E7, None) => 2,
            (Family::F4, None) => 3,
            _ => return Err(Error::Invalid(format!("a prime is required for {head}"))),
        };
        let l = match (family.fixed_rank(), family, l) {
            (Some(r), _, None) => r,
            (_, Family::PU, None) => (p as usize).saturating_sub(1),
            (_, _, Some(l)) => l,
            (None, _, None) => return Err(Error::Invalid(format!("a rank is required for {head}"))),
        };
        Ok(GroupDescriptor::new(family, l, p))
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at p={}", self.label(), self.prime)
    }
}

/// The eleven catalog entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseId {
    UnitarySymplectic,
    ProjectiveUnitary,
    SpecialOrthogonalOdd,
    SpecialOrthogonalEven,
    SpinOdd,
    G2,
    F4,
    E8AtFive,
    E8AtThree,
    E8AtTwo,
    E7AtTwo,
}

impl CaseId {
    pub const ALL: [CaseId; 11] = [
        CaseId::UnitarySymplectic,
        CaseId::ProjectiveUnitary,
        CaseId::SpecialOrthogonalOdd,
        CaseId::SpecialOrthogonalEven,
        CaseId::SpinOdd,
        CaseId::G2,
        CaseId::F4,
        CaseId::E8AtFive,
        CaseId::E8AtThree,
        CaseId::E8AtTwo,
        CaseId::E7AtTwo,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::UnitarySymplectic => "U(l), Sp(l) at any p",
            CaseId::ProjectiveUnitary => "PU(p) at p",
            CaseId::SpecialOrthogonalOdd => "SO(2l+1) at 2",
            CaseId::SpecialOrthogonalEven => "SO(2l) at 2",
            CaseId::SpinOdd => "Spin(2l+1) at 2",
            CaseId::G2 => "G2 at 2",
            CaseId::F4 => "F4 at 3",
            CaseId::E8AtFive => "E8 at 5",
            CaseId::E8AtThree => "E8 at 3",
            CaseId::E8AtTwo => "E8 at 2",
            CaseId::E7AtTwo => "E7 at 2",
        }
    }

    /// Groups whose polynomial part has a single generator.
    pub fn is_type_one(self) -> bool {
        matches!(self, CaseId::G2 | CaseId::F4 | CaseId::E8AtFive)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An even generator of `P(y)` with truncation height `p^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YGen {
    pub name: String,
    pub alias: Option<String>,
    pub topdeg: u32,
    pub truncation: u32,
}

/// An odd exterior generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XGen {
    pub name: String,
    pub alias: Option<String>,
    pub topdeg: u32,
}

/// A cohomology operation: Bockstein, Steenrod square, reduced power or
/// Milnor primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operation {
    Bockstein,
    Sq(u32),
    P(u32),
    Q(u32),
}

impl Operation {
    pub fn topdeg(self, p: u64) -> u32 {
        match self {
            Operation::Bockstein => 1,
            Operation::Sq(k) => k,
            Operation::P(k) => 2 * k * (p as u32 - 1),
            Operation::Q(n) => 2 * (p as u32).pow(n) - 1,
        }
    }

    /// Whether the operation is the primitive `Q_0` at this prime.
    pub fn is_q0(self, p: u64) -> bool {
        matches!(self, Operation::Bockstein | Operation::Q(0)) || (p == 2 && self == Operation::Sq(1))
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Bockstein => write!(f, "beta"),
            Operation::Sq(k) => write!(f, "Sq{k}"),
            Operation::P(k) => write!(f, "P{k}"),
            Operation::Q(n) => write!(f, "Q{n}"),
        }
    }
}

impl FromStr for Operation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "beta" || lower == "bockstein" || t == "β" {
            return Ok(Operation::Bockstein);
        }
        let bad = || Error::Invalid(format!("unknown operation `{s}`; use beta, SqK, PK or QN"));
        let num = |rest: &str| rest.trim_start_matches(['^', '_']).parse::<u32>().map_err(|_| bad());
        if let Some(r) = lower.strip_prefix("sq") {
            Ok(Operation::Sq(num(r)?))
        } else if let Some(r) = lower.strip_prefix('p') {
            Ok(Operation::P(num(r)?))
        } else if let Some(r) = lower.strip_prefix('q') {
            Ok(Operation::Q(num(r)?))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Operation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for GeneratorTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let json = self.to_json();
        let mut st = s.serialize_struct("GeneratorTerm", 2)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &json.terms)?;
        st.end()
    }
}

impl Serialize for GenMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `op(source) = target`, with an optional note on how the entry was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperationRule {
    pub op: Operation,
    pub source: String,
    pub target: GeneratorTerm,
    pub note: Option<String>,
}

/// `p^s · body`, the p-adic leading part of a transgression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTerm {
    pub p_exponent: u32,
    pub body: GeneratorTerm,
}

/// A `v_n · body` summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VTerm {
    pub level: u32,
    pub body: GeneratorTerm,
}

/// How a transgression is realized as a polynomial in `S(t)`, when known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum StForm {
    /// `c_i = σ_i(t)`.
    Chern(usize),
    /// `p_i = σ_i(t²)`.
    Pontryagin(usize),
    /// `c'_i`, the pullback of `σ_i(t)` to the spin torus, where the `t_j` sum to 0 mod 2.
    SpinChern(usize),
    /// `c_1^k`.
    C1Power(u32),
    /// Integer terms `(exponent vector, coefficient)`.
    Explicit(Vec<(Vec<u32>, i64)>),
}

/// The transgression `b_i` of the `i`-th exterior generator, stored modulo
/// `I_∞` and higher filtration: a p-adic leading part plus `v_n` summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransgressionEntry {
    pub index: usize,
    pub name: String,
    pub x_gen: String,
    pub topdeg: u32,
    pub leading: Option<LeadingTerm>,
    pub v_terms: Vec<VTerm>,
    pub st_form: Option<StForm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Image {
    Zero,
    /// `v_level · body`; level 0 stands for multiplication by `p`.
    Vn {
        level: u32,
        body: GeneratorTerm,
    },
    /// The element of the same name over the extension.
    Same {
        name: String,
        topdeg: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionSource {
    pub name: String,
    pub topdeg: u32,
}

/// `CH*(R_n)/p ⊗ ⊗_i Z/p[y_i]/(y_i^{h_i})`, the module the images live in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionTarget {
    pub rost_n: u32,
    pub rost_p: u64,
    /// The generator `y` with `|y| = 2(p^n − 1)/(p − 1)` of the Rost factor.
    pub rost_gen: String,
    pub rational: Vec<(Gen, u32)>,
}

/// A restriction map to a field extension, entry by entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionTable {
    pub name: String,
    pub description: String,
    pub sources: Vec<RestrictionSource>,
    pub images: Vec<(String, Image)>,
    /// Names in the image, the unit included.
    pub expected_image_basis: Vec<String>,
    pub target: Option<RestrictionTarget>,
}

/// A product of transgressions whose leading part is `p^s · body`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessAnnotation {
    pub indices: Vec<usize>,
    pub p_exponent: u32,
    pub body: GeneratorTerm,
}

/// `coefficient · p^s · v^e · y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpTermSpec {
    pub coefficient: i64,
    pub p_exponent: u32,
    /// `(level, exponent)` pairs with level ≥ 1.
    pub v: Vec<(u32, u32)>,
    pub y: GenMonomial,
}

/// A product of transgressions computed with its `v_n` summands.
/// With `exact`, the listed terms are the whole product; otherwise they
/// are the terms supported on the listed y-monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpAnnotation {
    pub indices: Vec<usize>,
    pub terms: Vec<BpTermSpec>,
    pub exact: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RostKind {
    Exact,
    SurjectionTarget,
    ModTorsion,
}

impl fmt::Display for RostKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RostKind::Exact => "exact",
            RostKind::SurjectionTarget => "surjection-target",
            RostKind::ModTorsion => "mod-torsion",
        };
        write!(f, "{s}")
    }
}

/// A basis of the Rost part, as products of transgressions (empty = the unit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RostPart {
    pub kind: RostKind,
    pub products: Vec<Vec<usize>>,
    pub provenance: String,
}

/// How often transgression `index` may occur in the counting argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityLimit {
    pub index: usize,
    pub min: u32,
    pub max: u32,
    pub reason: String,
}

/// Data for the counting argument: only transgressions with a p-adic
/// leading part take part, subject to these multiplicity limits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SharpData {
    pub limits: Vec<MultiplicityLimit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinData {
    /// `ℓ − 1` when `ℓ` is a power of two, otherwise `ℓ`.
    pub l_bar: usize,
    pub torsion_elements: Vec<String>,
    /// Product annotations that must be nonzero in `CH*(X)/2`.
    pub nonzero_products: Vec<Vec<usize>>,
}

/// Which full presentation of `CH*(X)/p` exists for the entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PresentationKind {
    /// `S(t)/(p, b_1, .., b_ℓ)` (no torsion).
    Transgressions,
    /// `S(t)/(p, b_i b_j | i, j ≤ count, b_k | k > count)`.
    PairwiseProducts {
        count: usize,
        explicit: bool,
    },
    /// `S(t)/(p, b_1², .., b_m², b_{m+1}, ..)`.
    Squares {
        count: usize,
    },
    Unavailable {
        reason: String,
    },
}

/// Milnor `Q_n` on exterior generators given by a closed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QRule {
    /// `Q_n x_{2i−1} = y_{2i+2^{n+1}−2}` inside `SO(m)`.
    Orthogonal { m: usize },
    /// The orthogonal rule followed by the quotient by `x_1, y_2`:
    /// classes `y_{2^j}` vanish.
    Spin { l: usize },
}

/// `H*(G; Z/p) ≅ P(y)/p ⊗ Λ(x_1, .., x_ℓ)` with everything attached to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyModel {
    pub case: CaseId,
    pub descriptor: GroupDescriptor,
    pub label: String,
    pub dim: u32,
    pub y_gens: Vec<YGen>,
    pub x_gens: Vec<XGen>,
    pub op_table: Vec<OperationRule>,
    pub q_rule: Option<QRule>,
    pub transgression: Vec<TransgressionEntry>,
    pub torsion_index_p: Option<u64>,
    pub j_invariant: Vec<u32>,
    pub witnesses: Vec<WitnessAnnotation>,
    pub bp_products: Vec<BpAnnotation>,
    pub sharp: Option<SharpData>,
    pub rost_parts: Vec<RostPart>,
    pub presentation: PresentationKind,
    pub restrictions: Vec<RestrictionTable>,
    pub spin: Option<SpinData>,
    pub notes: Vec<String>,
}

impl CohomologyModel {
    pub fn prime(&self) -> u64 {
        self.descriptor.prime
    }

    pub fn rank(&self) -> usize {
        self.descriptor.rank
    }

    /// Resolves a generator by name or alias.
    pub fn gen(&self, name: &str) -> Option<Gen> {
        let n = name.trim();
        self.y_gens
            .iter()
            .find(|y| y.name == n || y.alias.as_deref() == Some(n))
            .map(|y| Gen::new(y.name.clone(), y.topdeg))
            .or_else(|| {
                self.x_gens
                    .iter()
                    .find(|x| x.name == n || x.alias.as_deref() == Some(n))
                    .map(|x| Gen::new(x.name.clone(), x.topdeg))
            })
    }

    pub fn is_y(&self, name: &str) -> bool {
        self.y_gens.iter().any(|y| y.name == name)
    }

    pub fn algebra(&self) -> ModelAlgebra {
        ModelAlgebra::new(self.prime(), self.y_gens.iter().map(|y| (y.name.clone(), y.truncation)))
    }

    /// `Π y_i^{h_i − 1}`, the top monomial of `P(y)`.
    pub fn y_top(&self) -> GenMonomial {
        GenMonomial::from_factors(self.y_gens.iter().map(|y| (Gen::new(y.name.clone(), y.topdeg), y.truncation - 1)))
    }

    /// Poincaré series of `P(y) ⊗ Λ(x)` up to `dim G`.
    pub fn poincare_series(&self) -> HilbertSeries {
        let x: Vec<u32> = self.x_gens.iter().map(|x| x.topdeg).collect();
        self.y_gens.iter().fold(HilbertSeries::exterior(&x, self.dim), |acc, y| {
            acc.cauchy(&HilbertSeries::truncated(y.topdeg, y.truncation as u64, self.dim))
        })
    }

    pub fn y_top_degree(&self) -> u32 {
        self.y_top().topdeg()
    }

    pub fn entry(&self, index: usize) -> Option<&TransgressionEntry> {
        self.transgression.iter().find(|e| e.index == index)
    }

    pub fn entry_named(&self, name: &str) -> Option<&TransgressionEntry> {
        self.transgression.iter().find(|e| e.name == name)
    }

    /// Name of a product of transgressions, e.g. `b_5^3b_6`.
    pub fn product_name(&self, indices: &[usize]) -> String {
        if indices.is_empty() {
            return "1".to_string();
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        let mut out = String::new();
        let mut i = 0;
        while i < sorted.len() {
            let j = sorted[i..].iter().take_while(|&&k| k == sorted[i]).count();
            let name = self.entry(sorted[i]).map_or_else(|| format!("b_{}", sorted[i]), |e| e.name.clone());
            match (j, name.contains('^')) {
                (1, _) => out.push_str(&name),
                (_, false) => out.push_str(&format!("{name}^{j}")),
                (_, true) => out.push_str(&format!("({name})^{j}")),
            }
            i += j;
        }
        out
    }

    pub fn product_degree(&self, indices: &[usize]) -> Option<u32> {
        indices.iter().map(|&i| self.entry(i).map(|e| e.topdeg)).sum()
    }

    pub fn rost_part(&self, kind: RostKind) -> Option<&RostPart> {
        self.rost_parts.iter().find(|r| r.kind == kind)
    }

    /// Parses `2*y1*y3 + y1^4 - x2` over the model's generators.
    pub fn parse_term(&self, s: &str) -> Result<GeneratorTerm> {
        let p = self.prime();
        let mut out = GeneratorTerm::zero(p);
        let src = s.replace(' ', "");
        if src.is_empty() || src == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(i64, String)> = Vec::new();
        let mut sign = 1;
        let mut cur = String::new();
        for ch in src.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                pieces.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '-' {
                sign = -sign;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            pieces.push((sign, cur));
        }
        for (sign, piece) in pieces {
            let mut coef: i64 = sign;
            let mut factors = Vec::new();
            for f in piece.split('*') {
                if let Ok(n) = f.parse::<i64>() {
                    coef *= n;
                    continue;
                }
                let (name, exp) = match f.rsplit_once('^') {
                    Some((n, e)) => {
                        (n, e.parse::<u32>().map_err(|_| Error::Invalid(format!("bad exponent in `{f}`")))?)
                    }
                    None => (f, 1),
                };
                let g = self
                    .gen(name)
                    .ok_or_else(|| Error::Invalid(format!("unknown generator `{name}` for {}", self.label)))?;
                factors.push((g, exp));
            }
            let m = GenMonomial::from_factors(factors);
            let mut t = GeneratorTerm::monomial(p, m, coef);
            t = self.algebra().reduce(&t);
            out = out.add(&t);
        }
        Ok(out)
    }
}
