use crate::algebra::PrimeField;
use crate::steenrod::term::Gen;
use crate::{Error, Result};

use super::types::*;

/// Largest rank accepted for the infinite families. Exact Rost bases of
/// `SO(2ℓ+1)` have `2^ℓ` elements, so the cap keeps everything desk-sized.
pub const MAX_CLASSICAL_RANK: usize = 12;

pub fn supported_cases() -> String {
    format!(
        "U(l), Sp(l) at any prime; PU(p) at p; SO(2l+1), SO(2l), Spin(2l+1) at p=2 (l <= {MAX_CLASSICAL_RANK}); \
         G2 at 2; F4 at 3; E8 at 2, 3, 5; E7 at 2"
    )
}

fn unsupported(d: &GroupDescriptor) -> Error {
    Error::Unsupported { case: d.to_string(), supported: supported_cases() }
}

/// The catalog entry for `d`, or an unsupported-case error.
pub fn lookup(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let l = d.rank;
    let p = d.prime;
    let classical = (1..=MAX_CLASSICAL_RANK).contains(&l);
    match (d.family, p) {
        (Family::U | Family::Sp, _) if classical => {
            PrimeField::new(p)?;
            unitary_symplectic(d)
        }
        (Family::PU, _) if classical && l + 1 == p as usize => {
            PrimeField::new(p)?;
            projective_unitary(d)
        }
        (Family::SOOdd, 2) if classical => so_odd(d),
        (Family::SOEven, 2) if classical && l >= 2 => so_even(d),
        (Family::SpinOdd, 2) if classical && l >= 3 => spin_odd(d),
        (Family::G2, 2) if l == 2 => type_one(d, CaseId::G2),
        (Family::F4, 3) if l == 4 => type_one(d, CaseId::F4),
        (Family::E8, 5) if l == 8 => type_one(d, CaseId::E8AtFive),
        (Family::E8, 3) if l == 8 => e8_at_three(d),
        (Family::E8, 2) if l == 8 => e8_at_two(d),
        (Family::E7, 2) if l == 7 => e7_at_two(d),
        _ => Err(unsupported(d)),
    }
}

fn ygen(name: &str, alias: Option<&str>, topdeg: u32, truncation: u32) -> YGen {
    YGen { name: name.into(), alias: alias.map(Into::into), topdeg, truncation }
}

fn xgen(name: &str, alias: Option<&str>, topdeg: u32) -> XGen {
    XGen { name: name.into(), alias: alias.map(Into::into), topdeg }
}

fn skeleton(case: CaseId, d: &GroupDescriptor, dim: u32, y_gens: Vec<YGen>, x_gens: Vec<XGen>) -> CohomologyModel {
    CohomologyModel {
        case,
        descriptor: *d,
        label: d.label(),
        dim,
        y_gens,
        x_gens,
        op_table: Vec::new(),
        q_rule: None,
        transgression: Vec::new(),
        torsion_index_p: None,
        j_invariant: Vec::new(),
        witnesses: Vec::new(),
        bp_products: Vec::new(),
        sharp: None,
        rost_parts: Vec::new(),
        presentation: PresentationKind::Unavailable { reason: String::new() },
        restrictions: Vec::new(),
        spin: None,
        notes: Vec::new(),
    }
}

/// `r` with `truncation = p^r`, the versal J-invariant.
fn j_of(m: &CohomologyModel) -> Vec<u32> {
    let p = m.prime() as u32;
    m.y_gens
        .iter()
        .map(|y| {
            let (mut h, mut r) = (y.truncation, 0);
            while h > 1 && h % p == 0 {
                h /= p;
                r += 1;
            }
            r
        })
        .collect()
}

struct Entry<'a> {
    name: String,
    x: &'a str,
    leading: Option<(u32, &'a str)>,
    v: Vec<(u32, String)>,
    st: Option<StForm>,
}

fn entry<'a>(name: impl Into<String>, x: &'a str) -> Entry<'a> {
    Entry { name: name.into(), x, leading: None, v: Vec::new(), st: None }
}

impl<'a> Entry<'a> {
    fn lead(mut self, s: u32, body: &'a str) -> Self {
        self.leading = Some((s, body));
        self
    }

    fn v(mut self, n: u32, body: impl Into<String>) -> Self {
        self.v.push((n, body.into()));
        self
    }

    fn st(mut self, st: StForm) -> Self {
        self.st = Some(st);
        self
    }
}

fn push_entries(m: &mut CohomologyModel, entries: Vec<Entry<'_>>) -> Result<()> {
    for (k, e) in entries.into_iter().enumerate() {
        let x = m
            .x_gens
            .iter()
            .find(|g| g.name == e.x)
            .ok_or_else(|| Error::Inconsistent(format!("{}: no generator {}", m.label, e.x)))?;
        let topdeg = x.topdeg + 1;
        let x_gen = x.name.clone();
        let leading = match e.leading {
            Some((s, body)) => Some(LeadingTerm { p_exponent: s, body: m.parse_term(body)? }),
            None => None,
        };
        let v_terms =
            e.v.iter()
                .map(|(n, body)| Ok(VTerm { level: *n, body: m.parse_term(body)? }))
                .collect::<Result<Vec<_>>>()?;
        m.transgression.push(TransgressionEntry {
            index: k + 1,
            name: e.name,
            x_gen,
            topdeg,
            leading,
            v_terms,
            st_form: e.st,
        });
    }
    Ok(())
}

fn push_rule(m: &mut CohomologyModel, op: Operation, source: &str, target: &str, note: Option<&str>) -> Result<()> {
    let target = m.parse_term(target)?;
    let source = m.gen(source).ok_or_else(|| Error::Inconsistent(format!("{}: no generator {source}", m.label)))?.name;
    m.op_table.push(OperationRule { op, source, target, note: note.map(Into::into) });
    Ok(())
}

fn witness(m: &CohomologyModel, indices: &[usize], s: u32, body: &str) -> Result<WitnessAnnotation> {
    Ok(WitnessAnnotation { indices: indices.to_vec(), p_exponent: s, body: m.parse_term(body)? })
}

fn bp_term(m: &CohomologyModel, coefficient: i64, s: u32, v: &[(u32, u32)], y: &str) -> Result<BpTermSpec> {
    let t = m.parse_term(y)?;
    let mono = t
        .terms()
        .next()
        .map(|(mono, _)| mono.clone())
        .filter(|_| t.num_terms() == 1)
        .ok_or_else(|| Error::Inconsistent(format!("{}: `{y}` is not a monomial", m.label)))?;
    Ok(BpTermSpec { coefficient, p_exponent: s, v: v.to_vec(), y: mono })
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> =
        (0u64..1 << n).map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect()).collect();
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn singles(indices: impl IntoIterator<Item = usize>) -> Vec<Vec<usize>> {
    std::iter::once(Vec::new()).chain(indices.into_iter().map(|i| vec![i])).collect()
}

fn vn(m: &CohomologyModel, level: u32, body: &str) -> Result<Image> {
    Ok(Image::Vn { level, body: m.parse_term(body)? })
}

fn ratgen(m: &CohomologyModel, name: &str) -> (Gen, u32) {
    let y = m.y_gens.iter().find(|y| y.name == name).expect("rational factor names a y-generator");
    (Gen::new(y.name.clone(), y.topdeg), y.truncation)
}

/// Sources are the model's own transgressions, in index order.
fn table(
    m: &CohomologyModel,
    name: &str,
    description: &str,
    images: Vec<Image>,
    expected: &[&str],
    target: Option<RestrictionTarget>,
) -> RestrictionTable {
    let sources: Vec<RestrictionSource> =
        m.transgression.iter().map(|e| RestrictionSource { name: e.name.clone(), topdeg: e.topdeg }).collect();
    let images: Vec<(String, Image)> = sources.iter().map(|s| s.name.clone()).zip(images).collect();
    let expected_image_basis = expected.iter().map(|s| s.to_string()).collect();
    RestrictionTable {
        name: name.into(),
        description: description.into(),
        sources,
        images,
        expected_image_basis,
        target,
    }
}

const Q_SIGN_NOTE: &str = "Q_n x_(2i-1) = y_(2i+2^(n+1)-2); the printed variant with a minus sign fails the \
                           degree law and the Q_1 = Sq^2 Sq^1 + Sq^1 Sq^2 derivation, so the plus sign is stored";

fn unitary_symplectic(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let l = d.rank;
    let sp = d.family == Family::Sp;
    let degs: Vec<u32> = (1..=l as u32).map(|i| if sp { 4 * i - 1 } else { 2 * i - 1 }).collect();
    let xs = degs.iter().map(|&g| xgen(&format!("x{g}"), None, g)).collect();
    let dim = degs.iter().sum();
    let mut m = skeleton(CaseId::UnitarySymplectic, d, dim, Vec::new(), xs);
    let names: Vec<String> = degs.iter().map(|g| format!("x{g}")).collect();
    let entries = (1..=l)
        .zip(&names)
        .map(|(i, x)| {
            if sp {
                entry(format!("p_{i}"), x).st(StForm::Pontryagin(i))
            } else {
                entry(format!("c_{i}"), x).st(StForm::Chern(i))
            }
        })
        .collect();
    push_entries(&mut m, entries)?;
    m.torsion_index_p = Some(1);
    m.rost_parts.push(RostPart {
        kind: RostKind::Exact,
        products: vec![Vec::new()],
        provenance: "special group: every torsor is split, so the Rost part is a point".into(),
    });
    m.presentation = PresentationKind::Transgressions;
    Ok(m)
}

fn projective_unitary(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let p = d.prime as u32;
    let xs: Vec<XGen> = (1..p).map(|i| xgen(&format!("x{}", 2 * i - 1), None, 2 * i - 1)).collect();
    let names: Vec<String> = xs.iter().map(|x| x.name.clone()).collect();
    let mut m = skeleton(CaseId::ProjectiveUnitary, d, p * p - 1, vec![ygen("y", Some("y2"), 2, p)], xs);
    let bodies: Vec<String> = (1..p).map(|i| format!("y^{i}")).collect();
    let entries = (1..p as usize)
        .map(|i| entry(format!("c_{i}"), &names[i - 1]).lead(1, &bodies[i - 1]).st(StForm::Chern(i)))
        .collect();
    push_entries(&mut m, entries)?;
    m.torsion_index_p = Some(p as u64);
    m.j_invariant = j_of(&m);
    m.witnesses.push(witness(&m, &[p as usize - 1], 1, &format!("y^{}", p - 1))?);
    m.rost_parts.push(RostPart {
        kind: RostKind::Exact,
        products: singles(1..p as usize),
        provenance: "Chern classes c_1..c_(p-1) span the Rost part of PGL_p".into(),
    });
    m.presentation = PresentationKind::PairwiseProducts { count: p as usize - 1, explicit: true };
    m.notes.push("c_i = p*y^i modulo lower terms, so the top class y^(p-1) needs one factor of p".into());
    Ok(m)
}

/// `(n, y_(2m))` summands of the orthogonal transgressions: `m = i + 2^n − 1`.
fn orthogonal_v_terms(i: usize, keep: impl Fn(usize) -> bool) -> Vec<(u32, String)> {
    (1..)
        .map(|n: u32| (n, i + (1usize << n) - 1))
        .take_while(|&(n, _)| n < 20)
        .filter(|&(_, m)| keep(m))
        .map(|(n, m)| (n, format!("y{}", 2 * m)))
        .collect()
}

fn so_odd(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let l = d.rank;
    let ys = (1..=l).map(|i| ygen(&format!("y{}", 2 * i), None, 2 * i as u32, 2)).collect();
    let xs = (1..=l).map(|i| xgen(&format!("x{}", 2 * i - 1), None, 2 * i as u32 - 1)).collect();
    let dim = (2 * l * l + l) as u32;
    let mut m = skeleton(CaseId::SpecialOrthogonalOdd, d, dim, ys, xs);
    let xn: Vec<String> = (1..=l).map(|i| format!("x{}", 2 * i - 1)).collect();
    let yn: Vec<String> = (1..=l).map(|i| format!("y{}", 2 * i)).collect();
    let mut entries = Vec::new();
    for i in 1..=l {
        let mut e = entry(format!("c_{i}"), &xn[i - 1]).lead(1, &yn[i - 1]).st(StForm::Chern(i));
        for (n, body) in orthogonal_v_terms(i, |m| m <= l) {
            e = e.v(n, body);
        }
        entries.push(e);
    }
    push_entries(&mut m, entries)?;
    m.q_rule = Some(QRule::Orthogonal { m: 2 * l + 1 });
    m.torsion_index_p = Some(1 << l);
    m.j_invariant = j_of(&m);
    let all: Vec<usize> = (1..=l).collect();
    let top = m.y_top().to_string();
    m.witnesses.push(witness(&m, &all, l as u32, &top)?);
    m.rost_parts.push(RostPart {
        kind: RostKind::Exact,
        products: subsets(l),
        provenance: "exterior algebra on c_1..c_l: c_i^2 = 0 and the square-free products are independent".into(),
    });
    m.presentation = PresentationKind::Squares { count: l };
    if (l + 1).is_power_of_two() {
        let n = (l + 1).trailing_zeros();
        let top = format!("y{}", 2 * l);
        let images = (1..=l)
            .map(|j| {
                let s = (0..n).find(|&s| j + (1usize << s) - 1 == l);
                match s {
                    Some(s) => vn(&m, s, &top),
                    None => Ok(Image::Zero),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let rational = m.y_gens[..l - 1].iter().map(|y| ratgen(&m, &y.name)).collect();
        // The Rost factor has basis 1, 2y, v_1 y, .., v_(n-1) y; c_j lands on the one of equal degree.
        let expected: Vec<String> = std::iter::once("1".to_string())
            .chain((0..n).rev().map(|s| format!("c_{}", l + 1 - (1usize << s))))
            .collect();
        let expected: Vec<&str> = expected.iter().map(String::as_str).collect();
        let t = table(
            &m,
            "rost-factor",
            "restriction to a field over which y_2..y_(2l-2) become rational: c_j goes to v_s y_(2l) when j = l-(2^s-1)",
            images,
            &expected,
            Some(RestrictionTarget { rost_n: n, rost_p: 2, rost_gen: top, rational }),
        );
        m.restrictions.push(t);
    }
    m.notes.push(Q_SIGN_NOTE.into());
    m.notes.push("y-generators are graded: y_(2i)^2 = y_(4i) in cohomology, and 0 in the associated graded".into());
    Ok(m)
}

fn so_even(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let l = d.rank;
    let ys = (1..l).map(|i| ygen(&format!("y{}", 2 * i), None, 2 * i as u32, 2)).collect();
    let xs = (1..=l).map(|i| xgen(&format!("x{}", 2 * i - 1), None, 2 * i as u32 - 1)).collect();
    let dim = (2 * l * l - l) as u32;
    let mut m = skeleton(CaseId::SpecialOrthogonalEven, d, dim, ys, xs);
    let xn: Vec<String> = (1..=l).map(|i| format!("x{}", 2 * i - 1)).collect();
    let yn: Vec<String> = (1..=l).map(|i| format!("y{}", 2 * i)).collect();
    let mut entries = Vec::new();
    for i in 1..l {
        let mut e = entry(format!("c_{i}"), &xn[i - 1]).lead(1, &yn[i - 1]).st(StForm::Chern(i));
        for (n, body) in orthogonal_v_terms(i, |m| m < l) {
            e = e.v(n, body);
        }
        entries.push(e);
    }
    entries.push(entry(format!("c_{l}"), &xn[l - 1]).st(StForm::Chern(l)));
    push_entries(&mut m, entries)?;
    m.q_rule = Some(QRule::Orthogonal { m: 2 * l });
    m.torsion_index_p = Some(1 << (l - 1));
    m.j_invariant = j_of(&m);
    let all: Vec<usize> = (1..l).collect();
    let top = m.y_top().to_string();
    m.witnesses.push(witness(&m, &all, l as u32 - 1, &top)?);
    m.rost_parts.push(RostPart {
        kind: RostKind::Exact,
        products: subsets(l - 1),
        provenance: "exterior algebra on c_1..c_(l-1); c_l is the mod-2 Euler class and dies".into(),
    });
    m.presentation = PresentationKind::Squares { count: l - 1 };
    m.notes.push(Q_SIGN_NOTE.into());
    m.notes.push("the last transgression is the Euler class t_1...t_l, equal to c_l mod 2".into());
    Ok(m)
}

fn spin_odd(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let l = d.rank;
    let t = usize::BITS - 1 - l.leading_zeros();
    let pow2 = |i: usize| i.is_power_of_two();
    let has_y = |i: usize| (3..=l).contains(&i) && !pow2(i);
    let ys: Vec<YGen> =
        (3..=l).filter(|&i| has_y(i)).map(|i| ygen(&format!("y{}", 2 * i), None, 2 * i as u32, 2)).collect();
    let zdeg = (1u32 << (t + 2)) - 1;
    let zname = format!("z{zdeg}");
    let mut xs: Vec<XGen> = (2..=l).map(|i| xgen(&format!("x{}", 2 * i - 1), None, 2 * i as u32 - 1)).collect();
    xs.push(xgen(&zname, None, zdeg));
    let dim = (2 * l * l + l) as u32;
    let mut m = skeleton(CaseId::SpinOdd, d, dim, ys, xs);

    let xn: Vec<String> = (0..=l).map(|i| format!("x{}", (2 * i).saturating_sub(1))).collect();
    let yn: Vec<String> = (0..=l).map(|i| format!("y{}", 2 * i)).collect();
    let mut entries = Vec::new();
    for i in 2..=l {
        let mut e = entry(format!("c'_{i}"), &xn[i]).st(StForm::SpinChern(i));
        if has_y(i) {
            e = e.lead(1, &yn[i]);
        }
        for (n, body) in orthogonal_v_terms(i, has_y) {
            e = e.v(n, body);
        }
        entries.push(e);
    }
    let pair_sum = |s: usize| -> String {
        let parts: Vec<String> = (1..=s / 2)
            .filter(|&i| i < s - i && has_y(i) && has_y(s - i))
            .map(|i| format!("y{}*y{}", 2 * i, 2 * (s - i)))
            .collect();
        parts.join(" + ")
    };
    let c1_power = 1u32 << (t + 1);
    let q0_z = pair_sum(c1_power as usize);
    let mut ez = entry(format!("c_1^{c1_power}"), &zname).st(StForm::C1Power(c1_power));
    if !q0_z.is_empty() {
        ez = ez.lead(1, &q0_z);
    }
    for n in 1u32.. {
        let s = c1_power as usize + (1usize << n) - 1;
        if s > 2 * l {
            break;
        }
        let body = pair_sum(s);
        if !body.is_empty() {
            ez = ez.v(n, body);
        }
    }
    entries.push(ez);
    push_entries(&mut m, entries)?;
    let q0_text = if q0_z.is_empty() { "0".to_string() } else { q0_z };
    push_rule(&mut m, Operation::Q(0), &zname, &q0_text, Some("sum of y_(2i) y_(2j) over i+j = 2^(t+1), i<j"))?;
    m.q_rule = Some(QRule::Spin { l });
    m.j_invariant = j_of(&m);

    let l_bar = if pow2(l) { l - 1 } else { l };
    let idx = |i: usize| i - 1;
    match l {
        3 | 4 => {
            m.torsion_index_p = Some(2);
            m.witnesses.push(witness(&m, &[idx(3)], 1, "y6")?);
        }
        5 => {
            m.torsion_index_p = Some(2);
            m.witnesses.push(witness(&m, &[l], 1, "y6*y10")?);
        }
        8 => {
            m.torsion_index_p = Some(16);
            let top = m.y_top().to_string();
            m.witnesses.push(witness(&m, &[idx(3), idx(5), idx(6), idx(7)], 4, &top)?);
            m.bp_products.push(BpAnnotation {
                indices: vec![idx(3), idx(5), idx(6), idx(7)],
                terms: vec![bp_term(&m, 1, 4, &[], &top)?],
                exact: true,
            });
            m.bp_products.push(BpAnnotation {
                indices: vec![idx(3), idx(4), idx(6), idx(7)],
                terms: vec![bp_term(&m, 1, 3, &[(1, 1)], &top)?],
                exact: true,
            });
        }
        _ => m.notes.push("torsion index not determined by the witness and counting arguments".into()),
    }
    let torsion_elements =
        (1..).map(|j| 1usize << j).take_while(|&k| k <= l).map(|k| format!("c'_{k} - 2c_1^{k}")).collect();
    let nonzero_products = if l == 8 {
        vec![vec![idx(3), idx(5), idx(6), idx(7)], vec![idx(3), idx(4), idx(6), idx(7)]]
    } else {
        Vec::new()
    };
    m.spin = Some(SpinData { l_bar, torsion_elements, nonzero_products });

    let (kind, products, provenance) = match l {
        3 | 4 => (RostKind::Exact, singles([idx(2), idx(3)]), "type (I) at p=2: basis 1, c'_2, c'_3"),
        5 => (
            RostKind::SurjectionTarget,
            vec![vec![], vec![idx(2)], vec![idx(3)], vec![idx(4)], vec![idx(5)], vec![idx(2), idx(4)], vec![l]],
            "surjects onto 1, c'_2, c'_3, c'_4, c'_5, c'_2 c'_4, c_1^8",
        ),
        _ => (RostKind::SurjectionTarget, singles((2..=l_bar).map(idx)), "surjects onto 1, c'_2, .., c'_(l-bar)"),
    };
    m.rost_parts.push(RostPart { kind, products, provenance: provenance.into() });
    m.presentation = match l {
        3 => PresentationKind::PairwiseProducts { count: 2, explicit: true },
        4 => PresentationKind::PairwiseProducts { count: 2, explicit: false },
        _ => PresentationKind::Unavailable {
            reason: "only a surjection onto a basis of the Rost part is known; its ring structure is not determined"
                .into(),
        },
    };
    m.notes
        .push("Q_n(z) sums y_(2i) y_(2j) over i+j = 2^(t+1)+2^n-1; this is the index forced by the degree law".into());
    m.notes.push("c'_i = sigma_i(c_1 + t_1, .., c_1 + t_l) and y_(2^j) lies in S(t')".into());
    if l == 5 {
        m.notes.push("the surjection onto the listed basis is known to be an isomorphism".into());
    }
    Ok(m)
}

fn type_one(d: &GroupDescriptor, case: CaseId) -> Result<CohomologyModel> {
    let p = d.prime as u32;
    let (ydeg, xdegs, dim): (u32, &[u32], u32) = match case {
        CaseId::G2 => (6, &[3, 5], 14),
        CaseId::F4 => (8, &[3, 7, 11, 15], 52),
        _ => (12, &[3, 11, 15, 23, 27, 35, 39, 47], 248),
    };
    let yalias = format!("y{ydeg}");
    let xs: Vec<XGen> =
        xdegs.iter().enumerate().map(|(k, &g)| xgen(&format!("x{}", k + 1), Some(&format!("z{g}")), g)).collect();
    let mut m = skeleton(case, d, dim, vec![ygen("y", Some(&yalias), ydeg, p)], xs);
    let xn: Vec<String> = (1..=xdegs.len()).map(|k| format!("x{k}")).collect();
    let pw: Vec<String> = (0..=p).map(|i| format!("y^{i}")).collect();
    let mut entries = Vec::new();
    for k in 1..=xdegs.len() {
        let mut e = entry(format!("b_{k}"), &xn[k - 1]);
        let i = k.div_ceil(2);
        if k % 2 == 0 {
            e = e.lead(1, &pw[i]);
        } else {
            e = e.v(1, pw[i].clone());
        }
        e.st = match case {
            CaseId::G2 if k == 1 => Some(StForm::Explicit(vec![(vec![2, 0], 1), (vec![1, 1], 1), (vec![0, 2], 1)])),
            CaseId::G2 => Some(StForm::Explicit(vec![(vec![0, 3], 1)])),
            CaseId::F4 => Some(StForm::Pontryagin(k)),
            _ => None,
        };
        entries.push(e);
    }
    push_entries(&mut m, entries)?;
    let (beta, p1) =
        if p == 2 { (Operation::Sq(1), Operation::Sq(2)) } else { (Operation::Bockstein, Operation::P(1)) };
    for i in 1..p as usize {
        push_rule(&mut m, beta, &xn[2 * i - 1], &pw[i], None)?;
        push_rule(&mut m, p1, &xn[2 * i - 2], &xn[2 * i - 1], None)?;
        push_rule(&mut m, Operation::Q(1), &xn[2 * i - 2], &pw[i], Some("Q_1 = P^1 beta - beta P^1"))?;
    }
    m.torsion_index_p = Some(p as u64);
    m.j_invariant = j_of(&m);
    let top = 2 * p as usize - 2;
    m.witnesses.push(witness(&m, &[top], 1, &pw[p as usize - 1])?);
    m.rost_parts.push(RostPart {
        kind: RostKind::Exact,
        products: singles(1..=top),
        provenance: "Rost motive R_2: basis 1, b_1, .., b_(2p-2)".into(),
    });
    m.presentation = PresentationKind::PairwiseProducts { count: top, explicit: case != CaseId::E8AtFive };
    if case == CaseId::F4 {
        m.notes.push("b_i = p_i in CH*(X)/3, pulled back along Spin(9) in F4".into());
    }
    Ok(m)
}

const E8_TWO_Z: [(u32, &str); 8] =
    [(3, "z3"), (5, "z5"), (9, "z9"), (17, "z17"), (15, "z15"), (23, "z23"), (27, "z27"), (29, "z29")];

fn e8_at_three(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let zs = [3, 7, 15, 19, 27, 35, 39, 47];
    let xs = zs.iter().enumerate().map(|(k, &g)| xgen(&format!("x{}", k + 1), Some(&format!("z{g}")), g)).collect();
    let ys = vec![ygen("y", Some("y8"), 8, 3), ygen("y'", Some("y20"), 20, 3)];
    let mut m = skeleton(CaseId::E8AtThree, d, 248, ys, xs);
    let b = Operation::Bockstein;
    let rules: [(Operation, &str, &str); 15] = [
        (b, "x2", "y"),
        (b, "x3", "y^2"),
        (b, "x4", "y'"),
        (b, "x5", "y*y'"),
        (b, "x6", "y^2*y'"),
        (b, "x7", "y'^2"),
        (b, "x8", "y*y'^2"),
        (Operation::P(1), "x1", "x2"),
        (Operation::P(1), "x3", "x4"),
        (Operation::P(1), "x6", "x7"),
        (Operation::P(3), "x2", "x4"),
        (Operation::P(3), "x3", "x5"),
        (Operation::P(3), "x5", "-x7"),
        (Operation::P(3), "x6", "x8"),
        (Operation::P(3), "y", "y'"),
    ];
    for (op, s, t) in rules {
        push_rule(&mut m, op, s, t, None)?;
    }
    push_rule(&mut m, Operation::Q(1), "x3", "y'", Some("up to a unit"))?;
    let entries = vec![
        entry("b_1", "x1").v(1, "y").v(2, "y'"),
        entry("b_2", "x2").lead(1, "y"),
        entry("b_3", "x3").lead(1, "y^2").v(1, "y'"),
        entry("b_4", "x4").lead(1, "y'"),
        entry("b_5", "x5").lead(1, "y*y'"),
        entry("b_6", "x6").lead(1, "y^2*y'").v(1, "y'^2"),
        entry("b_7", "x7").lead(1, "y'^2"),
        entry("b_8", "x8").lead(1, "y*y'^2"),
    ];
    push_entries(&mut m, entries)?;
    m.torsion_index_p = Some(9);
    m.j_invariant = j_of(&m);
    m.witnesses.push(witness(&m, &[2, 8], 2, "y^2*y'^2")?);
    let top = "y^2*y'^2";
    m.bp_products.push(BpAnnotation { indices: vec![2, 8], terms: vec![bp_term(&m, 1, 2, &[], top)?], exact: true });
    m.bp_products.push(BpAnnotation {
        indices: vec![1, 8],
        terms: vec![bp_term(&m, 1, 1, &[(1, 1)], top)?],
        exact: true,
    });
    m.bp_products.push(BpAnnotation {
        indices: vec![1, 6],
        terms: vec![bp_term(&m, 1, 1, &[(2, 1)], top)?],
        exact: false,
    });
    let mut surj = singles(1..=8);
    surj.extend([vec![1, 6], vec![1, 8], vec![2, 8]]);
    m.rost_parts.push(RostPart {
        kind: RostKind::SurjectionTarget,
        products: surj,
        provenance: "9(yy')^2, 3v_1(yy')^2, 3v_2(yy')^2 are module generators of the restriction image".into(),
    });
    let mut modt = singles(2..=8);
    modt.push(vec![2, 8]);
    m.rost_parts.push(RostPart {
        kind: RostKind::ModTorsion,
        products: modt,
        provenance: "modulo 3-torsion: b_1, b_1 b_6, b_1 b_8 are torsion".into(),
    });
    let images = vec![
        vn(&m, 1, "y")?,
        vn(&m, 0, "y")?,
        vn(&m, 0, "y^2")?,
        Image::Zero,
        vn(&m, 0, "y*y'")?,
        vn(&m, 0, "y^2*y'")?,
        Image::Zero,
        vn(&m, 0, "y*y'^2")?,
    ];
    let rational = vec![ratgen(&m, "y'")];
    let t = table(
        &m,
        "y'-rational",
        "restriction to a field over which y' is rational: the image is spanned by 1, b_1, b_2, b_3, b_5, b_6, b_8",
        images,
        &["1", "b_1", "b_2", "b_3", "b_5", "b_6", "b_8"],
        Some(RestrictionTarget { rost_n: 2, rost_p: 3, rost_gen: "y".into(), rational }),
    );
    m.restrictions.push(t);
    m.presentation = PresentationKind::Unavailable {
        reason: "only a surjection onto a basis of the Rost part is known; its ring structure is not determined".into(),
    };
    m.notes.push("every y^i y'^j except (yy')^2 is a Bockstein image; (yy')^2 is absent from the table".into());
    m.notes.push("b_(i+3j+1) = 3 y^i y'^j for i = 0, 1, with a v_1 y'^(j+1) correction when i = 2".into());
    Ok(m)
}

fn e8_two_family_ops(m: &mut CohomologyModel, e7: bool) -> Result<()> {
    let sq = |k| Operation::Sq(k);
    let note = if e7 { Some("restricted from E8; y_4 and x_8 vanish") } else { None };
    let mut rules: Vec<(Operation, &str, &str)> = vec![
        (sq(2), "x1", "x2"),
        (sq(4), "x2", "x3"),
        (sq(8), "x3", "x4"),
        (sq(8), "x5", "x6"),
        (sq(4), "x6", "x7"),
        (sq(2), "x5", "x4"),
        (sq(1), "x2", "y1"),
        (sq(1), "x3", "y2"),
        (sq(1), "x4", "y3"),
        (sq(1), "x5", "y1*y2"),
        (sq(1), "x6", "y1*y3 + y1^4"),
        (sq(1), "x7", "y2*y3"),
    ];
    if !e7 {
        rules.push((sq(2), "x7", "x8"));
        rules.push((sq(1), "x8", "y4"));
    }
    for (op, s, t) in rules {
        push_rule(m, op, s, t, note)?;
    }
    Ok(())
}

fn e8_at_two(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let xs = E8_TWO_Z.iter().enumerate().map(|(k, &(g, z))| xgen(&format!("x{}", k + 1), Some(z), g)).collect();
    let ys = vec![
        ygen("y1", Some("y6"), 6, 8),
        ygen("y2", Some("y10"), 10, 4),
        ygen("y3", Some("y18"), 18, 2),
        ygen("y4", Some("y30"), 30, 2),
    ];
    let mut m = skeleton(CaseId::E8AtTwo, d, 248, ys, xs);
    e8_two_family_ops(&mut m, false)?;
    let entries = vec![
        entry("b_1", "x1").v(1, "y1").v(2, "y2").v(3, "y3"),
        entry("b_2", "x2").lead(1, "y1").v(2, "y1^2").v(3, "y2^2"),
        entry("b_3", "x3").lead(1, "y2").v(1, "y1^2").v(3, "y1^4"),
        entry("b_4", "x4").lead(1, "y3").v(1, "y2^2"),
        entry("b_5", "x5").lead(1, "y1*y2").v(1, "y3").v(3, "y4"),
        entry("b_6", "x6").lead(1, "y1*y3 + y1^4"),
        entry("b_7", "x7").lead(1, "y2*y3").v(1, "y4"),
        entry("b_8", "x8").lead(1, "y4"),
    ];
    push_entries(&mut m, entries)?;
    m.torsion_index_p = Some(64);
    m.j_invariant = j_of(&m);
    m.witnesses.push(witness(&m, &[5, 5, 5, 4, 6, 8], 6, "y1^7*y2^3*y3*y4")?);
    m.sharp = Some(SharpData {
        limits: vec![
            MultiplicityLimit {
                index: 6,
                min: 0,
                max: 1,
                reason: "y_(6)^2 contains y_3^2, which drops filtration".into(),
            },
            MultiplicityLimit {
                index: 8,
                min: 1,
                max: 1,
                reason: "y_4 occurs only in y_(8), so y_(8) is used exactly once".into(),
            },
        ],
    });
    let mut images = vec![Image::Zero; 4];
    for level in (0..4).rev() {
        images.push(vn(&m, level, "y4")?);
    }
    let rational = ["y1", "y2", "y3"].iter().map(|n| ratgen(&m, n)).collect();
    let t = table(
        &m,
        "rost-r4",
        "restriction to a field over which y_1, y_2, y_3 are rational: b_j goes to v_(8-j) y_4 for 5 <= j <= 8",
        images,
        &["1", "b_5", "b_6", "b_7", "b_8"],
        Some(RestrictionTarget { rost_n: 4, rost_p: 2, rost_gen: "y4".into(), rational }),
    );
    m.restrictions.push(t);
    m.rost_parts.push(RostPart {
        kind: RostKind::SurjectionTarget,
        products: singles(1..=8),
        provenance: "surjects onto 1, b_1, .., b_8".into(),
    });
    m.presentation = PresentationKind::Unavailable {
        reason: "only a surjection onto a basis of the Rost part is known; its ring structure is not determined".into(),
    };
    m.notes.push(
        "v-terms of b_5..b_8 are recorded only as far as they are determined; b_6 -> v_2 y_4 is table data".into(),
    );
    Ok(m)
}

fn e7_at_two(d: &GroupDescriptor) -> Result<CohomologyModel> {
    let xs = E8_TWO_Z[..7].iter().enumerate().map(|(k, &(g, z))| xgen(&format!("x{}", k + 1), Some(z), g)).collect();
    let ys = vec![ygen("y1", Some("y6"), 6, 2), ygen("y2", Some("y10"), 10, 2), ygen("y3", Some("y18"), 18, 2)];
    let mut m = skeleton(CaseId::E7AtTwo, d, 133, ys, xs);
    e8_two_family_ops(&mut m, true)?;
    let entries = vec![
        entry("b_1", "x1").v(1, "y1").v(2, "y2").v(3, "y3"),
        entry("b_2", "x2").lead(1, "y1"),
        entry("b_3", "x3").lead(1, "y2"),
        entry("b_4", "x4").lead(1, "y3"),
        entry("b_5", "x5").lead(1, "y1*y2"),
        entry("b_6", "x6").lead(1, "y1*y3"),
        entry("b_7", "x7").lead(1, "y2*y3"),
    ];
    push_entries(&mut m, entries)?;
    m.torsion_index_p = Some(4);
    m.j_invariant = j_of(&m);
    let top = "y1*y2*y3";
    m.witnesses.push(witness(&m, &[2, 7], 2, top)?);
    for (i, level) in [(5, 3), (6, 2), (7, 1)] {
        m.bp_products.push(BpAnnotation {
            indices: vec![1, i],
            terms: vec![bp_term(&m, 1, 1, &[(level, 1)], top)?],
            exact: true,
        });
    }
    m.sharp = Some(SharpData { limits: Vec::new() });
    let mut surj = singles(1..=7);
    surj.extend([vec![1, 5], vec![1, 6], vec![1, 7], vec![2, 7]]);
    m.rost_parts.push(RostPart {
        kind: RostKind::SurjectionTarget,
        products: surj,
        provenance: "A_34 surjects; b_1 b_5 = 2v_3 y_top, b_1 b_6 = 2v_2 y_top, b_1 b_7 = 2v_1 y_top are generators"
            .into(),
    });
    let mut modt = singles(2..=7);
    modt.push(vec![2, 7]);
    m.rost_parts.push(RostPart {
        kind: RostKind::ModTorsion,
        products: modt,
        provenance: "modulo 2-torsion: b_1 and its products are torsion".into(),
    });

    // From E8 over a field making y_1^2, y_2^2, y_4 rational.
    let e8 = lookup(&GroupDescriptor::new(Family::E8, 8, 2))?;
    let sources: Vec<RestrictionSource> =
        e8.transgression.iter().map(|e| RestrictionSource { name: e.name.clone(), topdeg: e.topdeg }).collect();
    let images: Vec<(String, Image)> = sources
        .iter()
        .map(|s| {
            let img = match m.entry_named(&s.name) {
                Some(e) => Image::Same { name: e.name.clone(), topdeg: e.topdeg },
                None => Image::Zero,
            };
            (s.name.clone(), img)
        })
        .collect();
    let expected_image_basis =
        std::iter::once("1".to_string()).chain(m.transgression.iter().map(|e| e.name.clone())).collect();
    m.restrictions.push(RestrictionTable {
        name: "from-e8".into(),
        description: "E8 over a field making y_1^2, y_2^2, y_4 rational: b_i goes to b_i for i <= 7 and b_8 to 0"
            .into(),
        sources,
        images,
        expected_image_basis,
        target: None,
    });
    let mut images = vec![vn(&m, 1, "y1")?, vn(&m, 0, "y1")?];
    images.extend(std::iter::repeat_n(Image::Zero, 5));
    let rational = vec![ratgen(&m, "y2"), ratgen(&m, "y3")];
    let t = table(
        &m,
        "rost-r2",
        "restriction to a field over which y_2, y_3 are rational: b_1, b_2 survive as v_1 y_1, 2y_1",
        images,
        &["1", "b_1", "b_2"],
        Some(RestrictionTarget { rost_n: 2, rost_p: 2, rost_gen: "y1".into(), rational }),
    );
    m.restrictions.push(t);
    m.presentation = PresentationKind::Unavailable {
        reason: "only a surjection onto a basis of the Rost part is known; its ring structure is not determined".into(),
    };
    m.notes.push("operations are restricted from E8 along E7 in E8, where y_4 and x_8 vanish".into());
    Ok(m)
}
