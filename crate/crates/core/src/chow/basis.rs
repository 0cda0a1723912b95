//! Additive bases: Rost motives, Rost parts of versal flag varieties and the
//! filtration `A_N` spanned by products of transgressions.

use serde::{Serialize, Serializer};

use crate::catalog::{CohomologyModel, RostKind};

/// A degree-tagged basis element. These lists are never rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub topdeg: u32,
    pub provenance: String,
}

impl BasisElement {
    pub fn new(name: impl Into<String>, topdeg: u32, provenance: impl Into<String>) -> Self {
        BasisElement { name: name.into(), topdeg, provenance: provenance.into() }
    }

    /// Codimension in the Chow grading.
    pub fn chowdeg(&self) -> u32 {
        self.topdeg / 2
    }
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("BasisElement", 4)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("topdeg", &self.topdeg)?;
        st.serialize_field("chowdeg", &self.chowdeg())?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

/// `v_n` in `BP* = Z_(p)[v_1, v_2, ..]`, with `v_0 = p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VnSymbol {
    pub n: u32,
}

impl VnSymbol {
    pub fn topdeg(self, p: u64) -> i64 {
        -2 * (p.pow(self.n) as i64 - 1)
    }
}

/// `CH*(R_n)/p = Z/p{1, c_j(y^i) | 0 ≤ j < n, 1 ≤ i < p}` with
/// `|c_j(y^i)| = 2i(p^n − 1)/(p − 1) − 2(p^j − 1)`, listed by `j` then `i`.
pub fn rost_chow_basis(n: u32, p: u64) -> Vec<BasisElement> {
    let b = 2 * (p.pow(n) - 1) / (p - 1);
    let mut out = vec![BasisElement::new("1", 0, "unit")];
    for j in 0..n {
        for i in 1..p {
            let deg = i * b - 2 * (p.pow(j) - 1);
            let y = if i == 1 { "y".to_string() } else { format!("y^{i}") };
            out.push(BasisElement::new(format!("c_{j}({y})"), deg as u32, format!("v_{j} y^{i}")));
        }
    }
    out
}

fn part_elements(model: &CohomologyModel, products: &[Vec<usize>], provenance: &str) -> Vec<BasisElement> {
    products
        .iter()
        .map(|idx| {
            let deg = model.product_degree(idx).expect("rost products name catalog transgressions");
            BasisElement::new(model.product_name(idx), deg, provenance)
        })
        .collect()
}

/// The catalog's Rost-part basis of the given kind, if one is recorded.
pub fn rost_part_basis_of(model: &CohomologyModel, kind: RostKind) -> Option<Vec<BasisElement>> {
    let part = model.rost_part(kind)?;
    Some(part_elements(model, &part.products, &part.provenance))
}

/// The strongest recorded description of the Rost part: exact, then a
/// surjection target, then the torsion-free quotient.
pub fn rost_part_basis(model: &CohomologyModel) -> (RostKind, Vec<BasisElement>) {
    for kind in [RostKind::Exact, RostKind::SurjectionTarget, RostKind::ModTorsion] {
        if let Some(b) = rost_part_basis_of(model, kind) {
            return (kind, b);
        }
    }
    (RostKind::Exact, vec![BasisElement::new("1", 0, "unit")])
}

/// All products `b_{i_1} .. b_{i_k}` with `|b_{i_1}| + .. + |b_{i_k}| ≤ N`,
/// by increasing degree.
pub fn a_filtration_basis(model: &CohomologyModel, max_topdeg: u32) -> Vec<BasisElement> {
    let degs: Vec<(usize, u32)> = model.transgression.iter().map(|e| (e.index, e.topdeg)).collect();
    let mut products: Vec<(u32, Vec<usize>)> = Vec::new();
    let mut stack: Vec<(usize, u32, Vec<usize>)> = vec![(0, 0, Vec::new())];
    while let Some((from, deg, idx)) = stack.pop() {
        for (k, &(i, d)) in degs.iter().enumerate().skip(from) {
            if deg + d <= max_topdeg {
                let mut next = idx.clone();
                next.push(i);
                stack.push((k, deg + d, next));
            }
        }
        products.push((deg, idx));
    }
    products.sort();
    products
        .into_iter()
        .map(|(deg, idx)| BasisElement::new(model.product_name(&idx), deg, format!("A_{max_topdeg}")))
        .collect()
}
