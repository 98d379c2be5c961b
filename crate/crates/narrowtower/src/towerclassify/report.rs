//! `Gal(k²/k)` for the elementary cases.
//!
//! `Cl₂(k)` is modelled as `F₂⁴/K`: the ramified primes `𝔭₁..𝔭₄` span
//! the ambiguous classes, and `K` is spanned by the principal products
//! `(√m)` (all parts except `−4`) and `(√δ)`-type relations read off the
//! prime divisors of `δ`. Table data (capitulation kernels, unit indices)
//! is checked against what can be computed independently: Artin symbols,
//! unit `δ`s, genus characters and Kuroda's class number formula with
//! form class numbers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::{field_discriminant, kron, FactoredDiscriminant};
use crate::quadforms::h2;
use crate::realunits::{delta_of_unit, delta_via_genus, fundamental_unit, DeltaValue};
use crate::towerclassify::classify::{classify_discriminant, CaseLabel};
use crate::towerclassify::profile::{symbol_profile, TowerType};
use crate::towerclassify::tables::{data, Appendix2Row, Monomial};

/// Isomorphism type of `Gal(k²/k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GType {
    /// Elementary abelian `(2,2)`.
    V4,
    Q,
    Qg,
    D,
    S,
}

impl GType {
    pub const ALL: [GType; 5] = [GType::V4, GType::Q, GType::Qg, GType::D, GType::S];
}

impl fmt::Display for GType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GType::V4 => "(2,2)",
            GType::Q => "Q",
            GType::Qg => "Qg",
            GType::D => "D",
            GType::S => "S",
        })
    }
}

impl FromStr for GType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "(2,2)" | "V4" => Ok(GType::V4),
            "Q" => Ok(GType::Q),
            "Qg" => Ok(GType::Qg),
            "D" => Ok(GType::D),
            "S" => Ok(GType::S),
            other => Err(Error::domain(format!("unknown group type {other:?}"))),
        }
    }
}

/// `|ker j|` and, when the kernel is proper, whether it meets the norm
/// group nontrivially (condition A) or not (B).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TausskyTag {
    Full,
    A,
    B,
}

impl fmt::Display for TausskyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TausskyTag::Full => "4",
            TausskyTag::A => "2A",
            TausskyTag::B => "2B",
        })
    }
}

/// Subgroup of `Cl₂(k) ≅ (2,2)` as a set of class representatives
/// (bit masks over `𝔭₁..𝔭₄`), always containing `0`.
pub type ClassSubgroup = BTreeSet<u8>;

pub fn taussky_tag(kernel: &ClassSubgroup, norm: &ClassSubgroup) -> Result<TausskyTag> {
    match kernel.len() {
        4 => Ok(TausskyTag::Full),
        2 if kernel.intersection(norm).count() > 1 => Ok(TausskyTag::A),
        2 => Ok(TausskyTag::B),
        n => Err(Error::inconsistency(format!("capitulation kernel of order {n}"))),
    }
}

/// Reads `G` off the three tags. Only the multiset matters.
pub fn taussky_classify(tags: &[TausskyTag; 3]) -> Result<GType> {
    use TausskyTag::*;
    let mut t = *tags;
    t.sort();
    Ok(match t {
        [Full, Full, Full] => GType::V4,
        [A, A, A] => GType::Q,
        [A, B, B] => GType::Qg,
        [Full, B, B] => GType::D,
        [B, B, B] => GType::S,
        _ => {
            return Err(Error::inconsistency(format!(
                "capitulation pattern ({}, {}, {}) fits no group",
                tags[0], tags[1], tags[2]
            )))
        }
    })
}

/// [`taussky_classify`] from kernel/norm-group pairs.
pub fn taussky_classify_groups(pairs: &[(ClassSubgroup, ClassSubgroup); 3]) -> Result<GType> {
    let tags = [
        taussky_tag(&pairs[0].0, &pairs[0].1)?,
        taussky_tag(&pairs[1].0, &pairs[1].1)?,
        taussky_tag(&pairs[2].0, &pairs[2].1)?,
    ];
    taussky_classify(&tags)
}

/// Computed data behind a type I or II report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalK2Detail {
    /// Line of the table row that applies.
    pub row_line: usize,
    pub nu34: u8,
    pub norm_eps12: i8,
    /// `δ`, `δ₁`, `δ₂` from the fundamental units.
    pub deltas: [u64; 3],
    /// Genus-theoretic candidates for the same three values.
    pub delta_candidates: [BTreeSet<u64>; 3],
    pub q_indices: [u32; 3],
    pub class_group_gens: Vec<String>,
    pub norm_groups: [Vec<String>; 3],
    pub cap_kernels: [Vec<String>; 3],
    pub taussky: [TausskyTag; 3],
    /// `h₂(k₁), h₂(k₂), h₂(k₃)`.
    pub h2_fields: [u64; 3],
    pub order_formula: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalK2Report {
    pub case: CaseLabel,
    /// Parts in the order of the canonical case pattern.
    pub canonical_parts: [i64; 4],
    pub g_type: GType,
    pub g_order: u64,
    /// `G⁺/G₃⁺` label from the table row, for types I and II.
    pub table_label: Option<String>,
    pub detail: Option<GalK2Detail>,
}

/// Runs the full pipeline for one field. Types III and IV give `(2,2)`.
/// Non-elementary `Cl₂(k)` is out of family.
pub fn galois_k2_report(fd: &FactoredDiscriminant) -> Result<GalK2Report> {
    let (case, canonical) = classify_discriminant(fd)?;
    let canonical_parts = [
        canonical.parts()[0].value(),
        canonical.parts()[1].value(),
        canonical.parts()[2].value(),
        canonical.parts()[3].value(),
    ];
    if case.four_rank != 0 {
        return Err(Error::out_of_family(format!(
            "case {} has 4-rank {}; group data covers elementary Cl2(k) only",
            case.name, case.four_rank
        )));
    }
    if matches!(case.type_, TowerType::III | TowerType::IV) {
        return Ok(GalK2Report {
            case,
            canonical_parts,
            g_type: GType::V4,
            g_order: 4,
            table_label: None,
            detail: None,
        });
    }
    let detail = compute_detail(&case, &canonical)?;
    let row = &data()?
        .appendix2
        .iter()
        .find(|r| r.line == detail.row_line)
        .expect("row found by compute_detail");
    let g_order = row.order.eval(&canonical)?;
    let max_h = *detail.h2_fields.iter().max().unwrap();
    if g_order != 2 * max_h {
        return Err(Error::inconsistency(format!(
            "{}: |G| = {} but the largest h2(k_i) is {max_h}",
            case.name, g_order
        )));
    }
    Ok(GalK2Report {
        case,
        canonical_parts,
        g_type: row.g_type,
        g_order,
        table_label: Some(row.label.clone()),
        detail: Some(detail),
    })
}

fn unit_delta(d: i64) -> Result<u64> {
    match delta_of_unit(d)? {
        DeltaValue::Value(v) => Ok(v),
        DeltaValue::NormMinusOne => Err(Error::inconsistency(format!("fundamental unit of Q(√{d}) has norm −1"))),
    }
}

/// Slot mask of the primes dividing `n`.
fn prime_mask(fd: &FactoredDiscriminant, n: u64) -> Result<u8> {
    let mut mask = 0u8;
    let mut rest = n;
    for (i, p) in fd.parts().iter().enumerate() {
        if rest.is_multiple_of(p.prime()) {
            mask |= 1 << i;
            rest /= p.prime();
        }
    }
    if rest != 1 {
        return Err(Error::inconsistency(format!("δ = {n} has a prime outside d_k")));
    }
    Ok(mask)
}

/// `F₂⁴/K` with `K` given by a spanning set.
struct Quotient {
    kernel: BTreeSet<u8>,
}

impl Quotient {
    fn new(span: &[u8]) -> Self {
        let mut kernel = BTreeSet::from([0u8]);
        for &v in span {
            let shifted: Vec<u8> = kernel.iter().map(|k| k ^ v).collect();
            kernel.extend(shifted);
        }
        Quotient { kernel }
    }

    fn rep(&self, v: u8) -> u8 {
        self.kernel.iter().map(|k| k ^ v).min().unwrap()
    }

    fn span(&self, gens: &[u8]) -> ClassSubgroup {
        let mut s = BTreeSet::from([0u8]);
        for &g in gens {
            let g = self.rep(g);
            let shifted: Vec<u8> = s.iter().map(|x| self.rep(x ^ g)).collect();
            s.extend(shifted);
        }
        s
    }

    fn of_monomials(&self, ms: &[Monomial]) -> ClassSubgroup {
        self.span(&ms.iter().map(Monomial::ideal_mask).collect::<Vec<_>>())
    }
}

fn strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(ToString::to_string).collect()
}

fn compute_detail(case: &CaseLabel, fd: &FactoredDiscriminant) -> Result<GalK2Detail> {
    let profile = symbol_profile(fd)?;
    let nu34 = profile.nu(3, 4);
    let dk = fd.value();
    let norm_eps12 = fundamental_unit(fd.sub_product(0b0011))?.norm;
    let deltas = [
        unit_delta(dk)?,
        unit_delta(fd.sub_product(0b1110))?,
        unit_delta(fd.sub_product(0b1101))?,
    ];
    let delta_candidates = [
        delta_via_genus(fd)?.norms,
        delta_via_genus(&fd.select(0b1110)?)?.norms,
        delta_via_genus(&fd.select(0b1101)?)?.norms,
    ];
    for (k, (d, c)) in deltas.iter().zip(&delta_candidates).enumerate() {
        if !c.contains(d) {
            return Err(Error::inconsistency(format!(
                "{}: unit δ{} = {d} is not among the genus candidates {c:?}",
                case.name,
                if k == 0 { String::new() } else { k.to_string() }
            )));
        }
    }

    let store = data()?;
    let candidates: Vec<&Appendix2Row> = store
        .appendix2
        .iter()
        .filter(|r| r.case == case.name && r.nu34 == nu34 && r.norm_eps12 == norm_eps12)
        .collect();
    let hits: Vec<&Appendix2Row> = candidates
        .iter()
        .copied()
        .filter(|r| (0..3).all(|k| r.deltas[k].iter().any(|m| m.value(fd) == deltas[k])))
        .collect();
    let row = match hits.as_slice() {
        [row] => *row,
        [] => {
            return Err(Error::inconsistency(format!(
                "{} (ν34 = {nu34}, Nε12 = {norm_eps12:+}): δ = {}, δ1 = {}, δ2 = {} match no table branch",
                case.name, deltas[0], deltas[1], deltas[2]
            )))
        }
        many => {
            return Err(Error::inconsistency(format!(
                "{}: {} table branches match (lines {:?})",
                case.name,
                many.len(),
                many.iter().map(|r| r.line).collect::<Vec<_>>()
            )))
        }
    };

    // Cl₂(k) as F₂⁴ modulo (√m) and the relation from δ.
    let m4 = case.type_.minus_four_slot();
    let all_but_m4: u8 = (0..4u8).filter(|&i| Some(i as usize) != m4).map(|i| 1 << i).sum();
    let quotient = Quotient::new(&[all_but_m4, prime_mask(fd, deltas[0])?]);
    if quotient.kernel.len() != 4 {
        return Err(Error::inconsistency(format!(
            "{}: relations span {} classes, expected 4",
            case.name,
            quotient.kernel.len()
        )));
    }
    let cl = quotient.of_monomials(&row.class_group_gens);
    if cl.len() != 4 {
        return Err(Error::inconsistency(format!(
            "{}: listed generators span {} classes of Cl2(k)",
            case.name,
            cl.len()
        )));
    }

    // Norm groups as kernels of Artin characters of k(√m)/k.
    let m_masks = [0b0001u32, 0b0010, 0b0011];
    let mut taussky = [TausskyTag::Full; 3];
    for i in 0..3 {
        let m = fd.sub_product(m_masks[i]);
        let psi = |j: usize| -> i8 {
            let p = fd.parts()[j].prime() as i64;
            if m_masks[i] >> j & 1 == 1 {
                kron(dk / m, p)
            } else {
                kron(m, p)
            }
        };
        let chi = |v: u8| -> i8 { (0..4).filter(|&j| v >> j & 1 == 1).map(psi).product() };
        if quotient.kernel.iter().any(|&k| chi(k) != 1) {
            return Err(Error::inconsistency(format!(
                "{}: Artin character of k{} is not trivial on principal classes",
                case.name,
                i + 1
            )));
        }
        let computed: ClassSubgroup = (0..16u8).filter(|&v| chi(v) == 1).map(|v| quotient.rep(v)).collect();
        let listed = quotient.of_monomials(&row.norm_groups[i]);
        if computed != listed {
            return Err(Error::inconsistency(format!(
                "{}: computed N{} {computed:?} differs from the table's {}",
                case.name,
                i + 1,
                strings(&row.norm_groups[i]).join(",")
            )));
        }
        let kernel = quotient.of_monomials(&row.kernels[i]);
        taussky[i] = taussky_tag(&kernel, &listed)?;
    }
    let g = taussky_classify(&taussky)?;
    if g != row.g_type {
        return Err(Error::inconsistency(format!(
            "{}: capitulation gives {g}, table lists {}",
            case.name, row.g_type
        )));
    }

    // Kuroda: h₂(k_i) = q_i/4 · h₂(k) h₂(F) h₂(F′).
    let hk = h2(dk)?;
    if hk != 4 {
        return Err(Error::inconsistency(format!("h2({dk}) = {hk}, expected 4")));
    }
    let pairs = [(0b0001u32, 0b1110u32), (0b0010, 0b1101), (0b0011, 0b1100)];
    let mut h2_fields = [0u64; 3];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let ha = h2(field_discriminant(fd.sub_product(a))?)?;
        let hb = h2(field_discriminant(fd.sub_product(b))?)?;
        let num = row.q[i] as u64 * hk * ha * hb;
        if !num.is_multiple_of(4) {
            return Err(Error::inconsistency(format!(
                "{}: Kuroda's formula gives a non-integer h2(k{})",
                case.name,
                i + 1
            )));
        }
        let kuroda = num / 4;
        let listed = row.h2[i].eval(fd)?;
        if kuroda != listed {
            return Err(Error::inconsistency(format!(
                "{}: h2(k{}) = {kuroda} by Kuroda, table gives {} = {listed}",
                case.name,
                i + 1,
                row.h2[i]
            )));
        }
        h2_fields[i] = kuroda;
    }

    Ok(GalK2Detail {
        row_line: row.line,
        nu34,
        norm_eps12,
        deltas,
        delta_candidates,
        q_indices: row.q,
        class_group_gens: strings(&row.class_group_gens),
        norm_groups: [
            strings(&row.norm_groups[0]),
            strings(&row.norm_groups[1]),
            strings(&row.norm_groups[2]),
        ],
        cap_kernels: [
            strings(&row.kernels[0]),
            strings(&row.kernels[1]),
            strings(&row.kernels[2]),
        ],
        taussky,
        h2_fields,
        order_formula: row.order.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(v: &[i64]) -> GalK2Report {
        galois_k2_report(&FactoredDiscriminant::from_values(v).unwrap()).unwrap()
    }

    #[test]
    fn worked_example_a8() {
        let r = report(&[13, 5, -23, -3]);
        assert_eq!(r.case.name, "a8");
        let d = r.detail.unwrap();
        assert_eq!(d.deltas[0], 69);
        assert_eq!(d.h2_fields[0], 4);
        assert_eq!(d.h2_fields[2], 4);
        assert!(matches!(r.g_type, GType::S | GType::D));
    }

    #[test]
    fn quaternion_case() {
        let r = report(&[13, 5, -131, -7]);
        assert_eq!((r.case.name.as_str(), r.g_type, r.g_order), ("a9", GType::Q, 8));
    }

    #[test]
    fn taussky_table() {
        use TausskyTag::*;
        assert_eq!(taussky_classify(&[B, Full, B]).unwrap(), GType::D);
        assert!(taussky_classify(&[A, A, B]).is_err());
    }
}
