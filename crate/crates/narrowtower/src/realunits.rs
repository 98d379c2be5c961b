//! Fundamental units of real quadratic fields and the invariant
//! `δ(ε) = sfk N(1 + ε)`, computed from the unit itself and from genus
//! characters.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intarith::{check_fundamental, factor, kron, squarefree_kernel_among, FactoredDiscriminant};

/// Default cap on the continued-fraction period.
pub const DEFAULT_PERIOD_BUDGET: usize = 2_000_000;

/// `ε = (x + y√D)/2 > 1` with `x² − Dy² = 4·norm`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub discriminant: i64,
    pub x: BigInt,
    pub y: BigInt,
    pub norm: i8,
    /// Length of the continued-fraction period that produced the unit.
    pub period: usize,
}

impl FundamentalUnit {
    pub fn trace(&self) -> &BigInt {
        &self.x
    }

    /// `(x² − Dy²)/4`, recomputed from the coordinates.
    pub fn computed_norm(&self) -> BigInt {
        (&self.x * &self.x - BigInt::from(self.discriminant) * &self.y * &self.y) / 4
    }
}

impl fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + {}√{})/2, norm {:+}",
            self.x, self.y, self.discriminant, self.norm
        )
    }
}

/// Fundamental unit of `Q(√D)` from the continued fraction of `(1+√D)/2`
/// (`D ≡ 1 mod 4`) or `√(D/4)` (`D ≡ 0 mod 4`).
pub fn fundamental_unit(d: i64) -> Result<FundamentalUnit> {
    fundamental_unit_with_budget(d, DEFAULT_PERIOD_BUDGET)
}

/// [`fundamental_unit`] with an explicit cap on the period length.
pub fn fundamental_unit_with_budget(d: i64, max_period: usize) -> Result<FundamentalUnit> {
    check_fundamental(d)?;
    if d < 0 {
        return Err(Error::domain(format!("{d} is not a real quadratic discriminant")));
    }
    let odd = d % 4 == 1;
    let (delta, p0, q0): (i64, i64, i64) = if odd { (d, 1, 2) } else { (d / 4, 0, 1) };
    let s = (delta as u64).sqrt() as i64;
    let (mut pp, mut qq) = (p0 as i128, q0 as i128);
    let (mut p_prev, mut p_cur) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q_cur) = (BigInt::one(), BigInt::zero());
    for k in 0..max_period {
        let a = Integer::div_floor(&(pp + s as i128), &qq);
        let p_next = BigInt::from(a) * &p_cur + &p_prev;
        let q_next = BigInt::from(a) * &q_cur + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        let p_new = a * qq - pp;
        let q_new = (delta as i128 - p_new * p_new) / qq;
        pp = p_new;
        qq = q_new;
        if qq == q0 as i128 {
            // ε = p_k − q_k·ω̄ with ω̄ the conjugate of the start value.
            let (x, y) = if odd {
                (BigInt::from(2) * &p_cur - &q_cur, q_cur.clone())
            } else {
                (BigInt::from(2) * &p_cur, q_cur.clone())
            };
            let period = k + 1;
            let norm: i8 = if period % 2 == 0 { 1 } else { -1 };
            let unit = FundamentalUnit {
                discriminant: d,
                x,
                y,
                norm,
                period,
            };
            if unit.computed_norm() != BigInt::from(norm) {
                return Err(Error::inconsistency(format!("unit {unit} fails its norm equation")));
            }
            return Ok(unit);
        }
    }
    Err(Error::resource(format!(
        "continued fraction period of D = {d} exceeds {max_period}"
    )))
}

/// `δ(ε)` of a fundamental unit, or a marker when the unit has norm −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeltaValue {
    Value(u64),
    NormMinusOne,
}

impl DeltaValue {
    pub fn value(self) -> Option<u64> {
        match self {
            DeltaValue::Value(v) => Some(v),
            DeltaValue::NormMinusOne => None,
        }
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Value(v) => write!(f, "{v}"),
            DeltaValue::NormMinusOne => write!(f, "N(ε) = −1"),
        }
    }
}

/// `sfk N(1 + ε) = sfk(2 + Tr ε)` for the fundamental unit of `Q(√D)`.
pub fn delta_of_unit(d: i64) -> Result<DeltaValue> {
    delta_of(&fundamental_unit(d)?)
}

/// `δ` of an already computed unit.
pub fn delta_of(unit: &FundamentalUnit) -> Result<DeltaValue> {
    if unit.norm == -1 {
        return Ok(DeltaValue::NormMinusOne);
    }
    let n = BigInt::from(2) + &unit.x;
    let primes: Vec<u64> = factor(2 * unit.discriminant.unsigned_abs())
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    squarefree_kernel_among(&n.abs(), &primes)
        .map(DeltaValue::Value)
        .ok_or_else(|| {
            Error::inconsistency(format!(
                "N(1+ε) = {n} has a square-free part with primes outside 2·D = {}",
                2 * unit.discriminant
            ))
        })
}

/// Values `χ_i(𝔭_j)` of the genus characters of `Q(√d)`, `d = ∏ d_i`,
/// on the ramified primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusCharacterTable {
    pub discriminant: FactoredDiscriminant,
    /// `entries[j][i] = χ_i(𝔭_j)`.
    pub entries: Vec<Vec<i8>>,
}

impl GenusCharacterTable {
    /// Norm of the ramified prime `𝔭_j`.
    pub fn prime_norm(&self, j: usize) -> u64 {
        self.discriminant.parts()[j].prime()
    }

    /// Product of rows selected by `mask`, one sign per character.
    pub fn row_product(&self, mask: u32) -> Vec<i8> {
        let n = self.entries.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| self.entries[j][i])
                    .product()
            })
            .collect()
    }
}

/// Builds the table `χ_i(𝔭_j) = (d_i/p_j)` for `j ≠ i` and
/// `((d/d_i)/p_i)` on the diagonal.
pub fn genus_character_table(fd: &FactoredDiscriminant) -> Result<GenusCharacterTable> {
    let n = fd.len();
    if !(2..=4).contains(&n) {
        return Err(Error::domain(format!(
            "genus character table needs 2 to 4 prime discriminants, got {n}"
        )));
    }
    let parts = fd.parts();
    let entries = (0..n)
        .map(|j| {
            let p = parts[j].prime() as i64;
            (0..n)
                .map(|i| {
                    if i != j {
                        kron(parts[i].value(), p)
                    } else {
                        let rest: i64 = (0..n).filter(|&m| m != i).map(|m| parts[m].value()).product();
                        kron(rest, p)
                    }
                })
                .collect()
        })
        .collect();
    Ok(GenusCharacterTable {
        discriminant: fd.clone(),
        entries,
    })
}

/// Candidates for `δ` read off the genus characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusDelta {
    /// Norms `N(∏ 𝔭_j)` of the qualifying products.
    pub norms: BTreeSet<u64>,
    /// Subsets of ramified primes (bit `j` is `𝔭_j`).
    pub masks: Vec<u32>,
}

impl GenusDelta {
    pub fn singleton(&self) -> Option<u64> {
        (self.norms.len() == 1).then(|| *self.norms.iter().next().unwrap())
    }
}

/// Products of distinct ramified primes on which every genus character is
/// `+1`, other than the empty product and the product generating `(√m)`
/// with `m` the square-free part of `D`. That product is every prime
/// except the one of a `−4` part.
pub fn delta_via_genus(fd: &FactoredDiscriminant) -> Result<GenusDelta> {
    let table = genus_character_table(fd)?;
    let n = fd.len();
    let full = (1u32 << n) - 1;
    let root_m: u32 = (0..n).filter(|&j| fd.parts()[j].value() != -4).map(|j| 1 << j).sum();
    let mut norms = BTreeSet::new();
    let mut masks = Vec::new();
    for mask in (1..=full).filter(|&m| m != root_m) {
        if table.row_product(mask).iter().all(|&v| v == 1) {
            masks.push(mask);
            norms.insert(
                (0..n)
                    .filter(|j| mask >> j & 1 == 1)
                    .map(|j| table.prime_norm(j))
                    .product(),
            );
        }
    }
    Ok(GenusDelta { norms, masks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_units() {
        let u = fundamental_unit(5).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (1.into(), 1.into(), -1));
        let u = fundamental_unit(12).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (4.into(), 1.into(), 1));
        let u = fundamental_unit(133).unwrap();
        assert_eq!((u.x.clone(), u.y.clone(), u.norm), (173.into(), 15.into(), 1));
    }

    #[test]
    fn deltas() {
        assert_eq!(delta_of_unit(12).unwrap(), DeltaValue::Value(6));
        assert_eq!(delta_of_unit(133).unwrap(), DeltaValue::Value(7));
        assert_eq!(delta_of_unit(5).unwrap(), DeltaValue::NormMinusOne);
    }

    #[test]
    fn genus_delta_a8() {
        let fd = FactoredDiscriminant::from_values(&[13, 5, -23, -3]).unwrap();
        assert_eq!(delta_via_genus(&fd).unwrap().singleton(), Some(69));
    }
}
