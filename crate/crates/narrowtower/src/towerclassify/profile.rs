use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intarith::{kron, FactoredDiscriminant, PrimeDiscriminant};
use crate::quadforms::count_c4_splittings;

/// The four shapes of `d_k = d₁d₂d₃d₄` with two or four negative parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TowerType {
    /// `d₁, d₂ > 0 > d₃, d₄`, no part `−4`.
    I,
    /// `d₁, d₂ > 0 > d₃`, `d₄ = −4`.
    II,
    /// All parts negative, none `−4`.
    III,
    /// All parts negative, `d₄ = −4`.
    IV,
}

impl TowerType {
    pub const ALL: [TowerType; 4] = [TowerType::I, TowerType::II, TowerType::III, TowerType::IV];

    /// Whether slot `i` (0-based) holds a negative part.
    pub fn is_negative(self, i: usize) -> bool {
        match self {
            TowerType::I | TowerType::II => i >= 2,
            TowerType::III | TowerType::IV => true,
        }
    }

    /// Slot holding `−4`, if any.
    pub fn minus_four_slot(self) -> Option<usize> {
        match self {
            TowerType::II | TowerType::IV => Some(3),
            TowerType::I | TowerType::III => None,
        }
    }

    /// Slot permutations that preserve the type layout, in lexicographic
    /// order. `σ[i]` is the slot moved into position `i`.
    pub fn allowed_permutations(self) -> Vec<[usize; 4]> {
        let mut out: Vec<[usize; 4]> = all_permutations()
            .into_iter()
            .filter(|s| {
                (0..4).all(|i| {
                    self.is_negative(s[i]) == self.is_negative(i)
                        && (self.minus_four_slot() == Some(s[i])) == (self.minus_four_slot() == Some(i))
                })
            })
            .collect();
        out.sort();
        out
    }
}

impl fmt::Display for TowerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerType::I => "I",
            TowerType::II => "II",
            TowerType::III => "III",
            TowerType::IV => "IV",
        })
    }
}

impl FromStr for TowerType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" => Ok(TowerType::I),
            "II" | "2" => Ok(TowerType::II),
            "III" | "3" => Ok(TowerType::III),
            "IV" | "4" => Ok(TowerType::IV),
            other => Err(Error::domain(format!("unknown type {other:?}"))),
        }
    }
}

/// All 24 permutations of four slots, lexicographically ordered.
pub fn all_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let s = [a, b, c, d];
                    let mut seen = [false; 4];
                    s.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&x| x) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

/// The exponents `ν_ij` with `(−1)^ν_ij = (d_i/p_j)`; the diagonal holds
/// `δ_i` defined by `((d/d_i)/p_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolProfile {
    pub nu: [[u8; 4]; 4],
    pub type_: TowerType,
}

impl SymbolProfile {
    /// Builds a profile from its off-diagonal entries, checking the
    /// reciprocity constraints of the type and filling the diagonal.
    pub fn from_off_diagonal(type_: TowerType, nu: [[u8; 4]; 4]) -> Result<Self> {
        let mut nu = nu;
        for i in 0..4 {
            for j in 0..4 {
                if i != j && nu[i][j] > 1 {
                    return Err(Error::domain("profile entries must be 0 or 1"));
                }
                if i != j {
                    if let Some(expected) = forced_entry(type_, i, j, nu[j][i]) {
                        if nu[i][j] != expected {
                            return Err(Error::domain(format!(
                                "ν{}{} = {} violates reciprocity for type {type_}",
                                i + 1,
                                j + 1,
                                nu[i][j]
                            )));
                        }
                    }
                }
            }
        }
        for i in 0..4 {
            nu[i][i] = (0..4).filter(|&j| j != i).map(|j| nu[j][i]).sum::<u8>() % 2;
        }
        Ok(SymbolProfile { nu, type_ })
    }

    /// Builds a profile from the free bits of its type; see
    /// [`SymbolProfile::free_bits`] for the ordering.
    pub fn from_free_bits(type_: TowerType, bits: u8) -> Self {
        let mut nu = [[0u8; 4]; 4];
        let slots = free_slots(type_);
        for (k, &(i, j)) in slots.iter().enumerate() {
            nu[i][j] = bits >> k & 1;
        }
        // Fill the entries determined by the free ones.
        for i in 0..4 {
            for j in 0..4 {
                if i != j && !slots.contains(&(i, j)) {
                    nu[i][j] = forced_entry(type_, i, j, nu[j][i]).expect("non-free entries are forced");
                }
            }
        }
        Self::from_off_diagonal(type_, nu).expect("generated profile is consistent")
    }

    /// The six free bits packed as in [`SymbolProfile::from_free_bits`].
    pub fn free_bits(&self) -> u8 {
        free_slots(self.type_)
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| self.nu[i][j] << k)
            .sum()
    }

    /// Every admissible profile of a type (64 each).
    pub fn all_of_type(type_: TowerType) -> Vec<Self> {
        (0..64u8).map(|b| Self::from_free_bits(type_, b)).collect()
    }

    /// `ν_ij` with 1-based indices.
    pub fn nu(&self, i: usize, j: usize) -> u8 {
        self.nu[i - 1][j - 1]
    }

    /// `(d_i/p_j)` as ±1, 1-based.
    pub fn symbol(&self, i: usize, j: usize) -> i8 {
        if self.nu(i, j) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn mu(&self) -> [u8; 3] {
        [self.nu[0][3], self.nu[1][3], self.nu[2][3]]
    }

    pub fn deltas(&self) -> [u8; 4] {
        [self.nu[0][0], self.nu[1][1], self.nu[2][2], self.nu[3][3]]
    }

    /// `(ν₁₂, ν₁₃, ν₂₃; μ₁, μ₂, μ₃; δ₁, δ₂, δ₃)`.
    pub fn koch_tuple(&self) -> [u8; 9] {
        let n = &self.nu;
        [
            n[0][1], n[0][2], n[1][2], n[0][3], n[1][3], n[2][3], n[0][0], n[1][1], n[2][2],
        ]
    }

    /// Relabels parts: slot `i` of the result is slot `σ[i]` of `self`.
    pub fn permuted(&self, sigma: &[usize; 4]) -> Self {
        let mut nu = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                nu[i][j] = self.nu[sigma[i]][sigma[j]];
            }
        }
        SymbolProfile { nu, type_: self.type_ }
    }

    /// 4-rank of `Cl₂(k)` from the number of `C₄`-splittings.
    pub fn four_rank(&self) -> u32 {
        count_c4_splittings(4, |i, j| if self.nu[i][j] == 0 { 1 } else { -1 })
            .expect("profiles satisfy the splitting count invariant")
    }
}

impl fmt::Display for SymbolProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.koch_tuple();
        write!(
            f,
            "type {} ({},{},{};{},{},{};{},{},{}) ν14..: {}{}{} ν4j: {}{}{}",
            self.type_,
            t[0],
            t[1],
            t[2],
            t[3],
            t[4],
            t[5],
            t[6],
            t[7],
            t[8],
            self.nu[0][3],
            self.nu[1][3],
            self.nu[2][3],
            self.nu[3][0],
            self.nu[3][1],
            self.nu[3][2]
        )
    }
}

/// The value forced on `ν_ij` (`i ≠ j`) by reciprocity, given `ν_ji`, or
/// `None` when the entry is free.
fn forced_entry(type_: TowerType, i: usize, j: usize, nu_ji: u8) -> Option<u8> {
    let m4 = type_.minus_four_slot();
    if m4 == Some(j) {
        // (d_i/2) is free.
        return None;
    }
    if m4 == Some(i) {
        // (−4/p_j) = −1 exactly when d_j < 0.
        return Some(type_.is_negative(j) as u8);
    }
    if i > j {
        Some(if type_.is_negative(i) && type_.is_negative(j) {
            1 - nu_ji
        } else {
            nu_ji
        })
    } else {
        None
    }
}

/// Positions of the six free bits. For types with `−4` in slot 4 the last
/// three are `μ₁, μ₂, μ₃`.
fn free_slots(_type: TowerType) -> [(usize, usize); 6] {
    [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
}

impl FactoredDiscriminant {
    /// Type of a four-part factorization in the family.
    pub fn tower_type(&self) -> Result<TowerType> {
        self.check_family()?;
        let has_m4 = self.parts().iter().any(|p| p.value() == -4);
        Ok(match (self.negative_count(), has_m4) {
            (2, false) => TowerType::I,
            (2, true) => TowerType::II,
            (4, false) => TowerType::III,
            (_, _) => TowerType::IV,
        })
    }

    /// Reorders the parts so positives come first and `−4` last, keeping
    /// the relative order otherwise. Returns the new factorization and the
    /// input index of each slot.
    pub fn in_type_layout(&self) -> Result<(FactoredDiscriminant, [usize; 4])> {
        self.tower_type()?;
        let mut idx: Vec<usize> = (0..4).collect();
        idx.sort_by_key(|&i| {
            let p = self.parts()[i];
            match (p.is_negative(), p.value() == -4) {
                (false, _) => 0,
                (true, false) => 1,
                (true, true) => 2,
            }
        });
        let sigma = [idx[0], idx[1], idx[2], idx[3]];
        Ok((self.permuted(&sigma), sigma))
    }
}

/// Computes `ν_ij` from the parts, which must be in type layout.
pub fn symbol_profile(fd: &FactoredDiscriminant) -> Result<SymbolProfile> {
    let t = fd.tower_type()?;
    let parts: &[PrimeDiscriminant] = fd.parts();
    for (i, p) in parts.iter().enumerate() {
        if p.is_negative() != t.is_negative(i) || (p.value() == -4) != (t.minus_four_slot() == Some(i)) {
            return Err(Error::domain(format!(
                "parts {fd} are not in type-{t} layout (positives first, −4 last)"
            )));
        }
    }
    let mut nu = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let s = if i == j {
                let rest: i64 = (0..4).filter(|&m| m != i).map(|m| parts[m].value()).product();
                kron(rest, parts[i].prime() as i64)
            } else {
                kron(parts[i].value(), parts[j].prime() as i64)
            };
            nu[i][j] = (s == -1) as u8;
        }
    }
    let profile = SymbolProfile::from_off_diagonal(t, nu)?;
    if profile.nu != nu {
        return Err(Error::inconsistency(format!(
            "diagonal symbols of {fd} disagree with the product formula"
        )));
    }
    Ok(profile)
}
