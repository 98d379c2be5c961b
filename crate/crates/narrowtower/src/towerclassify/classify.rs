use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::FactoredDiscriminant;
use crate::towerclassify::profile::{symbol_profile, SymbolProfile, TowerType};
use crate::towerclassify::tables::{data, Appendix1Row};

/// A case of the classification together with the relabeling that moves
/// the input onto the canonical row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CaseLabel {
    pub type_: TowerType,
    pub name: String,
    /// Slot `i` of the canonical pattern is slot `permutation[i]` of the
    /// classified profile (or of the input parts, for
    /// [`classify_discriminant`]).
    pub permutation: [usize; 4],
    pub four_rank: u32,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// Finds the case of `profile`, trying the type's allowed permutations in
/// lexicographic order. Every matching permutation must agree on the label.
pub fn classify_case(profile: &SymbolProfile) -> Result<CaseLabel> {
    let rows: Vec<&Appendix1Row> = data()?.appendix1.iter().filter(|r| r.type_ == profile.type_).collect();
    let mut found: Option<(&Appendix1Row, [usize; 4])> = None;
    for sigma in profile.type_.allowed_permutations() {
        let p = profile.permuted(&sigma);
        let hits: Vec<&&Appendix1Row> = rows.iter().filter(|r| r.matches(&p)).collect();
        match (hits.as_slice(), found) {
            ([], _) => {}
            ([row], None) => found = Some((row, sigma)),
            ([row], Some((first, _))) if row.name == first.name => {}
            _ => {
                return Err(Error::inconsistency(format!(
                    "profile {profile} matches several cases: {}",
                    hits.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")
                )))
            }
        }
    }
    let (row, permutation) = found.ok_or_else(|| Error::inconsistency(format!("profile {profile} matches no case")))?;
    let r = profile.four_rank();
    if r != row.four_rank {
        return Err(Error::inconsistency(format!(
            "case {} has 4-rank {} but the profile gives {r}",
            row.name, row.four_rank
        )));
    }
    Ok(CaseLabel {
        type_: row.type_,
        name: row.name.clone(),
        permutation,
        four_rank: r,
    })
}

/// Classifies a factorization in any order. The returned permutation and
/// factorization refer to the input parts: `canonical = fd.permuted(perm)`.
pub fn classify_discriminant(fd: &FactoredDiscriminant) -> Result<(CaseLabel, FactoredDiscriminant)> {
    let (layout, to_input) = fd.in_type_layout()?;
    let mut label = classify_case(&symbol_profile(&layout)?)?;
    let sigma = label.permutation;
    label.permutation = [
        to_input[sigma[0]],
        to_input[sigma[1]],
        to_input[sigma[2]],
        to_input[sigma[3]],
    ];
    let canonical = fd.permuted(&label.permutation);
    Ok((label, canonical))
}
