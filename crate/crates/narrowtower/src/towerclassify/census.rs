use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::towerclassify::classify::classify_case;
use crate::towerclassify::profile::{SymbolProfile, TowerType};
use crate::towerclassify::tables::data;

/// Diagram counts per case for one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub type_: TowerType,
    /// `(case, number of diagrams)` in table order; cases with no diagram
    /// are omitted.
    pub counts: Vec<(String, usize)>,
    pub total: usize,
    /// Orbits of the allowed permutations met by the diagrams.
    pub orbits: usize,
}

impl Census {
    pub fn count(&self, case: &str) -> Option<usize> {
        self.counts.iter().find(|(c, _)| c == case).map(|&(_, n)| n)
    }
}

/// The normalization that picks out the diagrams of a type: symbols
/// fixed by the choice of `d₃, d₄` (and of which part is `d₁` in type III)
/// are pinned.
fn normalized(p: &SymbolProfile) -> bool {
    match p.type_ {
        TowerType::I => p.nu(3, 4) == 0,
        TowerType::II => p.nu(3, 4) == 0,
        TowerType::III => p.nu(1, 2) == 1 && p.nu(1, 4) == 1 && p.nu(3, 4) == 0,
        TowerType::IV => p.nu(2, 3) == 1,
    }
}

/// Smallest image of `p` under the type's allowed permutations.
fn orbit_key(p: &SymbolProfile) -> SymbolProfile {
    p.type_
        .allowed_permutations()
        .iter()
        .map(|s| p.permuted(s))
        .min()
        .expect("identity is allowed")
}

/// Classifies every normalized diagram of `type_` and counts them per case.
/// The number of distinct cases must equal the number of orbits.
pub fn diagram_census(type_: TowerType) -> Result<Census> {
    let order: Vec<String> = data()?
        .appendix1
        .iter()
        .filter(|r| r.type_ == type_)
        .map(|r| r.name.clone())
        .collect();
    let mut counts: Vec<(String, usize)> = order.iter().map(|n| (n.clone(), 0)).collect();
    let mut orbits = BTreeSet::new();
    let mut total = 0;
    for p in SymbolProfile::all_of_type(type_).iter().filter(|p| normalized(p)) {
        let label = classify_case(p)?;
        let slot = counts
            .iter_mut()
            .find(|(c, _)| *c == label.name)
            .expect("classified cases come from the table");
        slot.1 += 1;
        total += 1;
        orbits.insert(orbit_key(p));
    }
    counts.retain(|&(_, n)| n > 0);
    if orbits.len() != counts.len() {
        return Err(Error::inconsistency(format!(
            "type {type_}: {} orbits but {} cases",
            orbits.len(),
            counts.len()
        )));
    }
    Ok(Census {
        type_,
        counts,
        total,
        orbits: orbits.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals() {
        let t: Vec<usize> = TowerType::ALL
            .iter()
            .map(|&t| diagram_census(t).unwrap().total)
            .collect();
        assert_eq!(t, vec![32, 32, 8, 32]);
        assert_eq!(diagram_census(TowerType::IV).unwrap().orbits, 12);
    }
}
