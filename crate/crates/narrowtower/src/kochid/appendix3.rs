//! Checks of the Koch presentation rows against the computed Koch groups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpgroups::{
    commutator_aliases, is_isomorphic, parse_assignments, parse_relations, realize, FiniteGroup, Word,
};
use crate::kochid::catalog::{
    a_presentation_of, catalog, identify_label_with, koch_group, s_presentation, IdentifyOptions,
};
use crate::kochid::koch::koch_presentation;
use crate::towerclassify::{classify_case, data, Appendix3Row, SymbolProfile, TowerType};

/// Outcome of the checks on one row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub case: String,
    pub label: String,
    pub order: usize,
    pub identified: String,
    /// Transformation checked (`None` when the row has none).
    pub transformed: Option<bool>,
}

/// The profile whose Koch tuple is the row's tuple.
pub fn row_profile(row: &Appendix3Row) -> Result<SymbolProfile> {
    let found: Vec<SymbolProfile> = SymbolProfile::all_of_type(row.type_)
        .into_iter()
        .filter(|p| p.koch_tuple() == row.tuple)
        .collect();
    match found.as_slice() {
        [p] => Ok(*p),
        _ => Err(Error::inconsistency(format!(
            "{}: {} profiles have the listed tuple",
            row.case,
            found.len()
        ))),
    }
}

fn holds_in(g: &FiniteGroup, relators: &[Word], images: &[usize]) -> bool {
    relators.iter().all(|r| g.eval_with(r, images) == g.identity())
}

/// Verifies one row:
///
/// * the tuple's profile belongs to the row's case;
/// * the printed s-relations and Koch's relations define the same class-two
///   quotient (each set holds in the other's group);
/// * the Koch group has the order named by the label and identifies as it;
/// * when a transformation is given, the a-relations hold for the images,
///   the images generate, and the orders agree.
pub fn check_row(row: &Appendix3Row, opts: IdentifyOptions) -> Result<RowCheck> {
    let fail = |m: String| Error::inconsistency(format!("{}: {m}", row.case));
    let profile = row_profile(row)?;
    let case = classify_case(&profile)?;
    if case.name != row.case {
        return Err(fail(format!("tuple classifies as {}", case.name)));
    }
    let koch = koch_presentation(&profile).class_two();
    let k = koch_group(&profile, opts)?;
    let printed = s_presentation(&row.s_relations)?;
    let p = realize(&printed, opts.coset_budget)?;
    let gens_k = k.generators().to_vec();
    let gens_p = p.generators().to_vec();
    if !holds_in(&k, printed.relators(), &gens_k) || !holds_in(&p, koch.relators(), &gens_p) {
        return Err(fail("printed s-relations and Koch's relations differ".into()));
    }
    let expected: usize = row.label[..2]
        .parse()
        .map_err(|_| fail(format!("bad label {}", row.label)))?;
    if k.order() != expected || p.order() != expected {
        return Err(fail(format!(
            "orders {} and {}, label {}",
            k.order(),
            p.order(),
            row.label
        )));
    }
    let identified = identify_label_with(&profile, opts)?;
    if identified != row.label {
        return Err(fail(format!("identifies as {identified}, tabled as {}", row.label)));
    }
    let transformed = match data()?.resolved_transform(row)? {
        None => None,
        Some((assign, rels)) => {
            let s_gens = ["s1", "s2", "s3"];
            let a_gens = ["a1", "a2", "a3"];
            let words = parse_assignments(&a_gens, &s_gens, &Default::default(), &assign)?;
            let images: Vec<usize> = words.iter().map(|w| k.eval(w)).collect();
            let a = a_presentation_of(&parse_relations(&a_gens, &commutator_aliases('c', 3), &rels)?)?;
            let ok = holds_in(&k, a.relators(), &images)
                && k.closure(&images).order() == k.order()
                && realize(&a, opts.coset_budget)?.order() == k.order();
            if !ok {
                return Err(fail("transformed presentation does not match".into()));
            }
            Some(true)
        }
    };
    Ok(RowCheck {
        case: row.case.clone(),
        label: row.label.clone(),
        order: k.order(),
        identified,
        transformed,
    })
}

/// Pairwise comparison of the row groups: same label iff isomorphic, and
/// every order-32 row is isomorphic to its reference group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseCheck {
    pub pairs: usize,
    pub mismatches: Vec<(String, String)>,
    pub reference_mismatches: Vec<String>,
}

impl PairwiseCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.reference_mismatches.is_empty()
    }
}

pub fn check_pairwise(opts: IdentifyOptions) -> Result<PairwiseCheck> {
    let rows = &data()?.appendix3;
    let groups: Vec<FiniteGroup> = rows
        .iter()
        .map(|r| koch_group(&row_profile(r)?, opts))
        .collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    let mut pairs = 0;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            pairs += 1;
            let iso = is_isomorphic(&groups[i], &groups[j], opts.seed)?.is_some();
            if iso != (rows[i].label == rows[j].label) {
                mismatches.push((rows[i].case.clone(), rows[j].case.clone()));
            }
        }
    }
    let cat = catalog()?;
    let mut reference_mismatches = Vec::new();
    for (r, g) in rows.iter().zip(&groups) {
        if g.order() != 32 {
            continue;
        }
        let reference = cat
            .get(&r.label)
            .ok_or_else(|| Error::inconsistency(format!("no reference group {}", r.label)))?;
        if is_isomorphic(g, &reference.group, opts.seed)?.is_none() {
            reference_mismatches.push(r.case.clone());
        }
    }
    Ok(PairwiseCheck {
        pairs,
        mismatches,
        reference_mismatches,
    })
}

/// Whether `μ₃` is irrelevant for a type II profile: flipping it gives an
/// isomorphic Koch group.
pub fn mu3_insensitive(profile: &SymbolProfile, opts: IdentifyOptions) -> Result<bool> {
    if profile.type_ != TowerType::II {
        return Err(Error::domain("μ₃ pairing applies to type II"));
    }
    let flipped = SymbolProfile::from_free_bits(TowerType::II, profile.free_bits() ^ (1 << 5));
    let a = koch_group(profile, opts)?;
    let b = koch_group(&flipped, opts)?;
    Ok(is_isomorphic(&a, &b, opts.seed)?.is_some())
}
