use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fpgroups::{
    commutator_aliases, is_isomorphic, parse_relations, realize, Fingerprint, FiniteGroup, Presentation, Word,
    DEFAULT_COSET_BUDGET,
};
use crate::kochid::koch::koch_presentation;
use crate::towerclassify::{data, SymbolProfile};

/// Cases whose Koch group defines each order-64 label.
pub const ORDER_64_EXEMPLARS: [(&str, &str); 4] =
    [("64.144", "a1"), ("64.146", "b5"), ("64.147", "a9"), ("64.150", "c3")];

/// Seed used for isomorphism searches unless a caller supplies one.
pub const DEFAULT_SEED: u64 = 0x2C1A_55F1;

/// Where a catalog group comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CatalogSource {
    /// A row of the table of order-32 groups.
    Table1 { line: usize },
    /// The s-relations of a Koch presentation row.
    Case { case: String },
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: String,
    pub source: CatalogSource,
    pub presentation: Presentation,
    pub group: FiniteGroup,
    pub fingerprint: Fingerprint,
    /// Structure of `G'` as printed in the table (order 32 only).
    pub derived_structure: Option<String>,
    /// Schur multiplier of `G/G₃` as printed in the table (order 32 only).
    pub schur_multiplier: Option<String>,
}

/// The reference groups `G⁺/G₃⁺` are identified against. Realizations are
/// pairwise non-isomorphic.
#[derive(Debug, Clone)]
pub struct ReferenceCatalog {
    pub entries: Vec<CatalogEntry>,
}

/// Budget and seed for coset enumeration and isomorphism search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentifyOptions {
    pub seed: u64,
    pub coset_budget: usize,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions {
            seed: DEFAULT_SEED,
            coset_budget: DEFAULT_COSET_BUDGET,
        }
    }
}

fn a_presentation(text: &str) -> Result<Presentation> {
    a_presentation_of(&parse_relations(
        &["a1", "a2", "a3"],
        &commutator_aliases('c', 3),
        text,
    )?)
}

pub(crate) fn a_presentation_of(relators: &[Word]) -> Result<Presentation> {
    let gens = ["a1", "a2", "a3"];
    Ok(Presentation::new(gens.iter().map(|g| g.to_string()).collect(), relators.to_vec())?.class_two_quotient())
}

pub(crate) fn s_presentation(text: &str) -> Result<Presentation> {
    let gens = ["s1", "s2", "s3"];
    let rels = parse_relations(&gens, &commutator_aliases('t', 3), text)?;
    Ok(Presentation::new(gens.iter().map(|g| g.to_string()).collect(), rels)?.class_two_quotient())
}

impl ReferenceCatalog {
    pub fn build(opts: IdentifyOptions) -> Result<Self> {
        let store = data()?;
        let mut entries = Vec::new();
        for row in &store.table1 {
            let presentation = a_presentation(&row.relations)?;
            let group = realize(&presentation, opts.coset_budget)?;
            entries.push(CatalogEntry {
                label: row.label.clone(),
                source: CatalogSource::Table1 { line: row.line },
                fingerprint: group.fingerprint(),
                presentation,
                group,
                derived_structure: Some(row.derived.clone()),
                schur_multiplier: Some(row.schur.clone()),
            });
        }
        for (label, case) in ORDER_64_EXEMPLARS {
            let row = store
                .appendix3_row(case)
                .ok_or_else(|| Error::inconsistency(format!("exemplar case {case} missing")))?;
            if row.label != label {
                return Err(Error::inconsistency(format!(
                    "exemplar {case} is labelled {} in the table, not {label}",
                    row.label
                )));
            }
            let presentation = s_presentation(&row.s_relations)?;
            let group = realize(&presentation, opts.coset_budget)?;
            entries.push(CatalogEntry {
                label: label.into(),
                source: CatalogSource::Case { case: case.into() },
                fingerprint: group.fingerprint(),
                presentation,
                group,
                derived_structure: None,
                schur_multiplier: None,
            });
        }
        for e in &entries {
            let expected: usize = e.label[..2].parse().expect("labels start with the order");
            if e.group.order() != expected {
                return Err(Error::inconsistency(format!(
                    "catalog group {} has order {}",
                    e.label,
                    e.group.order()
                )));
            }
        }
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                if is_isomorphic(&a.group, &b.group, opts.seed)?.is_some() {
                    return Err(Error::inconsistency(format!(
                        "catalog groups {} and {} are isomorphic",
                        a.label, b.label
                    )));
                }
            }
        }
        Ok(ReferenceCatalog { entries })
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.label.as_str())
    }

    /// Unique catalog label of a realized group, or `None`.
    pub fn identify_group(&self, g: &FiniteGroup, seed: u64) -> Result<Option<&CatalogEntry>> {
        let fp = g.fingerprint();
        let mut hits = Vec::new();
        for e in self.entries.iter().filter(|e| e.fingerprint == fp) {
            if is_isomorphic(g, &e.group, seed)?.is_some() {
                hits.push(e);
            }
        }
        match hits.as_slice() {
            [] => Ok(None),
            [e] => Ok(Some(*e)),
            _ => Err(Error::inconsistency("group matches several catalog entries")),
        }
    }
}

static CATALOG: OnceLock<std::result::Result<ReferenceCatalog, Error>> = OnceLock::new();

/// The catalog built with default options, shared by the process.
pub fn catalog() -> Result<&'static ReferenceCatalog> {
    CATALOG
        .get_or_init(|| ReferenceCatalog::build(IdentifyOptions::default()))
        .as_ref()
        .map_err(Clone::clone)
}

/// Realizes the class-two Koch group of `profile`. An infinite group is
/// reported as out of family before any enumeration.
pub fn koch_group(profile: &SymbolProfile, opts: IdentifyOptions) -> Result<FiniteGroup> {
    let p = koch_presentation(profile).class_two();
    let ab = p.abelian_invariants();
    if ab.contains(&0) {
        return Err(Error::out_of_family(format!(
            "Koch group of {profile} is infinite (abelianization {ab:?})"
        )));
    }
    realize(&p, opts.coset_budget)
}

/// [`identify_label_with`] with default options.
pub fn identify_label(profile: &SymbolProfile) -> Result<String> {
    identify_label_with(profile, IdentifyOptions::default())
}

/// Catalog label of the Koch group of `profile`. Infinite groups and groups
/// of order above 64 are out of family; a small group matching no catalog
/// entry is an inconsistency.
pub fn identify_label_with(profile: &SymbolProfile, opts: IdentifyOptions) -> Result<String> {
    let g = koch_group(profile, opts)?;
    if g.order() > 64 {
        return Err(Error::out_of_family(format!(
            "Koch group of {profile} has order {} > 64",
            g.order()
        )));
    }
    let cat = catalog()?;
    cat.identify_group(&g, opts.seed)?
        .map(|e| e.label.clone())
        .ok_or_else(|| {
            Error::inconsistency(format!(
                "Koch group of {profile} (order {}) matches no catalog group",
                g.order()
            ))
        })
}
