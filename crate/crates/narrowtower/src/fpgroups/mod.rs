//! Finitely presented groups: parsing, coset enumeration, realization of
//! small finite groups and isomorphism testing.

pub mod enumerate;
pub mod iso;
pub mod presentation;
pub mod realization;

pub use enumerate::{enumerate_cosets, group_order, CosetTable, DEFAULT_COSET_BUDGET};
pub use iso::{
    is_isomorphic, is_isomorphic_bounded, verify_commutator_identities, CommutatorReport, IdentityCheck, Isomorphism,
    ISO_ORDER_BOUND,
};
pub use presentation::{
    commutator, commutator_aliases, concat, free_reduce, generator, inverse, parse_assignments, parse_relations,
    parse_word, power, Presentation, Word,
};
pub use realization::{realize, Fingerprint, FiniteGroup, Subgroup, MAX_REALIZED_ORDER};
