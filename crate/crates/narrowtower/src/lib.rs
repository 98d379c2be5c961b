//! Narrow 2-class field towers of real quadratic fields `k` whose 2-class
//! group has rank 2 and whose discriminant is not a sum of two squares.
//!
//! The crate is layered bottom-up:
//!
//! * [`intarith`]: Kronecker symbols, factoring, prime discriminants.
//! * [`quadforms`]: binary quadratic form class groups (class number oracle).
//! * [`realunits`]: fundamental units and the `δ` invariants.
//! * [`towerclassify`]: symbol profiles, case classification, the
//!   `Gal(k²/k)` pipeline.
//! * [`fpgroups`]: coset enumeration and small 2-group machinery.
//! * [`kochid`]: Koch presentations of `G⁺/G₃⁺`, label identification and
//!   the rank prediction for `Cl₂(k₊¹)`.

// Index loops over small matrices read more clearly than iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fpgroups;
pub mod intarith;
pub mod kochid;
pub mod quadforms;
pub mod realunits;
pub mod towerclassify;

pub use error::{Error, Result};
