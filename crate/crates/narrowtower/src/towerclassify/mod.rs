//! Symbol profiles, case classification, the diagram census and the
//! `Gal(k²/k)` pipeline, driven by the embedded tables.

pub mod census;
pub mod classify;
pub mod profile;
pub mod report;
pub mod tables;

pub use census::{diagram_census, Census};
pub use classify::{classify_case, classify_discriminant, CaseLabel};
pub use profile::*;
pub use report::{
    galois_k2_report, taussky_classify, taussky_classify_groups, taussky_tag, ClassSubgroup, GType, GalK2Detail,
    GalK2Report, TausskyTag,
};
pub use tables::{
    data, Appendix1Row, Appendix2Row, Appendix3Row, DataStore, ExampleRow, H2Expr, Monomial, SymbolConstraint,
    Table1Row, Transform,
};
