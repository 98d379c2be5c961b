//! Koch presentations of `G⁺/G₃⁺`, their identification against a small
//! reference catalog, and the resulting prediction for `rank Cl₂(k₊¹)`.

pub mod appendix3;
pub mod catalog;
pub mod koch;
pub mod theorem;

pub use appendix3::{check_pairwise, check_row, mu3_insensitive, row_profile, PairwiseCheck, RowCheck};
pub use catalog::{
    catalog, identify_label, identify_label_with, koch_group, CatalogEntry, CatalogSource, IdentifyOptions,
    ReferenceCatalog, DEFAULT_SEED, ORDER_64_EXEMPLARS,
};
pub use koch::{koch_presentation, KochPresentation};
pub use theorem::{
    predict_rank, prop3_test, prop3_test_unpinned, tower_report, tower_report_with, RankPrediction, TowerReport,
};
