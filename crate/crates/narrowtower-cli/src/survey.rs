//! Range surveys over real quadratic fields with four prime discriminants.

use std::time::Instant;

use narrowtower::intarith::{check_fundamental, factor_prime_discriminants, FactoredDiscriminant};
use narrowtower::kochid::{tower_report_with, IdentifyOptions};
use narrowtower::towerclassify::TowerType;
use narrowtower::Error;
use rayon::prelude::*;
use serde::Serialize;

use crate::record::ReportRecord;

/// Largest accepted `--max`.
pub const SURVEY_LIMIT: u64 = 1_000_000_000;

/// Discriminants are processed in blocks of this size; each block is
/// computed in parallel and written in order.
const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Default)]
pub struct Filters {
    pub type_: Option<TowerType>,
    pub case: Option<String>,
    pub label: Option<String>,
    pub four_rank: Option<u32>,
}

impl Filters {
    fn keeps(&self, r: &ReportRecord) -> bool {
        self.type_.is_none_or(|t| r.type_ == t.to_string())
            && self.case.as_ref().is_none_or(|c| &r.case == c)
            && self.label.as_ref().is_none_or(|l| r.gplus_label.as_ref() == Some(l))
            && self.four_rank.is_none_or(|k| r.four_rank == k)
    }
}

/// Factorization of `d` when it is a fundamental discriminant of the
/// studied shape, `None` otherwise.
pub fn family_member(d: i64) -> Option<FactoredDiscriminant> {
    check_fundamental(d).ok()?;
    let fd = factor_prime_discriminants(d).ok()?;
    fd.check_family().ok()?;
    Some(fd)
}

pub fn report_record(fd: &FactoredDiscriminant, opts: IdentifyOptions, timing: bool) -> Result<ReportRecord, Error> {
    let t = Instant::now();
    let r = tower_report_with(fd, opts)?;
    let us = timing.then(|| t.elapsed().as_micros() as u64);
    Ok(ReportRecord::new(&r, us))
}

/// Per-case count for `--stats`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseCount {
    #[serde(rename = "type")]
    pub type_: String,
    pub case: String,
    pub count: usize,
}

/// Why a survey stopped early.
#[derive(Debug)]
pub enum SurveyStop {
    Output(std::io::Error),
    Failed { discriminant: i64, error: Error },
}

/// Surveys `1..=max`, passing each kept record to `emit` in increasing
/// order of the discriminant. Stops at the first failing discriminant,
/// after emitting every record below it.
pub fn survey(
    max: u64,
    filters: &Filters,
    opts: IdentifyOptions,
    timing: bool,
    mut emit: impl FnMut(ReportRecord) -> std::io::Result<()>,
) -> Result<(), SurveyStop> {
    let mut start = 1u64;
    while start <= max {
        let end = max.min(start + BLOCK - 1);
        let block: Vec<(i64, Result<ReportRecord, Error>)> = (start..=end)
            .into_par_iter()
            .filter_map(|d| {
                let d = d as i64;
                family_member(d).map(|fd| (d, report_record(&fd, opts, timing)))
            })
            .collect();
        for (d, r) in block {
            match r {
                Ok(rec) if filters.keeps(&rec) => emit(rec).map_err(SurveyStop::Output)?,
                Ok(_) => {}
                Err(error) => return Err(SurveyStop::Failed { discriminant: d, error }),
            }
        }
        start = end + 1;
    }
    Ok(())
}

/// Tallies records by case, in order of first appearance of the type and
/// then by case name.
pub fn tally(records: &[ReportRecord]) -> Vec<CaseCount> {
    let mut counts: std::collections::BTreeMap<(String, String), usize> = Default::default();
    for r in records {
        *counts.entry((r.type_.clone(), r.case.clone())).or_default() += 1;
    }
    let mut out: Vec<CaseCount> = counts
        .into_iter()
        .map(|((type_, case), count)| CaseCount { type_, case, count })
        .collect();
    let rank = |t: &str| TowerType::ALL.iter().position(|x| x.to_string() == t);
    out.sort_by_key(|a| (rank(&a.type_), case_key(&a.case)));
    out
}

/// Orders `alpha, A1.., a1, a2, .., a10` as in the case tables.
fn case_key(c: &str) -> (u8, String, u32) {
    let (head, digits): (String, String) = c.chars().partition(|ch| !ch.is_ascii_digit());
    let class = if digits.is_empty() {
        0
    } else if head.chars().all(|ch| ch.is_ascii_uppercase()) {
        1
    } else {
        2
    };
    (class, head, digits.parse().unwrap_or(0))
}
