use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intarith::FactoredDiscriminant;
use crate::kochid::catalog::{identify_label_with, IdentifyOptions, ORDER_64_EXEMPLARS};
use crate::towerclassify::{
    all_permutations, classify_discriminant, data, galois_k2_report, symbol_profile, CaseLabel, GalK2Report,
    SymbolProfile,
};

/// Predicted rank of `Cl₂(k₊¹)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RankPrediction {
    AtLeast3,
    Exactly3,
    Exactly2,
}

impl RankPrediction {
    /// Whether a rank `r` is compatible with the prediction.
    pub fn admits(self, r: usize) -> bool {
        match self {
            RankPrediction::AtLeast3 => r >= 3,
            RankPrediction::Exactly3 => r == 3,
            RankPrediction::Exactly2 => r == 2,
        }
    }
}

impl fmt::Display for RankPrediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankPrediction::AtLeast3 => ">=3",
            RankPrediction::Exactly3 => "=3",
            RankPrediction::Exactly2 => "=2",
        })
    }
}

/// `≥3` for order 64, `=3` for 32.033, `=2` for the other order-32 labels.
pub fn predict_rank(label: &str) -> Result<RankPrediction> {
    let known = data()?.table1.iter().any(|r| r.label == label) || ORDER_64_EXEMPLARS.iter().any(|(l, _)| *l == label);
    if !known {
        return Err(Error::domain(format!("unknown group label {label:?}")));
    }
    Ok(if label.starts_with("64.") {
        RankPrediction::AtLeast3
    } else if label == "32.033" {
        RankPrediction::Exactly3
    } else {
        RankPrediction::Exactly2
    })
}

/// The symbol criterion for `G⁺/G₃⁺ ≅ 32.033`, tried over every ordering
/// of the parts.
///
/// With two negative parts: `d₁, d₂ > 0`, any `−4` sits in slot 4,
/// `(d₁/p₄) = +1` and `(d₂/p₃) = (d₂/p₄) = (d₁/p₂p₃) = −1`. With four:
/// `(d₁/p₂) = (d₁/p₃) = (d₂/p₃) = (d₂/p₄) = (d₄/p₁) = (d₄/p₃) = −1`, any
/// `−4` sits in slot 4, and then `(d₃/p₄) = +1`.
pub fn prop3_test(profile: &SymbolProfile) -> bool {
    prop3_with(profile, true)
}

/// [`prop3_test`] without pinning `−4` to slot 4 in the all-negative
/// condition. Accepts some type IV profiles whose group is not 32.033.
pub fn prop3_test_unpinned(profile: &SymbolProfile) -> bool {
    prop3_with(profile, false)
}

fn prop3_with(profile: &SymbolProfile, pin_all_negative: bool) -> bool {
    let t = profile.type_;
    all_permutations().iter().any(|sigma| {
        let q = profile.permuted(sigma);
        let neg = |i: usize| t.is_negative(sigma[i - 1]);
        let m4 = |i: usize| t.minus_four_slot() == Some(sigma[i - 1]);
        let m4_last = t.minus_four_slot().is_none() || m4(4);
        let odd = |i: usize, j: usize| q.nu(i, j) == 1;
        let first = !neg(1)
            && !neg(2)
            && neg(3)
            && neg(4)
            && m4_last
            && !odd(1, 4)
            && odd(2, 3)
            && odd(2, 4)
            && (q.nu(1, 2) + q.nu(1, 3)) % 2 == 1;
        let second = (1..=4).all(neg)
            && (m4_last || !pin_all_negative)
            && odd(1, 2)
            && odd(1, 3)
            && odd(2, 3)
            && odd(2, 4)
            && odd(4, 1)
            && odd(4, 3)
            && (!m4(4) || !odd(3, 4));
        first || second
    })
}

/// Everything known about one field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub discriminant: i64,
    /// Parts as given.
    pub parts: [i64; 4],
    pub case: CaseLabel,
    pub four_rank: u32,
    pub g_report: Option<GalK2Report>,
    pub gplus_label: Option<String>,
    pub predicted_rank: Option<RankPrediction>,
    pub prop3: bool,
    /// Why the label is missing, when it is.
    pub note: Option<String>,
}

pub fn tower_report(fd: &FactoredDiscriminant) -> Result<TowerReport> {
    tower_report_with(fd, IdentifyOptions::default())
}

/// Classification, `Gal(k²/k)` (elementary `Cl₂(k)` only), the Koch label
/// and the rank prediction. The Koch group is built from the parts in type
/// layout; the label must agree with the case tables.
pub fn tower_report_with(fd: &FactoredDiscriminant, opts: IdentifyOptions) -> Result<TowerReport> {
    let (case, _) = classify_discriminant(fd)?;
    let (layout, _) = fd.in_type_layout()?;
    let profile = symbol_profile(&layout)?;
    let g_report = if case.four_rank == 0 {
        Some(galois_k2_report(fd)?)
    } else {
        None
    };
    let (gplus_label, note) = match identify_label_with(&profile, opts) {
        Ok(l) => (Some(l), None),
        Err(e @ Error::OutOfFamily(_)) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let store = data()?;
    let tabled = store
        .appendix3_row(&case.name)
        .map(|r| r.label.as_str())
        .or_else(|| g_report.as_ref().and_then(|g| g.table_label.as_deref()));
    if let (Some(l), Some(t)) = (&gplus_label, tabled) {
        if l != t {
            return Err(Error::inconsistency(format!(
                "Koch group of {fd} is {l}, but case {} is tabled as {t}",
                case.name
            )));
        }
    }
    let prop3 = prop3_test(&profile);
    if let Some(l) = &gplus_label {
        if (l == "32.033") != prop3 {
            return Err(Error::inconsistency(format!(
                "symbol criterion gives {prop3} for {fd}, Koch label is {l}"
            )));
        }
    }
    let predicted_rank = gplus_label.as_deref().map(predict_rank).transpose()?;
    let p = fd.parts();
    Ok(TowerReport {
        discriminant: fd.value(),
        parts: [p[0].value(), p[1].value(), p[2].value(), p[3].value()],
        four_rank: case.four_rank,
        case,
        g_report,
        gplus_label,
        predicted_rank,
        prop3,
        note,
    })
}
