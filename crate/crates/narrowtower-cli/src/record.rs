//! Flat output records and the two output formats.

use std::io::Write;

use narrowtower::kochid::TowerReport;
use serde::{Deserialize, Serialize};

/// One row of output for a discriminant. Lists are comma-joined so that
/// csv and jsonl carry the same scalar fields.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub discriminant: i64,
    pub parts: String,
    #[serde(rename = "type")]
    pub type_: String,
    pub case: String,
    pub four_rank: u32,
    /// Parts in the order of the canonical case pattern.
    pub canonical_parts: Option<String>,
    pub g_type: Option<String>,
    pub g_order: Option<u64>,
    pub gplus_label: Option<String>,
    pub predicted_rank: Option<String>,
    pub prop3: bool,
    pub note: Option<String>,
    /// Wall time spent on this record, absent with `--no-timing`.
    pub elapsed_us: Option<u64>,
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

impl ReportRecord {
    pub fn new(r: &TowerReport, elapsed_us: Option<u64>) -> Self {
        ReportRecord {
            discriminant: r.discriminant,
            parts: join(&r.parts),
            type_: r.case.type_.to_string(),
            case: r.case.name.clone(),
            four_rank: r.four_rank,
            canonical_parts: r.g_report.as_ref().map(|g| join(&g.canonical_parts)),
            g_type: r.g_report.as_ref().map(|g| g.g_type.to_string()),
            g_order: r.g_report.as_ref().map(|g| g.g_order),
            gplus_label: r.gplus_label.clone(),
            predicted_rank: r.predicted_rank.map(|p| p.to_string()),
            prop3: r.prop3,
            note: r.note.clone(),
            elapsed_us,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// Streams serializable rows in either format. Csv writes its header
/// before the first row.
pub enum RecordWriter<W: Write> {
    Jsonl(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        match format {
            Format::Jsonl => RecordWriter::Jsonl(out),
            Format::Csv => RecordWriter::Csv(Box::new(csv::Writer::from_writer(out))),
        }
    }

    pub fn write<T: Serialize>(&mut self, row: &T) -> std::io::Result<()> {
        match self {
            RecordWriter::Jsonl(w) => {
                serde_json::to_writer(&mut *w, row)?;
                w.write_all(b"\n")
            }
            RecordWriter::Csv(w) => w.serialize(row).map_err(std::io::Error::other),
        }
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        match self {
            RecordWriter::Jsonl(w) => w.flush(),
            RecordWriter::Csv(w) => w.flush(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ReportRecord> {
        vec![
            ReportRecord {
                discriminant: 59185,
                parts: "5,89,-19,-7".into(),
                type_: "I".into(),
                case: "a5".into(),
                four_rank: 0,
                canonical_parts: Some("89,5,-19,-7".into()),
                g_type: Some("(2,2)".into()),
                g_order: Some(8),
                gplus_label: Some("32.033".into()),
                predicted_rank: Some("=3".into()),
                prop3: true,
                note: None,
                elapsed_us: Some(12),
            },
            ReportRecord {
                discriminant: 1,
                parts: "-3,-7,-11,-19".into(),
                type_: "III".into(),
                case: "C".into(),
                four_rank: 1,
                canonical_parts: None,
                g_type: None,
                g_order: None,
                gplus_label: None,
                predicted_rank: None,
                prop3: false,
                note: Some("out of family: infinite, \"quoted\"".into()),
                elapsed_us: None,
            },
        ]
    }

    #[test]
    fn jsonl_round_trip() {
        let mut w = RecordWriter::new(Format::Jsonl, Vec::new());
        for r in sample() {
            w.write(&r).unwrap();
        }
        let RecordWriter::Jsonl(buf) = w else { unreachable!() };
        let back: Vec<ReportRecord> = String::from_utf8(buf)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(back, sample());
    }

    #[test]
    fn csv_round_trip() {
        let mut w = RecordWriter::new(Format::Csv, Vec::new());
        for r in sample() {
            w.write(&r).unwrap();
        }
        let RecordWriter::Csv(inner) = w else { unreachable!() };
        let buf = inner.into_inner().unwrap();
        let back: Vec<ReportRecord> = csv::Reader::from_reader(buf.as_slice())
            .deserialize()
            .collect::<Result<_, _>>()
            .unwrap();
        assert_eq!(back, sample());
    }
}
