use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_narrowtower"))
        .args(args)
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn jsonl(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn classify_signed_factors() {
    let o = run(&["classify", "--factors", "5,89,-19,-7"]);
    assert_eq!(code(&o), 0);
    let r = &jsonl(&o)[0];
    assert_eq!(r["discriminant"], 59185);
    assert_eq!(r["case"], "a5");
    assert_eq!(r["gplus_label"], "32.033");
    assert_eq!(r["predicted_rank"], "=3");
}

#[test]
fn classify_all_negative_magnitudes() {
    let o = run(&["classify", "--factors", "3,8,11,23", "--all-negative"]);
    assert_eq!(code(&o), 0);
    let r = &jsonl(&o)[0];
    assert_eq!((r["type"].as_str(), r["case"].as_str()), (Some("III"), Some("c3")));
    assert_eq!(r["gplus_label"], "64.150");
}

#[test]
fn out_of_family_and_bad_input_exit_two() {
    let o = run(&["classify", "--disc", "60"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 prime discriminant factors"));
    assert_eq!(code(&run(&["classify", "--disc", "59186"])), 2);
    assert_eq!(code(&run(&["classify"])), 2);
    assert_eq!(code(&run(&["verify", "nonsense"])), 2);
    assert_eq!(code(&run(&["survey", "--max", "10", "--type", "V"])), 2);
}

#[test]
fn resource_bound_exits_three() {
    let o = run(&["classify", "--disc", "59185", "--coset-budget", "10"]);
    assert_eq!(code(&o), 3);
    let o = run(&["survey", "--max", "5000", "--coset-budget", "10"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("partial"));
    assert_eq!(code(&run(&["survey", "--max", "2000000000"])), 3);
}

#[test]
fn empty_survey() {
    let o = run(&["survey", "--max", "0"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
}

#[test]
fn survey_is_deterministic_and_formats_agree() {
    let a = run(&["survey", "--max", "30000", "--no-timing"]);
    let b = run(&["survey", "--max", "30000", "--no-timing"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let json = jsonl(&a);
    let ds: Vec<i64> = json.iter().map(|r| r["discriminant"].as_i64().unwrap()).collect();
    assert!(ds.windows(2).all(|w| w[0] < w[1]));

    let c = run(&["survey", "--max", "30000", "--no-timing", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(c.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), json.len());
    for (row, j) in rows.iter().zip(&json) {
        for (h, field) in headers.iter().zip(row.iter()) {
            let v = &j[h];
            let as_text = match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(field, as_text, "{h}");
        }
    }
}

#[test]
fn survey_filters() {
    let o = run(&[
        "survey",
        "--max",
        "100000",
        "--label",
        "32.033",
        "--stats",
        "--no-timing",
    ]);
    assert_eq!(code(&o), 0);
    let allowed: BTreeSet<&str> = ["a5", "a6", "a8", "b4", "b6", "c2", "d5", "d8"].into();
    let rows = jsonl(&o);
    assert!(!rows.is_empty());
    for r in &rows {
        assert!(allowed.contains(r["case"].as_str().unwrap()), "{r}");
        assert!(r["count"].as_u64().unwrap() > 0);
    }
    let o = run(&["survey", "--max", "100000", "--four-rank", "2", "--no-timing"]);
    for r in jsonl(&o) {
        assert!(["alpha", "beta"].contains(&r["case"].as_str().unwrap()), "{r}");
    }
    let o = run(&[
        "survey",
        "--max",
        "20000",
        "--type",
        "IV",
        "--case",
        "d5",
        "--no-timing",
    ]);
    for r in jsonl(&o) {
        assert_eq!((r["type"].as_str(), r["case"].as_str()), (Some("IV"), Some("d5")));
    }
}

#[test]
fn verify_suites_pass() {
    for suite in ["appendix1", "census", "appendix3", "section8"] {
        let o = run(&["verify", suite]);
        let out = String::from_utf8_lossy(&o.stdout);
        assert_eq!(code(&o), 0, "{suite}: {out}");
        assert!(!out.contains("FAIL"));
    }
    let o = run(&["verify", "oracles", "--max", "5000"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = run(&["verify", "appendix2", "--max", "10000"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn verify_failure_exits_one() {
    let dir = std::env::temp_dir().join(format!("narrowtower-bad-data-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = concat!(env!("CARGO_MANIFEST_DIR"), "/../narrowtower/data");
    for f in [
        "appendix1.tbl",
        "appendix2.tbl",
        "appendix3.tbl",
        "table1.tbl",
        "examples.tbl",
    ] {
        let mut text = std::fs::read_to_string(format!("{src}/{f}")).unwrap();
        if f == "examples.tbl" {
            // Relabel the (a5) example.
            text = text.replacen("32.033 | a5", "32.036 | a5", 1);
        }
        std::fs::write(dir.join(f), text).unwrap();
    }
    let o = Command::new(env!("CARGO_BIN_EXE_narrowtower"))
        .args(["verify", "section8"])
        .env("NARROWTOWER_DATA", &dir)
        .output()
        .unwrap();
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("first counterexample: a5"));
}
