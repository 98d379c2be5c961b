use std::collections::{BTreeMap, BTreeSet};

use narrowtower::intarith::{check_fundamental, factor_prime_discriminants, kronecker_symbol, FactoredDiscriminant};
use narrowtower::quadforms::four_rank_splittings;
use narrowtower::towerclassify::*;
use narrowtower::Error;
use proptest::prelude::*;

fn family(d: i64) -> Option<FactoredDiscriminant> {
    check_fundamental(d).ok()?;
    let fd = factor_prime_discriminants(d).ok()?;
    fd.check_family().ok()?;
    Some(fd)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn table_sizes() {
    let d = data().unwrap();
    assert_eq!(d.appendix1.len(), 56);
    let per_type: BTreeMap<TowerType, usize> = d.appendix1.iter().fold(BTreeMap::new(), |mut m, r| {
        *m.entry(r.type_).or_default() += 1;
        m
    });
    assert_eq!(per_type.values().copied().collect::<Vec<_>>(), vec![20, 20, 4, 12]);
    assert_eq!(d.appendix3.len(), 37);
    assert_eq!(d.table1.len(), 9);
    assert_eq!(d.examples.len(), 37);
}

#[test]
fn every_row_classifies_as_itself() {
    for row in &data().unwrap().appendix1 {
        let p = row.canonical_profile().unwrap();
        let c = classify_case(&p).unwrap();
        assert_eq!((c.name.as_str(), c.four_rank), (row.name.as_str(), row.four_rank));
        assert_eq!(p.four_rank(), row.four_rank);
    }
}

#[test]
fn every_profile_has_exactly_one_case() {
    for t in TowerType::ALL {
        for p in SymbolProfile::all_of_type(t) {
            let c = classify_case(&p).unwrap();
            assert_eq!(c.type_, t);
            for sigma in t.allowed_permutations() {
                assert_eq!(classify_case(&p.permuted(&sigma)).unwrap().name, c.name, "{p}");
            }
        }
    }
}

#[test]
fn census_totals() {
    let got: Vec<(usize, usize)> = TowerType::ALL
        .iter()
        .map(|&t| {
            let c = diagram_census(t).unwrap();
            (c.total, c.counts.len())
        })
        .collect();
    assert_eq!(got, vec![(32, 20), (32, 20), (8, 4), (32, 12)]);
    let c = diagram_census(TowerType::III).unwrap();
    assert_eq!(
        (c.count("C"), c.count("c1"), c.count("c2"), c.count("c3")),
        (Some(3), Some(3), Some(1), Some(1))
    );
}

#[test]
fn parse_errors_name_file_and_line() {
    let bad = read("appendix1.tbl").replacen("| I ", "| V ", 1);
    let line = bad.lines().position(|l| l.contains("| V ")).unwrap() + 1;
    let err = DataStore::from_texts(
        &bad,
        &read("appendix2.tbl"),
        &read("appendix3.tbl"),
        &read("table1.tbl"),
        &read("examples.tbl"),
    )
    .unwrap_err();
    match err {
        Error::Parse { file, line: l, .. } => assert_eq!((file.as_str(), l), ("appendix1.tbl", line)),
        e => panic!("unexpected {e}"),
    }
    let bad = read("examples.tbl").replacen("89,5,19,7", "89,5,19", 1);
    assert!(matches!(
        DataStore::from_texts(
            &read("appendix1.tbl"),
            &read("appendix2.tbl"),
            &read("appendix3.tbl"),
            &read("table1.tbl"),
            &bad
        ),
        Err(Error::Parse { .. })
    ));
}

#[test]
fn embedded_tables_match_files() {
    let dir = DataStore::from_dir(std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data"))).unwrap();
    let emb = DataStore::embedded().unwrap();
    assert_eq!(dir.appendix1, emb.appendix1);
    assert_eq!(dir.examples, emb.examples);
}

#[test]
fn expressions_round_trip() {
    for text in ["4h2(d1d3d4)", "2h2(p1p2)", "4", "h2(d2)"] {
        let e: H2Expr = text.parse().unwrap();
        assert_eq!(e.to_string(), text);
    }
    for text in ["p3p4", "2p1", "p1p4", "q"] {
        let m: Monomial = text.parse().unwrap();
        assert_eq!(m.to_string(), text);
    }
}

#[test]
fn four_rank_of_fields_matches_splittings() {
    for d in 1..60_000 {
        let Some(fd) = family(d) else { continue };
        let (c, _) = classify_discriminant(&fd).unwrap();
        assert_eq!(c.four_rank, four_rank_splittings(&fd).unwrap(), "d = {d}");
    }
}

#[test]
fn taussky_table_is_a_bijection() {
    use TausskyTag::*;
    let tags = [Full, A, B];
    let mut images = BTreeMap::new();
    for i in 0..3 {
        for j in i..3 {
            for k in j..3 {
                if let Ok(g) = taussky_classify(&[tags[i], tags[j], tags[k]]) {
                    assert!(images.insert(g.to_string(), (i, j, k)).is_none());
                }
            }
        }
    }
    let mut names: Vec<String> = GType::ALL.iter().map(ToString::to_string).collect();
    names.sort();
    assert_eq!(images.keys().cloned().collect::<Vec<_>>(), names);
}

#[test]
fn taussky_from_subgroups() {
    let s = |xs: &[u8]| -> ClassSubgroup { xs.iter().copied().collect() };
    let whole = s(&[0, 1, 2, 3]);
    let (x, y, z) = (s(&[0, 1]), s(&[0, 2]), s(&[0, 3]));
    assert_eq!(taussky_tag(&whole, &x).unwrap(), TausskyTag::Full);
    assert_eq!(taussky_tag(&x, &x).unwrap(), TausskyTag::A);
    assert_eq!(taussky_tag(&x, &y).unwrap(), TausskyTag::B);
    assert!(taussky_tag(&s(&[0]), &x).is_err());
    let g = |p: [(ClassSubgroup, ClassSubgroup); 3]| taussky_classify_groups(&p).unwrap();
    assert_eq!(
        g([
            (whole.clone(), x.clone()),
            (whole.clone(), y.clone()),
            (whole.clone(), z.clone())
        ]),
        GType::V4
    );
    assert_eq!(
        g([(x.clone(), x.clone()), (y.clone(), y.clone()), (z.clone(), z.clone())]),
        GType::Q
    );
    assert_eq!(
        g([(x.clone(), x.clone()), (x.clone(), y.clone()), (y.clone(), z.clone())]),
        GType::Qg
    );
    assert_eq!(
        g([
            (whole.clone(), x.clone()),
            (x.clone(), y.clone()),
            (y.clone(), z.clone())
        ]),
        GType::D
    );
    assert_eq!(
        g([(x.clone(), y.clone()), (y.clone(), z.clone()), (z.clone(), x.clone())]),
        GType::S
    );
}

#[test]
fn worked_example_pipeline() {
    let fd = FactoredDiscriminant::from_values(&[13, 5, -23, -3]).unwrap();
    let r = galois_k2_report(&fd).unwrap();
    assert_eq!(r.case.name, "a8");
    let d = r.detail.unwrap();
    assert_eq!(d.deltas[0], 23 * 3);
    assert_eq!(d.deltas[1], 23 * 3);
    assert!([13, 3, 39].contains(&d.deltas[2]));
    assert_eq!((d.q_indices[0], d.q_indices[2]), (2, 2));
    assert_eq!((d.h2_fields[0], d.h2_fields[2]), (4, 4));
    assert_eq!((r.g_type, r.g_order), (GType::D, 8));
}

#[test]
fn elementary_survey_is_consistent() {
    let mut seen: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for d in 1..30_000 {
        let Some(fd) = family(d) else { continue };
        let (c, _) = classify_discriminant(&fd).unwrap();
        if c.four_rank != 0 {
            assert!(matches!(galois_k2_report(&fd), Err(Error::OutOfFamily(_))));
            continue;
        }
        let r = galois_k2_report(&fd).unwrap_or_else(|e| panic!("d = {d}: {e}"));
        assert!(r.g_order >= 4 && r.g_order.is_power_of_two());
        if matches!(c.type_, TowerType::III | TowerType::IV) {
            assert_eq!((r.g_type, r.g_order), (GType::V4, 4));
        }
        seen.entry(c.name).or_default().insert(r.g_type.to_string());
    }
    assert!(seen.len() > 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_ignores_input_order(d in 1i64..400_000, sigma in proptest::sample::select(all_permutations())) {
        let Some(fd) = family(d) else { return Ok(()) };
        let (a, canon) = classify_discriminant(&fd).unwrap();
        let (b, canon_b) = classify_discriminant(&fd.permuted(&sigma)).unwrap();
        prop_assert_eq!(&a.name, &b.name);
        prop_assert_eq!(a.four_rank, b.four_rank);
        // The canonical ordering satisfies the case's row.
        let row = data().unwrap().appendix1_row(&a.name).unwrap();
        prop_assert!(row.matches(&symbol_profile(&canon).unwrap()));
        prop_assert!(row.matches(&symbol_profile(&canon_b).unwrap()));
        prop_assert_eq!(canon.value(), d);
    }

    #[test]
    fn profile_symbols_are_kronecker_symbols(d in 1i64..400_000) {
        let Some(fd) = family(d) else { return Ok(()) };
        let Ok((layout, _)) = fd.in_type_layout() else { return Ok(()) };
        let p = symbol_profile(&layout).unwrap();
        let parts = layout.parts();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let s = kronecker_symbol(parts[i].value(), parts[j].prime() as i64).unwrap();
                    prop_assert_eq!(p.symbol(i + 1, j + 1), s);
                }
            }
        }
    }
}
