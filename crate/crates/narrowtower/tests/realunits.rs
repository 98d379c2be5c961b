use narrowtower::intarith::{check_fundamental, factor_prime_discriminants, FactoredDiscriminant};
use narrowtower::realunits::*;
use num_bigint::BigInt;

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt() as i128;
    ((r - 2).max(0)..=r + 2).find(|x| x * x == n)
}

const SEARCH_LIMIT: i128 = 200_000;

/// Smallest `y ≥ 1` with `Dy² ± 4` a square, which gives the fundamental
/// unit, or `None` past the search limit.
fn brute_unit(d: i64) -> Option<(i128, i128, i8)> {
    let d = d as i128;
    (1..=SEARCH_LIMIT).find_map(|y| {
        isqrt(d * y * y - 4)
            .map(|x| (x, y, -1))
            .or_else(|| isqrt(d * y * y + 4).map(|x| (x, y, 1)))
    })
}

#[test]
fn continued_fraction_unit_matches_search() {
    for d in 5..600 {
        if check_fundamental(d).is_err() {
            continue;
        }
        let u = fundamental_unit(d).unwrap();
        assert_eq!(u.computed_norm(), BigInt::from(u.norm));
        let Some((x, y, n)) = brute_unit(d) else {
            assert!(u.y > BigInt::from(SEARCH_LIMIT), "D = {d}");
            continue;
        };
        assert_eq!(
            (u.x.clone(), u.y.clone(), u.norm),
            (BigInt::from(x), BigInt::from(y), n),
            "D = {d}"
        );
        assert_eq!(u.computed_norm(), BigInt::from(n));
    }
}

#[test]
fn unit_of_imaginary_field_is_rejected() {
    assert!(fundamental_unit(-3).is_err());
    assert!(fundamental_unit(20).is_err());
}

#[test]
fn delta_examples() {
    assert_eq!(delta_of_unit(133).unwrap(), DeltaValue::Value(7));
    assert_eq!(delta_of_unit(5).unwrap(), DeltaValue::NormMinusOne);
    // ε = 2 + √3 in Q(√12): N(1 + ε) = (3)² − 3 = 6.
    assert_eq!(delta_of_unit(12).unwrap(), DeltaValue::Value(6));
    let fd = FactoredDiscriminant::from_values(&[-7, -19]).unwrap();
    assert_eq!(delta_via_genus(&fd).unwrap().singleton(), Some(7));
}

#[test]
fn unit_delta_is_a_genus_candidate() {
    let mut compared = 0;
    for d in 5..6000 {
        if check_fundamental(d).is_err() {
            continue;
        }
        let fd = factor_prime_discriminants(d).unwrap();
        if !(2..=4).contains(&fd.len()) {
            continue;
        }
        let DeltaValue::Value(v) = delta_of_unit(d).unwrap() else {
            continue;
        };
        let g = delta_via_genus(&fd).unwrap();
        assert!(g.norms.contains(&v), "D = {d}: δ = {v}, candidates {:?}", g.norms);
        compared += 1;
    }
    assert!(compared > 500);
}

#[test]
fn genus_table_rows_are_characters() {
    let fd = FactoredDiscriminant::from_values(&[5, 89, -19, -7]).unwrap();
    let t = genus_character_table(&fd).unwrap();
    // Product formula: the characters multiply to 1 on each ramified prime.
    for j in 0..4 {
        assert_eq!(t.row_product(1 << j).iter().map(|&v| v as i32).product::<i32>(), 1);
    }
    // (d_3/p_1) = (−19/5) = (1/5).
    assert_eq!(t.entries[0][2], 1);
    assert!(genus_character_table(&FactoredDiscriminant::from_values(&[5]).unwrap()).is_err());
}

#[test]
fn delta_of_unit_of_q_sqrt_p_for_p_three_mod_four() {
    // δ = 2p for p ≡ 3 mod 8 and 2 for p ≡ 7 mod 8.
    for p in (3..5000i64)
        .step_by(4)
        .filter(|&p| narrowtower::intarith::is_prime(p as u64))
    {
        let want = if p % 8 == 3 { 2 * p as u64 } else { 2 };
        assert_eq!(delta_of_unit(4 * p).unwrap(), DeltaValue::Value(want), "p = {p}");
    }
}
