use narrowtower::intarith::*;
use narrowtower::Error;
use proptest::prelude::*;

fn mod_pow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Legendre symbol by Euler's criterion.
fn euler(a: i64, p: u64) -> i8 {
    let a = a.rem_euclid(p as i64) as u128;
    match mod_pow(a, (p as u128 - 1) / 2, p as u128) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn trial_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[test]
fn primality_matches_trial_division() {
    for n in 0..20_000 {
        assert_eq!(is_prime(n), trial_prime(n), "n = {n}");
    }
    assert!(is_prime(18_446_744_073_709_551_557));
    assert!(!is_prime(3_215_031_751));
}

#[test]
fn legendre_matches_euler() {
    for p in (3..400u64).filter(|&p| trial_prime(p)) {
        for a in -60..60 {
            assert_eq!(kronecker_symbol(a, p as i64).unwrap(), euler(a, p), "({a}/{p})");
        }
    }
}

#[test]
fn symbols_at_two() {
    // (a/2) is 0 for even a, +1 for a ≡ ±1 mod 8, −1 for a ≡ ±3 mod 8.
    for a in -40i64..40 {
        let expected = match a.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
        assert_eq!(kronecker_symbol(a, 2).unwrap(), expected, "({a}/2)");
    }
}

#[test]
fn fundamental_discriminants() {
    for d in [5, 8, 12, 13, -3, -4, -8, 60, 133, 59185, -84] {
        assert!(check_fundamental(d).is_ok(), "{d}");
    }
    for d in [0, 1, 9, 20, 45, 16, 2, 3, -1, -12, 59186] {
        assert!(check_fundamental(d).is_err(), "{d}");
    }
}

#[test]
fn prime_discriminant_factorization() {
    let fd = factor_prime_discriminants(59185).unwrap();
    let v: Vec<i64> = fd.parts().iter().map(|p| p.value()).collect();
    assert_eq!(v, vec![5, 89, -7, -19]);
    let fd = factor_prime_discriminants(-4 * 3 * 5 * 7).unwrap();
    assert_eq!(fd.parts().last().unwrap().value(), -4);
    assert_eq!(fd.value(), -420);
    assert!(matches!(
        factor_prime_discriminants(60).unwrap().check_family(),
        Err(Error::OutOfFamily(_))
    ));
}

#[test]
fn signs_from_magnitudes() {
    let v = |m: &[u64], neg: bool| -> Vec<i64> {
        FactoredDiscriminant::from_magnitudes(m, neg)
            .unwrap()
            .parts()
            .iter()
            .map(|p| p.value())
            .collect()
    };
    assert_eq!(v(&[89, 5, 19, 7], false), vec![89, 5, -19, -7]);
    assert_eq!(v(&[3, 8, 11, 23], true), vec![-3, -8, -11, -23]);
    assert_eq!(v(&[23, 7, 47, 4], false), vec![-23, -7, -47, -4]);
    assert_eq!(v(&[5, 8, 7, 3], false), vec![5, 8, -7, -3]);
    assert_eq!(v(&[5, 8, 7, 13], false), vec![5, -8, -7, 13]);
    assert!(FactoredDiscriminant::from_magnitudes(&[5, 3, 7, 11], true).is_err());
    assert!(FactoredDiscriminant::from_magnitudes(&[9, 3, 7, 11], false).is_err());
}

#[test]
fn order_counts_to_invariants() {
    // Z/2 × Z/4: orders 1:1, 2:3, 4:4.
    let counts = [(1, 1), (2, 3), (4, 4)].into_iter().collect();
    assert_eq!(invariants_from_order_counts(&counts), vec![2, 4]);
    // Z/6 ≅ Z/2 × Z/3.
    let counts = [(1, 1), (2, 1), (3, 2), (6, 2)].into_iter().collect();
    assert_eq!(invariants_from_order_counts(&counts), vec![6]);
}

proptest! {
    #[test]
    fn kronecker_multiplicative_in_top(a in -10_000i64..10_000, b in -10_000i64..10_000, n in 1i64..5_000) {
        let lhs = kronecker_symbol(a * b, n).unwrap();
        prop_assert_eq!(lhs, kronecker_symbol(a, n).unwrap() * kronecker_symbol(b, n).unwrap());
    }

    #[test]
    fn kronecker_multiplicative_in_bottom(a in -10_000i64..10_000, m in 1i64..3_000, n in 1i64..3_000) {
        let lhs = kronecker_symbol(a, m * n).unwrap();
        prop_assert_eq!(lhs, kronecker_symbol(a, m).unwrap() * kronecker_symbol(a, n).unwrap());
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..1_000_000_000_000) {
        let f = factor(n);
        let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(prod, n);
        prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        prop_assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn squarefree_kernel_strips_squares(k in 1i64..300, m in 1i64..100_000) {
        let core: i64 = factor(m as u64).iter().filter(|&&(_, e)| e % 2 == 1).map(|&(p, _)| p as i64).product();
        prop_assert_eq!(squarefree_kernel(k * k * m).unwrap(), core as u64);
        prop_assert_eq!(squarefree_kernel(-k * k * m).unwrap(), core as u64);
    }

    #[test]
    fn products_of_prime_discriminants_are_fundamental(picks in proptest::collection::btree_set(0usize..12, 1..5)) {
        const POOL: [i64; 12] = [-4, 5, -7, 8, -11, 13, 17, -19, -23, 29, -31, 37];
        let mut values: Vec<i64> = picks.iter().map(|&i| POOL[i]).collect();
        if values.contains(&-4) && values.contains(&8) {
            values.retain(|&v| v != 8);
        }
        let fd = FactoredDiscriminant::from_values(&values).unwrap();
        prop_assert!(check_fundamental(fd.value()).is_ok());
        let back = factor_prime_discriminants(fd.value()).unwrap();
        let mut a: Vec<i64> = back.parts().iter().map(|p| p.value()).collect();
        a.sort();
        values.sort();
        prop_assert_eq!(a, values);
    }
}
