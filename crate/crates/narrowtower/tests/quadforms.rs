use narrowtower::intarith::{check_fundamental, factor_prime_discriminants};
use narrowtower::quadforms::*;
use narrowtower::realunits::fundamental_unit;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Class number of a negative discriminant by counting reduced forms.
fn reduced_form_count(d: i64) -> u64 {
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

#[test]
fn imaginary_class_numbers_match_reduced_forms() {
    for n in 3..4000 {
        let d = -n;
        if check_fundamental(d).is_err() {
            continue;
        }
        assert_eq!(class_numbers(d).unwrap().0, reduced_form_count(d), "d = {d}");
    }
}

#[test]
fn known_real_class_numbers() {
    for (d, h) in [
        (5, 1),
        (8, 1),
        (12, 1),
        (40, 2),
        (60, 2),
        (65, 2),
        (104, 2),
        (229, 3),
        (316, 3),
        (328, 4),
    ] {
        assert_eq!(class_numbers(d).unwrap().0, h, "h({d})");
    }
}

#[test]
fn narrow_doubles_exactly_when_unit_norm_is_positive() {
    for d in 5..3000 {
        if check_fundamental(d).is_err() {
            continue;
        }
        let (wide, narrow) = class_numbers(d).unwrap();
        let n = fundamental_unit(d).unwrap().norm;
        assert_eq!(narrow, if n == 1 { 2 * wide } else { wide }, "d = {d}");
    }
}

#[test]
fn four_rank_oracles_agree_on_small_range() {
    for a in 3..20_000i64 {
        for d in [a, -a] {
            if check_fundamental(d).is_err() {
                continue;
            }
            let fd = factor_prime_discriminants(d).unwrap();
            assert_eq!(
                four_rank_forms(d).unwrap(),
                four_rank_splittings(&fd).unwrap(),
                "d = {d}"
            );
        }
    }
}

#[test]
fn narrow_two_part_of_worked_field() {
    assert_eq!(class_group(59185, true).unwrap().two_part, vec![2, 2, 2]);
    assert_eq!(class_group(59185, false).unwrap().two_part, vec![2, 2]);
    assert_eq!(h2(59185).unwrap(), 4);
}

#[test]
fn reduction_of_bad_forms_fails() {
    assert!(reduce(BQForm::new(1, 2, 1)).is_err());
    assert!(class_group(9, true).is_err());
}

const DISCS: [i64; 8] = [-84, -260, -1155, -3315, 60, 1365, 4485, 59185];

fn rep(d: i64, i: usize) -> BQForm {
    let g = class_group(d, true).unwrap();
    g.representatives[i % g.representatives.len()]
}

proptest! {
    #[test]
    fn composition_is_a_group_law(k in 0usize..DISCS.len(), i in 0usize..64, j in 0usize..64, l in 0usize..64) {
        let d = DISCS[k];
        let g = class_group(d, true).unwrap();
        let (f, h, e) = (rep(d, i), rep(d, j), rep(d, l));
        let class = |x: BQForm| g.class_of(x).unwrap();
        let one = BQForm::principal(d).unwrap();
        prop_assert_eq!(class(compose(f, one).unwrap()), class(f));
        prop_assert_eq!(class(compose(f, f.inverse()).unwrap()), class(one));
        prop_assert_eq!(class(compose(f, h).unwrap()), class(compose(h, f).unwrap()));
        let left = compose(compose(f, h).unwrap(), e).unwrap();
        let right = compose(f, compose(h, e).unwrap()).unwrap();
        prop_assert_eq!(class(left), class(right));
        prop_assert_eq!(compose(f, h).unwrap().discriminant(), d as i128);
    }
}
