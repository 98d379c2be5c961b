use narrowtower::fpgroups::*;
use proptest::prelude::*;

fn grp(s: &str) -> FiniteGroup {
    realize(&Presentation::parse(s).unwrap(), DEFAULT_COSET_BUDGET).unwrap()
}

fn order(s: &str) -> usize {
    group_order(&Presentation::parse(s).unwrap(), DEFAULT_COSET_BUDGET).unwrap()
}

#[test]
fn orders_of_standard_groups() {
    assert_eq!(order("<a | a^4>"), 4);
    assert_eq!(order("<a,b | a^2, b^2, (ab)^3>"), 6);
    assert_eq!(order("<a,b | a^4, b^2, (ab)^2>"), 8);
    assert_eq!(order("<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>"), 8);
    assert_eq!(order("<a,b,c | a^2, b^2, c^2, [a,b], [a,c], [b,c]>"), 8);
    assert_eq!(order("<a,b | a^2, b^3, (ab)^5>"), 60);
    assert_eq!(order("<a,b | a^8, b^2, (ab)^2>"), 16);
}

#[test]
fn coset_budget_is_enforced() {
    let p = Presentation::parse("<a,b | a^2, b^3, (ab)^5>").unwrap();
    let e = group_order(&p, 10).unwrap_err();
    assert!(e.is_resource());
}

#[test]
fn infinite_groups_have_free_abelianization() {
    let p = Presentation::parse("<a,b | [a,b]>").unwrap();
    assert_eq!(p.abelian_invariants(), vec![0, 0]);
    let p = Presentation::parse("<a,b | a^2, b^4, [a,b]>").unwrap();
    assert_eq!(p.abelian_invariants(), vec![2, 4]);
}

#[test]
fn isomorphism_decisions() {
    let d8 = grp("<a,b | a^4, b^2, (ab)^2>");
    let d8b = grp("<x,y | x^2, y^2, (xy)^4>");
    let q8 = grp("<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>");
    let z8 = grp("<a | a^8>");
    assert!(is_isomorphic(&d8, &d8b, 7).unwrap().is_some());
    assert!(is_isomorphic(&d8, &q8, 7).unwrap().is_none());
    assert!(is_isomorphic(&z8, &q8, 7).unwrap().is_none());
}

#[test]
fn isomorphism_maps_are_homomorphisms() {
    let a = grp("<a,b | a^4, b^2, (ab)^2>");
    let b = grp("<x,y | x^2, y^2, (xy)^4>");
    let iso = is_isomorphic(&a, &b, 11).unwrap().unwrap();
    for x in 0..a.order() {
        for y in 0..a.order() {
            assert_eq!(iso.map[a.mul(x, y)], b.mul(iso.map[x], iso.map[y]));
        }
    }
}

#[test]
fn series_of_dihedral_group() {
    let g = grp("<a,b | a^8, b^2, (ab)^2>");
    let orders: Vec<usize> = g.lower_central_series().iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![16, 4, 2, 1]);
    assert_eq!(g.abelian_invariants(), vec![2, 2]);
    assert_eq!(g.center().order(), 2);
    assert_eq!(g.fingerprint().nilpotency_class(), Some(3));
    let derived: Vec<usize> = g.derived_series().iter().map(|s| s.order()).collect();
    assert_eq!(derived, vec![16, 4, 1]);
}

#[test]
fn commutator_identities_hold_in_small_groups() {
    for s in [
        "<a,b | a^4, b^2, (ab)^2>",
        "<a,b | a^4, a^2 = b^2, b^-1 a b = a^-1>",
        "<a,b,c | a^2, b^2, c^2, (ab)^4, [a,c], [b,c]>",
        "<a,b | a^2, b^3, (ab)^5>",
    ] {
        let r = verify_commutator_identities(&grp(s), 3);
        assert!(r.all_passed(), "{s}: {:?}", r.checks);
    }
}

#[test]
fn class_two_quotient_kills_weight_three() {
    let p = Presentation::parse("<a,b | a^2, b^2, (ab)^8>").unwrap();
    let g = realize(&p.class_two_quotient(), DEFAULT_COSET_BUDGET).unwrap();
    assert_eq!(g.order(), 8);
    assert_eq!(g.lower_central_series().len(), 3);
}

#[test]
fn relation_syntax() {
    let aliases = commutator_aliases('c', 3);
    let w = parse_word(&["a1", "a2", "a3"], &aliases, "c12").unwrap();
    assert_eq!(w, commutator(&generator(0), &generator(1)));
    let rels = parse_relations(&["a1", "a2", "a3"], &aliases, "a1^2 = c13, c23 = 1").unwrap();
    assert_eq!(rels.len(), 2);
    assert!(Presentation::parse("<a | a^2").is_err());
    assert!(parse_word(&["a"], &aliases, "b").is_err());
}

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 0..12)
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in word()) {
        let r = free_reduce(&w);
        prop_assert_eq!(free_reduce(&r), r.clone());
        prop_assert!(r.windows(2).all(|p| p[0] != -p[1]));
    }

    #[test]
    fn inverse_cancels(w in word()) {
        prop_assert!(free_reduce(&concat(&[&w, &inverse(&w)])).is_empty());
        prop_assert_eq!(inverse(&inverse(&w)), w);
    }

    #[test]
    fn powers_add(w in word(), m in -4i64..5, n in -4i64..5) {
        let lhs = free_reduce(&concat(&[&power(&w, m), &power(&w, n)]));
        prop_assert_eq!(lhs, free_reduce(&power(&w, m + n)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in word(), v in word()) {
        let g = grp("<a,b,c | a^4, b^2, c^2, (ab)^2, [a,c], [b,c]>");
        prop_assert_eq!(g.eval(&concat(&[&u, &v])), g.mul(g.eval(&u), g.eval(&v)));
        prop_assert_eq!(g.eval(&inverse(&u)), g.inv(g.eval(&u)));
    }
}
