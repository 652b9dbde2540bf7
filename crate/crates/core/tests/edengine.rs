use std::collections::BTreeSet;

use edim::edengine::{bound, replay, BoundInterval, RuleId, CATALOG};
use edim::fielddesc::FieldDescriptor;
use edim::groups::GroupExpr::{self, *};
use proptest::prelude::*;

fn fd(s: &str) -> FieldDescriptor {
    s.parse().unwrap()
}

fn iv(lo: u64, hi: u64) -> BoundInterval {
    BoundInterval::new(lo, Some(hi))
}

fn check(g: GroupExpr, field: &str) -> BoundInterval {
    let r = bound(&g, &fd(field)).unwrap();
    assert_eq!(replay(&r).unwrap(), r.interval, "{g} over {field}");
    r.interval
}

#[test]
fn worked_examples() {
    assert_eq!(check(Sym(6), "Q"), iv(3, 3));
    assert_eq!(check(ElemAb(3, 2), "F(4)"), iv(2, 2));
    assert_eq!(check(Sym(7), "Q"), iv(3, 4));
    assert_eq!(check(ElemAb(2, 2), "F(2)"), iv(2, 2));
    assert_eq!(check(Dih(7), "Q"), iv(2, 4));
    assert_eq!(check(Alt(5), "F(4)"), iv(1, 1));
}

#[test]
fn dihedral_seven_trace_uses_the_expected_rules() {
    let r = bound(&Dih(7), &fd("Q")).unwrap();
    let rules: BTreeSet<RuleId> = r.root_nodes().map(|n| n.rule).collect();
    assert!(rules.contains(&RuleId::Sub), "upper bound through S_7");
    assert!(rules.contains(&RuleId::Dihedral) || rules.contains(&RuleId::PglObstruction));
}

#[test]
fn small_symmetric_groups_in_every_characteristic() {
    for field in ["Q", "Qzeta(5)", "F(2)", "F(3)", "F(4)", "F(5)", "F(7)", "F(9)"] {
        assert_eq!(check(Sym(2), field), iv(1, 1), "{field}");
        assert_eq!(check(Sym(3), field), iv(1, 1), "{field}");
        assert_eq!(check(Sym(4), field), iv(2, 2), "{field}");
        assert_eq!(check(Sym(5), field), iv(2, 2), "{field}");
        let s6 = check(Sym(6), field);
        if fd(field).characteristic() != 2 {
            assert_eq!(s6, iv(3, 3), "{field}");
        } else {
            assert!(s6.contains(2) && s6.hi == Some(3), "{field}: {s6}");
        }
    }
}

#[test]
fn closed_form_lower_bounds() {
    for n in 7..=16u32 {
        let s = check(Sym(n), "F(3)");
        assert_eq!(s, iv(n as u64 / 2, n as u64 - 3), "S{n}");
        let s2 = check(Sym(n), "F(4)");
        assert_eq!(s2.lo, (n as u64 + 1) / 3, "S{n} over F4");
    }
    for n in 4..=16u32 {
        assert_eq!(check(Alt(n), "F(5)").lo, 2 * (n as u64 / 4), "A{n}");
        assert!(check(Alt(n), "F(2)").lo >= n as u64 / 3, "A{n} over F2");
    }
}

#[test]
fn alternating_upper_bounds_in_characteristic_two() {
    assert!(check(Alt(8), "F(2)").hi.unwrap() <= 3);
    assert!(check(Alt(8), "F(8)").hi.unwrap() <= 3);
    assert_eq!(check(Alt(5), "F(16)"), iv(1, 1));
    // without F_4 only the general bounds apply
    assert!(check(Alt(5), "F(2)").hi.unwrap() <= 2);
}

#[test]
fn elementary_abelian_values() {
    assert_eq!(check(ElemAb(2, 3), "Q"), iv(3, 3));
    assert_eq!(check(ElemAb(5, 2), "F(11)"), iv(2, 2));
    assert_eq!(check(ElemAb(2, 2), "F(4)"), iv(1, 1));
    assert_eq!(check(ElemAb(3, 2), "F(9)"), iv(1, 1));
    assert_eq!(check(ElemAb(3, 3), "F(9)").lo, 2);
    assert_eq!(check(ElemAb(3, 2), "Qzeta(3)"), iv(2, 2));
}

#[test]
fn dihedral_values() {
    assert_eq!(check(Dih(5), "Qzeta(5)"), iv(1, 1));
    assert_eq!(check(Dih(3), "Q"), iv(1, 1));
    assert_eq!(check(Dih(5), "F(5)"), iv(1, 1));
    assert_eq!(check(Dih(7), "F(13)"), iv(1, 1));
    assert_eq!(check(Dih(4), "Q"), iv(2, 2));
    assert_eq!(check(Dih(9), "F(3)").lo, 2);
}

#[test]
fn central_extensions() {
    // ed(A_5 x V_4) = ed(A_5) + 2
    assert_eq!(check(GroupExpr::product(vec![Alt(5), Cyc(2), Cyc(2)]), "Q"), iv(4, 4));
    assert_eq!(check(Cyc(6), "Q"), iv(2, 2));
    assert_eq!(check(GroupExpr::product(vec![Sym(5), Cyc(2)]), "Q"), iv(3, 3));
}

#[test]
fn raw_recurrences_never_beat_closed_forms() {
    // off characteristic 2: base values 1, 1, 2, 2 and S_{n+2} >= S_n + 1
    let mut s = vec![0u64, 0, 1, 1, 2, 2];
    for n in 6..=40usize {
        let v = s[n - 2] + 1;
        s.push(v);
        assert!(v <= n as u64 / 2, "S_{n}");
    }
    // K ⊇ F_4: S_{n+3} >= S_n + 1 for n != 4, plus monotonicity in n
    let mut s = vec![0u64, 0, 1, 1, 2, 2];
    for n in 6..=40usize {
        let mut v = s[n - 1];
        if n - 3 != 4 {
            v = v.max(s[n - 3] + 1);
        }
        s.push(v);
        assert!(v <= (n as u64 + 1) / 3, "S_{n} over F_4");
    }
    // alternating groups: A_{n+4} >= A_n + 2 for n >= 4
    let mut a = vec![0u64, 0, 0, 1, 2, 2];
    for n in 6..=40usize {
        let mut v = a[n - 1];
        if n >= 8 {
            v = v.max(a[n - 4] + 2);
        }
        a.push(v);
        assert!(v <= (2 * (n / 4)) as u64, "A_{n}");
    }
}

#[test]
fn citations_resolve_to_the_catalog() {
    let r = bound(&Sym(8), &fd("F(2)")).unwrap();
    for node in &r.nodes {
        assert!(CATALOG.contains(&node.rule));
        assert_eq!(node.citation, node.rule.citation());
    }
}

#[test]
fn bound_is_deterministic() {
    for (g, f) in [(Sym(9), "Q"), (Alt(7), "F(4)"), (Dih(6), "F(7)")] {
        let a = serde_json::to_string(&bound(&g, &fd(f)).unwrap()).unwrap();
        let b = serde_json::to_string(&bound(&g, &fd(f)).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn tampered_traces_fail_replay() {
    let mut r = bound(&Sym(7), &fd("Q")).unwrap();
    r.interval = iv(3, 3);
    assert!(replay(&r).is_err());

    let mut r = bound(&Sym(7), &fd("Q")).unwrap();
    let last = r.nodes.len() - 1;
    r.nodes[last].conclusion.interval.lo += 1;
    assert!(replay(&r).is_err());

    let mut r = bound(&Sym(7), &fd("Q")).unwrap();
    r.nodes[0].note.push('!');
    assert!(replay(&r).is_err());
}

#[test]
fn json_shape() {
    let r = bound(&Cyc(7), &fd("Q")).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["query"]["group"], "C7");
    assert_eq!(v["query"]["field"], "Q");
    assert_eq!(v["interval"]["lo"], 2);
    assert_eq!(v["interval"]["hi"], 7);
    let node = &v["nodes"][0];
    for key in ["rule", "citation", "premises", "conclusion"] {
        assert!(node.get(key).is_some(), "{key}");
    }
    let unbounded = serde_json::to_value(BoundInterval::at_least(2)).unwrap();
    assert_eq!(unbounded["hi"], "inf");
}

fn small_group() -> impl Strategy<Value = GroupExpr> {
    let atom = prop_oneof![
        (2u32..=6).prop_map(Sym),
        (4u32..=6).prop_map(Alt),
        (3u32..=8).prop_map(Dih),
        (2u32..=9).prop_map(Cyc),
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1u32..=3).prop_map(|(p, r)| ElemAb(p, r)),
    ];
    prop::collection::vec(atom, 1..=2).prop_map(|fs| GroupExpr::product(fs))
}

fn small_field() -> impl Strategy<Value = FieldDescriptor> {
    prop_oneof![
        Just("Q"),
        Just("Qzeta(3)"),
        Just("Qzeta(4)"),
        Just("Qzeta(5)"),
        Just("F(2)"),
        Just("F(3)"),
        Just("F(4)"),
        Just("F(5)"),
        Just("F(7)"),
        Just("F(9)"),
    ]
    .prop_map(|s| s.parse().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn adjoining_roots_of_unity_never_raises_lo(g in small_group(), k in small_field(), m in prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]) {
        prop_assume!(k.characteristic() != m);
        let ext = k.extend_with_zeta(m).unwrap();
        let base = bound(&g, &k).unwrap();
        let up = bound(&g, &ext).unwrap();
        prop_assert!(up.interval.lo <= base.interval.lo, "{g}: {} over {k}, {} over {ext}", base.interval, up.interval);
    }

    #[test]
    fn every_trace_replays(g in small_group(), k in small_field()) {
        let r = bound(&g, &k).unwrap();
        prop_assert!(r.interval.is_consistent());
        prop_assert_eq!(replay(&r).unwrap(), r.interval);
    }
}
