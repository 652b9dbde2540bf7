use std::process::{Command, Output};

use edim::fielddesc::FieldDescriptor;
use edim::groups::GroupExpr::{self, *};
use proptest::prelude::*;
use serde_json::Value;

fn edim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edim")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = edim(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["schema"], "edim/1");
    v
}

fn fails(args: &[&str], code: i32) -> Output {
    let out = edim(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(!err.contains("panicked") && !err.contains("backtrace"), "{err}");
    out
}

#[test]
fn bound_s6_over_q() {
    let v = ok(&["bound", "--group", "S6", "--field", "Q"]);
    assert_eq!(v["interval"]["lo"], 3);
    assert_eq!(v["interval"]["hi"], 3);
    assert!(!v["nodes"].as_array().unwrap().is_empty());
    assert_eq!(v["replayed"], v["interval"]);
}

#[test]
fn pgl2_order_census_over_f2() {
    let v = ok(&["pgl2", "orders", "--q", "2"]);
    assert_eq!(v["orders"], serde_json::json!({"1": 1, "2": 3, "3": 2}));
}

#[test]
fn crossratio_rewrite_example() {
    let v = ok(&["crossratio", "rewrite", "--n", "5", "--symbol", "1,2,5,4"]);
    assert_eq!(v["expr"], "t4 * t5^-1");
}

#[test]
fn group_and_field_errors_exit_with_code_two() {
    let out = fails(&["bound", "--group", "E(4,2)", "--field", "Q"], 2);
    assert_eq!(json_of(&out)["error"]["kind"], "value");
    let out = fails(&["bound", "--group", "S5", "--field", "F(6)"], 2);
    assert_eq!(json_of(&out)["error"]["kind"], "parse");
    fails(&["bound", "--group", "S5 x", "--field", "Q"], 2);
    fails(&["bound", "--group", "S5"], 2);
    fails(&["frobnicate"], 2);
    fails(&["crossratio", "rewrite", "--n", "5", "--symbol", "1,2,2,4"], 2);
    fails(&["crossratio", "action", "--n", "5", "--perm", "(1 9)"], 2);
    fails(&["crossratio", "action", "--n", "5", "--perm", "1 2"], 2);
    fails(&["field", "zeta", "--field", "Q"], 2);
}

#[test]
fn resource_and_support_limits_exit_with_code_three() {
    fails(&["pgl2", "orders", "--q", "49"], 3);
    fails(&["tschirnhaus", "reduce", "--n", "4", "--char", "2"], 3);
    fails(&["crossratio", "verify", "--n", "9"], 3);
    fails(&["pgl2", "reps", "--q", "4", "--group", "S4"], 3);
    fails(&["field", "fp-dim", "--field", "Q"], 3);
}

#[test]
fn json_is_byte_stable() {
    for args in [
        &["bound", "--group", "S7", "--field", "Q"][..],
        &["table", "--group", "A5", "--group", "D6", "--field", "Q", "--field", "F(4)"],
        &["tschirnhaus", "verify", "--n", "4", "--char", "5", "--trials", "5", "--seed", "3"],
    ] {
        assert_eq!(edim(args).stdout, edim(args).stdout, "{args:?}");
    }
}

#[test]
fn table_is_row_major() {
    let v = ok(&["table", "--group", "S4", "--group", "C2", "--field", "Q", "--field", "F(3)"]);
    let cells: Vec<(String, String)> = v["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["group"].as_str().unwrap().into(), c["field"].as_str().unwrap().into()))
        .collect();
    let expected = [("S4", "Q"), ("S4", "F(3)"), ("C2", "Q"), ("C2", "F(3)")];
    assert_eq!(cells, expected.map(|(g, f)| (g.to_string(), f.to_string())));
    assert_eq!(v["cells"][2]["interval"]["hi"], 1);
}

#[test]
fn randomized_commands_report_their_seed() {
    let v = ok(&["tschirnhaus", "verify", "--n", "3", "--char", "0", "--trials", "5"]);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["ok"], true);
    let v = ok(&["crossratio", "verify", "--n", "5", "--samples", "2", "--seed", "9"]);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["ok"], true);
}

#[test]
fn plain_output_renders_text() {
    let out = edim(&["--plain", "bound", "--group", "S4", "--field", "Q"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("S4 over Q: [2, 2]"), "{text}");
}

#[test]
fn field_grammar_round_trips() {
    for s in [
        "Q",
        "Qzeta(12)",
        "F(4)",
        "F(27)",
        "custom{char=0,zeta_yes=[3],zeta_no=[5],real_zeta_yes=[],real_zeta_no=[7],fp_dim=inf}",
        "custom{char=3,zeta_yes=[],zeta_no=[],real_zeta_yes=[],real_zeta_no=[],fp_dim=inf}",
    ] {
        let k: FieldDescriptor = s.parse().unwrap();
        assert_eq!(k.to_string().parse::<FieldDescriptor>().unwrap(), k, "{s}");
        let v = ok(&["field", "characteristic", "--field", s]);
        assert_eq!(v["field"], k.to_string());
    }
}

fn atom() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        (1u32..=30).prop_map(Sym),
        (1u32..=30).prop_map(Alt),
        (1u32..=30).prop_map(Dih),
        (1u32..=60).prop_map(Cyc),
        (prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], 1u32..=4).prop_map(|(p, r)| ElemAb(p, r)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn group_grammar_round_trips(factors in prop::collection::vec(atom(), 1..=4)) {
        let g = GroupExpr::product(factors);
        let text = g.to_string();
        prop_assert_eq!(text.parse::<GroupExpr>().unwrap(), g.clone());
        let spaced = text.replace('x', " x ");
        prop_assert_eq!(spaced.parse::<GroupExpr>().unwrap(), g);
    }
}
