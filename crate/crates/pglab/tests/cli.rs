use std::path::PathBuf;
use std::process::{Command, Output};

use pglab::doc::{Document, PolyadicDoc};
use pglab_core::Limits;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn pglab(args: &[&str]) -> Output {
    pglab_env(args, &[])
}

fn pglab_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pglab"));
    for (k, _) in std::env::vars().filter(|(k, _)| k.starts_with("PGLAB_")) {
        cmd.env_remove(k);
    }
    cmd.args(args).envs(env.iter().copied());
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn verify_valid_table() {
    let o = pglab(&["verify", &fixture("t2b_table.json")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("associative: yes, solvable: yes, Dörnte: yes"));
}

#[test]
fn verify_corrupted_table_reports_a_witness() {
    let o = pglab(&["verify", &fixture("corrupted_table.json"), "--json"]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert_eq!(v["associative"], false);
    assert!(v["violations"][0].as_str().unwrap().contains("(0,0,1,0,2)"));
}

#[test]
fn verify_derived_with_unfixed_b() {
    let o = pglab(&["verify", &fixture("b_not_fixed.json")]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("θ(b) = b fails"));
}

#[test]
fn verify_plain_group() {
    assert_eq!(code(&pglab(&["verify", &fixture("z3_group.json")])), 0);
}

#[test]
fn missing_file_and_bad_json_exit_1() {
    assert_eq!(code(&pglab(&["verify", "/nonexistent.json"])), 1);
    let dir = std::env::temp_dir().join(format!("pglab-bad-{}.json", std::process::id()));
    std::fs::write(&dir, "{\"kind\": \"polyadic\"").unwrap();
    assert_eq!(code(&pglab(&["verify", dir.to_str().unwrap()])), 1);
    std::fs::remove_file(dir).unwrap();
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(code(&pglab(&["bogus"])), 1);
    assert_eq!(code(&pglab(&["hom", "--from", "a", "--to", "b"])), 1);
    assert_eq!(code(&pglab(&["--help"])), 0);
}

#[test]
fn analyze_simplicity_t9() {
    let o = pglab(&["analyze", &fixture("t9.json"), "--simplicity"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("UAS: no, GTS: yes, GTS*: yes"));
}

#[test]
fn analyze_skew_t3() {
    let o = pglab(&["analyze", &fixture("t3.json"), "--skew", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["skew"], serde_json::json!([0, 2, 1]));
}

#[test]
fn analyze_congruences_t4() {
    let o = pglab(&["analyze", &fixture("t4.json"), "--congruences"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 congruences; lattice: chain; modular: yes"));
}

#[test]
fn analyze_normal_v4swap_contains_diagonal() {
    let o = pglab(&["analyze", &fixture("v4swap.json"), "--normal", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let normal: Vec<Value> = v["normal"].as_array().unwrap().iter().map(|h| h["members"].clone()).collect();
    assert!(normal.contains(&serde_json::json!([0, 3])));
    assert!(normal.contains(&serde_json::json!([0, 1, 2, 3])));
}

#[test]
fn analyze_non_normal_quotient_fails() {
    // {1} in T4inv: θ⁻¹(x⁻¹·1)x = 3 at x = 0.
    assert_eq!(code(&pglab(&["analyze", &fixture("t4inv.json"), "--quotient", "1"])), 1);
}

#[test]
fn census_counts() {
    let o = pglab(&["census", "--order", "2", "--arity", "3", "--mode", "exhaustive"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": 2 classes"));
    let o = pglab(&["census", "--order", "1", "--arity", "3"]);
    assert!(stdout(&o).contains(": 1 classes"));
    let o = pglab(&["census", "--order", "2", "--arity", "4", "--mode", "both"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("agree: yes"));
    // 3^27 tables
    assert_eq!(code(&pglab(&["census", "--order", "3", "--arity", "3", "--mode", "exhaustive"])), 2);
}

#[test]
fn hom_map_and_enumerate() {
    let t3 = fixture("t3.json");
    let o = pglab(&["hom", "--from", &t3, "--to", &t3, "--map", "0,2,1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("a = 0, phi = (0,2,1)"));

    let o = pglab(&["hom", "--from", &t3, "--to", &t3, "--map", "0,1,1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("not a homomorphism, witness"));

    let o = pglab(&["hom", "--from", &t3, "--to", &t3, "--enumerate", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let maps: Vec<Value> = v.as_array().unwrap().iter().map(|h| h["map"].clone()).collect();
    assert_eq!(maps, vec![serde_json::json!([0, 0, 0]), serde_json::json!([0, 1, 2]), serde_json::json!([0, 2, 1])]);
}

#[test]
fn hom_to_one_element_is_unique() {
    let o = pglab(&["hom", "--from", &fixture("t9.json"), "--to", &fixture("trivial.json"), "--enumerate", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
}

#[test]
fn iso_between_fixtures() {
    let o = pglab(&["iso", &fixture("t4.json"), &fixture("t4.json"), "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isomorphic"], true);
    let o = pglab(&["iso", &fixture("t4.json"), &fixture("t4inv.json")]);
    assert!(stdout(&o).contains("not isomorphic"));
}

#[test]
fn quotient_emits_a_loadable_document() {
    let by_subgroup = pglab(&["quotient", &fixture("t4.json"), "--subgroup", "0,2"]);
    assert_eq!(code(&by_subgroup), 0);
    let by_classes = pglab(&["quotient", &fixture("t4.json"), "--classes", "[[0,2],[1,3]]"]);
    let lim = Limits::default();
    let tables: Vec<_> = [&by_subgroup, &by_classes]
        .iter()
        .map(|o| {
            let Document::Polyadic(doc) = serde_json::from_slice::<Document>(&o.stdout).unwrap() else {
                panic!("expected a polyadic document");
            };
            let q = doc.build(&lim).unwrap();
            assert_eq!(PolyadicDoc::from_group(&q, &lim).unwrap(), doc);
            q.operation_table(&lim).unwrap()
        })
        .collect();
    assert_eq!(tables[0], tables[1]);

    let bad = pglab(&["quotient", &fixture("t4.json"), "--classes", "[[0,1],[2,3]]"]);
    assert_eq!(code(&bad), 1);
}

#[test]
fn json_round_trip_is_stable() {
    // Each census document, fed back in, reproduces its own report.
    let o = pglab(&["census", "--order", "4", "--arity", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let census: Value = serde_json::from_slice(&o.stdout).unwrap();
    let path = std::env::temp_dir().join(format!("pglab-rt-{}.json", std::process::id()));
    for class in census["classes"].as_array().unwrap() {
        std::fs::write(&path, serde_json::to_vec(&class["document"]).unwrap()).unwrap();
        let o = pglab(&["analyze", path.to_str().unwrap(), "--simplicity", "--json"]);
        let v: Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["simplicity"], class["report"], "{}", class["label"]);
        let again = pglab(&["analyze", path.to_str().unwrap(), "--simplicity", "--json"]);
        assert_eq!(again.stdout, o.stdout);
    }
    std::fs::remove_file(path).unwrap();
}

#[test]
fn caps_from_environment_exit_2() {
    let o = pglab_env(&["analyze", &fixture("t4.json")], &[("PGLAB_MAX_ORDER", "2")]);
    assert_eq!(code(&o), 2);
    let o = pglab_env(&["verify", &fixture("t2b_table.json")], &[("PGLAB_MAX_COST", "4")]);
    assert_eq!(code(&o), 2);
    let o = pglab_env(
        &["analyze", &fixture("t4.json"), "--congruences", "--method", "oracle"],
        &[("PGLAB_MAX_PARTITION_ORDER", "2")],
    );
    assert_eq!(code(&o), 2);
}

#[test]
fn flag_overrides_environment() {
    let o = pglab_env(&["--max-order", "16", "analyze", &fixture("t4.json")], &[("PGLAB_MAX_ORDER", "2")]);
    assert_eq!(code(&o), 0);
}

#[test]
fn both_method_falls_back_when_oracle_is_capped() {
    let o = pglab_env(
        &["analyze", &fixture("t4.json"), "--congruences", "--simplicity"],
        &[("PGLAB_MAX_PARTITION_ORDER", "2")],
    );
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 congruences"));
}
