use std::io::Write;
use std::process::{Command, Output, Stdio};

fn nullcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nullcone")).args(args).env_remove("NULLCONE_GUARD").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn straighten_example_json() {
    let o = nullcone(&["straighten", "--n", "2", "--m", "2", "--product", "[1:2],[2:1]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).trim(),
        r#"{"terms":[{"coef":"1","tableau":{"columns":[{"I":[1],"J":[1]},{"I":[2],"J":[2]}]}},{"coef":"-1","tableau":{"columns":[{"I":[1,2],"J":[1,2]}]}}],"weight_base":"9"}"#
    );
}

#[test]
fn weight_base_override() {
    let o = nullcone(&["straighten", "--n", "2", "--m", "2", "--product", "[1:2],[2:1]", "--weight-base", "100"]);
    assert!(stdout(&o).contains(r#""weight_base":"100""#));
    let o = nullcone(&["straighten", "--n", "2", "--m", "2", "--product", "[1:2]", "--weight-base", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nullcone_count_example() {
    let o = nullcone(&["nullcone", "count", "--k", "2", "--n", "1", "--shape", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "9");
}

#[test]
fn pattern_to_tableau_on_golden_pattern() {
    let fixture: serde_json::Value =
        serde_json::from_str(include_str!("../fixtures/shape444.json")).unwrap();
    let pattern = fixture["pattern"].to_string();
    let mut child = Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(["convert", "pattern-to-tableau"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(pattern.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["tableau"], "1125/2356/3467");
}

#[test]
fn tableau_to_pattern_round_trip() {
    let o = nullcone(&["convert", "tableau-to-pattern", "--tableau", "1125/2356/3467", "--m", "7"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"poset":{"kind":"gamma","m":7},"rows":[[4,4,4,0,0,0,0],[4,4,3,0,0,0],[4,3,2,0,0],[3,2,2,0],[3,2,1],[3,1],[2]]}"#
    );
}

#[test]
fn xi_conversions() {
    let o = nullcone(&["convert", "xi", "--n", "4", "--m", "6", "--tableau", "[12:24]"]);
    assert_eq!(stdout(&o).trim(), "[2,4,7,8]");
    let o = nullcone(&["convert", "xi-inverse", "--n", "4", "--m", "6", "--set", "2,4,7,8"]);
    assert_eq!(stdout(&o).trim(), r#"{"I":[1,2],"J":[2,4]}"#);
    let o = nullcone(&["convert", "xi-inverse", "--n", "2", "--m", "2", "--set", "3,4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn omega_sum_json_and_domain_error() {
    let o = nullcone(&["nullcone", "omega-sum", "--k", "2", "--n", "2", "--cols", "1,2,3"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"p":3,"terms":[{"J":[1,2,3],"coef":"1"}],"certificate":{"denominator":"1","element":[{"indices":[3],"coef":"1"}]}}"#
    );
    let o = nullcone(&["nullcone", "omega-sum", "--k", "2", "--n", "2", "--cols", "1,3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nullcone(&["nullcone", "omega-sum", "--k", "2", "--n", "2", "--cols", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sample_matrix_is_rational_strings() {
    let o = nullcone(&["nullcone", "sample", "--k", "3", "--n", "2", "--seed", "42"]);
    let v: Vec<Vec<String>> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 3);
    assert!(v.iter().flatten().all(|s| s.contains('/')));
    assert_eq!(o.stdout, nullcone(&["nullcone", "sample", "--k", "3", "--n", "2", "--seed", "42"]).stdout);
}

#[test]
fn nullcone_straighten_example() {
    let o = nullcone(&["nullcone", "straighten", "--k", "2", "--n", "1", "--product", "[1:2],[2:1]"]);
    assert_eq!(
        stdout(&o).trim(),
        r#"{"terms":[{"coef":"1","tableau":{"columns":[{"I":[1],"J":[1]},{"I":[2],"J":[2]}]}}],"weight_base":"9"}"#
    );
}

#[test]
fn independence_report() {
    let o = nullcone(&["nullcone", "independence", "--k", "2", "--n", "1", "--shape", "1", "--points", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["candidates"], 4);
    assert_eq!(v["rank"], 4);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cone_inequalities_json() {
    let o = nullcone(&["cone", "inequalities", "--poset", "gamma", "--params", "1"]);
    assert_eq!(stdout(&o).trim(), r#"{"dim":1,"inequalities":[[1,0]]}"#);
    let o = nullcone(&["cone", "inequalities", "--poset", "nullcone", "--params", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerations() {
    let o = nullcone(&["enumerate", "lattice", "--n", "2", "--m", "2"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 5);
    let o = nullcone(&["enumerate", "standard", "--lattice", "nullcone", "--k", "2", "--n", "1", "--shape", "2"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 9);
    let o = nullcone(&["enumerate", "nstandard", "--k", "2", "--n", "2", "--shape", "1,1"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 5);
    let o = nullcone(&["enumerate", "ssyt", "--shape", "1,1", "--max-entry", "4", "--floor", "1,3"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 5);
    let o = nullcone(&["enumerate", "cone-points", "--poset", "nullcone", "--params", "2,1", "--shape", "2"]);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 9);
}

#[test]
fn table_format() {
    let o = nullcone(&["--format", "table", "enumerate", "lattice", "--n", "2", "--m", "2"]);
    assert_eq!(stdout(&o), "[12:12]\n[1:1]\n[1:2]\n[2:1]\n[2:2]\n");
}

#[test]
fn exit_codes() {
    assert_eq!(nullcone(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nullcone(&["straighten", "--n", "2", "--m", "2", "--product", "[1:3]"]).status.code(), Some(2));
    assert_eq!(nullcone(&["straighten", "--n", "2", "--m", "2", "--product", "[1:2"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(["enumerate", "lattice", "--n", "3", "--m", "3"])
        .env("NULLCONE_GUARD", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_nullcone"))
        .args(["enumerate", "lattice", "--n", "3", "--m", "3"])
        .env("NULLCONE_GUARD", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_is_deterministic_json() {
    let a = nullcone(&["verify", "all", "--seed", "3", "--max-size", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
    assert_eq!(a.stdout, nullcone(&["verify", "all", "--seed", "3", "--max-size", "3"]).stdout);
}
