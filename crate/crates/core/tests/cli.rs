use semiring_lab::cli::{dispatch, CommandOutcome, SCHEMA_VERSION};
use semiring_lab::format::{load_algebra, to_json};

fn run(args: &[&str]) -> CommandOutcome {
    dispatch(std::iter::once("semiring-lab").chain(args.iter().copied()))
}

#[test]
fn fig1_example() {
    let out = run(&["ideals", "builtin:S8", "--lattice"]);
    assert!(out.stdout.contains("ideals: 9\n"));
    assert!(out.stdout.contains("modular: false"));
    assert!(out.stdout.contains("pentagon: bottom="));
    assert_eq!(out.code, 1);
    assert_eq!(run(&["ideals", "builtin:S8"]).code, 0);
}

#[test]
fn skew_example() {
    let out = run(&["decompose", "builtin:R4", "builtin:D2", "--ideals"]);
    assert!(out.stdout.contains("17 ideals, 7 skew"));
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("  I")).count(), 7);
    assert_eq!(out.code, 1);
    assert_eq!(run(&["decompose", "builtin:D2", "builtin:D3", "--ideals"]).code, 0);
}

#[test]
fn kernels_example() {
    let out = run(&["kernels", "builtin:D3"]);
    assert!(out.stdout.contains("kernels: 3"));
    assert!(out.stdout.contains("join failure: theta={0,a}|{1} phi={0}|{a,1}"));
    assert_eq!(out.code, 1);
}

#[test]
fn numeric_example() {
    let out = run(&["numeric", "--bases", "2,2", "--gen", "4,6", "--query", "4,0"]);
    assert_eq!(out.stdout.trim_end(), "member: false");
    assert_eq!(out.code, 1);
    assert_eq!(
        run(&["numeric", "--bases", "2,2", "--gen", "4,6", "--query", "8,12"]).code,
        0
    );
    assert_eq!(
        run(&["numeric", "--bases", "2,2", "--gen", "4,6", "--query", "3,0"]).code,
        2
    );
}

#[test]
fn malcev_exit_codes() {
    assert_eq!(run(&["malcev", "builtin:D3", "--scheme", "dist0"]).code, 0);
    assert_eq!(run(&["malcev", "builtin:R2", "--scheme", "dist0"]).code, 1);
    assert_eq!(run(&["malcev", "builtin:Z2F", "--scheme", "ddck"]).code, 0);
    assert_eq!(run(&["malcev", "builtin:R2", "--scheme", "ddck"]).code, 2);
    let custom = run(&["malcev", "builtin:D2", "--scheme", "dist0", "--terms", "0", "x*y", "x"]);
    assert_eq!(custom.code, 0);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["check", "builtin:NOPE"]).code, 2);
    assert_eq!(run(&["check", "/definitely/missing.json"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text =
        to_json(&load_algebra("builtin:D2").unwrap()).replace("[\"0\", \"1\"]\n  ]\n}", "[\"1\", \"1\"]\n  ]\n}");
    std::fs::write(&path, text).unwrap();
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.contains("annihilation") || out.stderr.contains("distributivity"),
        "{}",
        out.stderr
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["ideals", "builtin:S8", "--lattice"][..],
        &["congruences", "builtin:R4"],
        &["audit", "builtin:R4", "builtin:D2"],
        &["--json", "decompose", "builtin:R2", "builtin:D2", "--kernels"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn json_carries_schema_version() {
    for args in [
        &["--json", "check", "builtin:D3"][..],
        &["--json", "ideals", "builtin:S8", "--lattice"],
        &["--json", "kernels", "builtin:D3", "--lattice"],
        &["--json", "audit", "builtin:R2", "builtin:D2"],
        &["--json", "malcev", "builtin:D2", "--scheme", "ddck"],
    ] {
        let out = run(args);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION, "{args:?}");
    }
}

#[test]
fn dot_has_one_node_per_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s8.dot");
    run(&["ideals", "builtin:S8", "--dot", path.to_str().unwrap()]);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph ") && dot.trim_end().ends_with('}'));
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (9, 11));
}

#[test]
fn product_out_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["product", "builtin:R2", "builtin:D2", "--out", p]).code, 0);
    let out = run(&["decompose", p, "builtin:Z2F", "--ideals"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let ideals = run(&["ideals", p]);
    assert!(ideals.stdout.contains("ideals: 5"));
}

#[test]
fn audit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.csv");
    let out = run(&["audit", "builtin:R2", "builtin:D2", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(&reader.headers().unwrap()[0], "subject");
    assert!(reader.records().count() >= 5);
}
