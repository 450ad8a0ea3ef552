use bredon::mackey::{concretize, table_to_json, MackeyExpr};
use bredon::repring::GroupSpec;
use bredon_cli::report::{Report, SCHEMA};
use bredon_cli::{run, Outcome, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE};

fn bredon(args: &[&str]) -> Outcome {
    run(std::iter::once("bredon").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = bredon(&full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    Report::from_json(&out.stdout).unwrap()
}

#[test]
fn cohomology_examples() {
    let out = bredon(&["cohomology", "--n", "15", "--coeff", "Z", "--alpha", "xi^1 + xi^3 - 2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("Z/15; K[3]<Z/3> (+) K[5]<Z/5>"), "{}", out.stdout);
    let out = bredon(&["cohomology", "--n", "15", "--coeff", "A", "--alpha", "xi^1"]);
    assert!(out.stdout.contains("Z^3; Mackey: representation-dependent"), "{}", out.stdout);
    let out = bredon(&["cohomology", "--n", "15", "--coeff", "Z", "--alpha", "0"]);
    assert!(out.stdout.contains("Z; const Z"), "{}", out.stdout);
}

#[test]
fn cohomology_with_oracle() {
    let Report::Cohomology(r) = json(&["cohomology", "--n", "15", "--coeff", "A", "--alpha", "xi + xi^3", "--range", "-5:5", "--oracle"])
    else {
        panic!("wrong report")
    };
    assert_eq!(r.rows.len(), 11);
    for row in &r.rows {
        let o = row.oracle.as_ref().unwrap();
        assert_ne!(o.status, "MISMATCH", "{}: {}", row.grading, o.detail);
    }
    let statuses: Vec<&str> = r.rows.iter().map(|row| row.oracle.as_ref().unwrap().status.as_str()).collect();
    assert!(statuses.contains(&"MATCH"));
    let Report::Cohomology(r) = json(&["cohomology", "--n", "15", "--alpha", "xi - xi^3", "--oracle"]) else { panic!() };
    assert_eq!(r.rows[0].oracle.as_ref().unwrap().status, "UNREACHABLE");
}

#[test]
fn split_coefficients() {
    let Report::Cohomology(r) = json(&["cohomology", "--n", "15", "--coeff", "A[5]", "--alpha", "xi^3 - 1", "--oracle"])
    else {
        panic!()
    };
    assert_eq!(r.coefficients, "A[5]");
    assert_eq!(r.rows[0].oracle.as_ref().unwrap().status, "MATCH");
    assert_eq!(bredon(&["cohomology", "--n", "15", "--coeff", "A[7]", "--alpha", "1"]).code, EXIT_USAGE);
    assert_eq!(bredon(&["cohomology", "--n", "15", "--coeff", "B", "--alpha", "1"]).code, EXIT_USAGE);
}

#[test]
fn custom_coefficient_table() {
    let group = GroupSpec::new(15).unwrap();
    let text = table_to_json(&concretize(&MackeyExpr::constant(&group))).unwrap();
    let path = std::env::temp_dir().join(format!("bredon-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let Report::Cohomology(r) = json(&["cohomology", "--n", "15", "--coeff-file", p, "--alpha", "xi + xi^3 - 2"]) else {
        panic!()
    };
    let o = r.rows[0].oracle.as_ref().unwrap();
    assert_eq!(o.status, "COMPUTED");
    let values: Vec<&str> = o.levels.iter().map(|l| l.value.as_str()).collect();
    assert_eq!(values, vec!["0", "Z/3", "Z/5", "Z/15"]);
    assert_eq!(bredon(&["cohomology", "--n", "21", "--coeff-file", p, "--alpha", "1"]).code, EXIT_USAGE);
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(bredon(&["cohomology", "--n", "15", "--coeff-file", p, "--alpha", "1"]).code, EXIT_USAGE);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn table_command_feeds_the_coefficient_file() {
    let out = bredon(&["table", "--n", "15", "--coeff", "A[3]"]);
    assert_eq!(out.code, EXIT_OK);
    let path = std::env::temp_dir().join(format!("bredon-cli-table-{}.json", std::process::id()));
    std::fs::write(&path, &out.stdout).unwrap();
    let p = path.to_str().unwrap();
    let Report::Cohomology(custom) = json(&["cohomology", "--n", "15", "--coeff-file", p, "--alpha", "xi^5 - 1"]) else {
        panic!()
    };
    let Report::Cohomology(split) = json(&["cohomology", "--n", "15", "--coeff", "A[3]", "--alpha", "xi^5 - 1", "--oracle"])
    else {
        panic!()
    };
    assert_eq!(custom.rows[0].oracle.as_ref().unwrap().levels, split.rows[0].oracle.as_ref().unwrap().levels);
    let _ = std::fs::remove_file(&path);
    assert_eq!(bredon(&["table", "--n", "15", "--coeff", "Q"]).code, EXIT_USAGE);
}

#[test]
fn ring_examples() {
    let out = bredon(&["ring", "--n", "15", "mul", "a(1)", "a(1)"]);
    assert_eq!(out.stdout.trim(), "grading 2ξ: Z/15, value 1");
    let Report::RingProduct(lhs) = json(&["ring", "--n", "15", "mul", "3 u(3)", "a(1)"]) else { panic!() };
    let Report::RingProduct(rhs) = json(&["ring", "--n", "15", "mul", "u(1)", "a(3)"]) else { panic!() };
    assert_eq!((lhs.grading.as_str(), lhs.value.as_str()), (rhs.grading.as_str(), rhs.value.as_str()));
    let out = bredon(&["ring", "--n", "15", "mul", "u(1)^-1", "a(1)"]);
    assert_eq!(out.code, EXIT_USAGE);
    let out = bredon(&["ring", "--n", "15", "mul", "a(1)", "a(3)"]);
    assert!(out.stdout.contains("Z/5"), "{}", out.stdout);
    assert_eq!(bredon(&["ring", "--n", "15", "mul", "b(1)", "a(1)"]).code, EXIT_USAGE);
}

#[test]
fn ring_product_into_a_vanishing_group() {
    let y = "class(xi^3 - 2*xi - 1; 1)";
    let Report::RingProduct(r) = json(&["ring", "--n", "15", "mul", "a(1)", y]) else { panic!() };
    assert_eq!(r.group, "0");
    let out = bredon(&["ring", "--n", "15", "mul", "a(1)^2", y]);
    assert!(out.stdout.trim().ends_with("0 (group vanishes)"), "{}", out.stdout);
    let out = bredon(&["ring", "--n", "15", "mul", y, y]);
    assert!(out.stdout.contains("group vanishes"), "{}", out.stdout);
    assert_eq!(bredon(&["ring", "--n", "15", "mul", "class(xi; x)", "a(1)"]).code, EXIT_USAGE);
}

#[test]
fn oracle_sweep_counts() {
    let out = bredon(&["oracle", "--n", "15", "--max-factors", "2", "--coeff", "Z"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("400 comparisons, 0 mismatches"), "{}", out.stdout);
    assert_eq!(bredon(&["oracle", "--n", "15", "--max-factors", "9"]).code, EXIT_USAGE);
}

#[test]
fn freeness_reports() {
    let Report::Freeness(cp) = json(&["freeness", "cp", "--n", "15", "--m", "10"]) else { panic!() };
    assert!(cp.passes);
    assert_eq!(cp.rows.len(), 11);
    let Report::Freeness(gr) = json(&["freeness", "grassmann", "--n", "15", "--l", "4", "--m", "2"]) else { panic!() };
    assert_eq!(gr.rows.len(), 6);
    assert!(gr.rows.iter().any(|r| r.label == "[1, 2]" && r.mismatch));
    assert_eq!(bredon(&["freeness", "grassmann", "--n", "15", "--l", "2", "--m", "3"]).code, EXIT_USAGE);
}

#[test]
fn properties_are_seeded() {
    let args = ["properties", "--n", "35", "--count", "300", "--seed", "5", "--format", "json"];
    let (a, b) = (bredon(&args), bredon(&args));
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let other = bredon(&["properties", "--n", "35", "--count", "300", "--seed", "6", "--format", "json"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn reports_round_trip() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["cohomology", "--n", "15", "--alpha", "xi + xi^3 - 2", "--oracle"],
        vec!["ring", "--n", "15", "mul", "a(1)", "u(5)"],
        vec!["ring", "--n", "15", "suite", "--triples", "20"],
        vec!["oracle", "--n", "15", "--max-factors", "1"],
        vec!["properties", "--n", "15", "--count", "50"],
        vec!["freeness", "cp", "--n", "15", "--m", "3"],
    ];
    for args in cases {
        let report = json(&args);
        let text = report.to_json();
        assert!(text.contains(SCHEMA));
        assert_eq!(Report::from_json(&text).unwrap(), report, "{args:?}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(bredon(&["cohomology", "--n", "9", "--alpha", "1"]).code, EXIT_USAGE);
    assert_eq!(bredon(&["cohomology", "--n", "15"]).code, EXIT_USAGE);
    let bad = bredon(&["cohomology", "--n", "15", "--alpha", "xi^^2"]);
    assert_eq!(bad.code, EXIT_USAGE);
    assert!(bad.stderr.contains("byte"), "{}", bad.stderr);
    assert_eq!(bredon(&["--help"]).code, EXIT_OK);
    assert_eq!(bredon(&["nothing"]).code, EXIT_USAGE);
    assert_ne!(EXIT_MISMATCH, EXIT_USAGE);
}
