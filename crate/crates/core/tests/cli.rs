use std::path::PathBuf;
use std::process::Command as Process;

use serde_json::Value;
use shelfcoh::cli::{run, CliError, RunReport};
use shelfcoh::coalgebra::{build_group_hopf, s3_table};
use shelfcoh::exactfield::FieldSpec;
use shelfcoh::fixtures::{hopf_to_structure, FixtureError};
use shelfcoh::quandlecoh::{make_rack, RackKind};

fn report(args: &[&str]) -> RunReport {
    run(std::iter::once("shelfcoh").chain(args.iter().copied())).expect("subcommand runs")
}

fn passed(rep: &RunReport, name: &str) -> bool {
    rep.check(name).unwrap_or_else(|| panic!("missing check {name}")).passed
}

fn scratch_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shelfcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_shelf_on_dihedral_rack() {
    let rep = report(&["verify-shelf", "--rack", "dihedral:3", "--field", "f5"]);
    assert!(passed(&rep, "self_distributive"));
    assert!(passed(&rep, "compatible"));
    assert!(!passed(&rep, "strict_counit"));
    assert!(passed(&rep, "weak_counit"));
    assert_eq!(rep.exit_status, 0);
    assert_eq!(rep.inputs["field"], "fp:5");
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "deform-check",
        "--rack",
        "dihedral:3",
        "--field",
        "fp:5",
        "--trials",
        "10",
        "--json",
    ];
    let a = report(&args).to_json();
    assert_eq!(a, report(&args).to_json());
    let other = report(&[
        "deform-check",
        "--rack",
        "dihedral:3",
        "--field",
        "fp:5",
        "--trials",
        "10",
        "--seed",
        "7",
    ]);
    assert_eq!(other.inputs["seed"], "7");
    let timed = report(&["verify-shelf", "--rack", "dihedral:3", "--timings"]);
    assert!(timed.timings_ms.is_some());
    assert!(report(&["verify-shelf", "--rack", "dihedral:3"]).timings_ms.is_none());
}

#[test]
fn json_report_shape() {
    let v: Value = serde_json::from_str(&report(&["cohomology", "--lie", "witt:5", "--central-ext", "--degree", "2"]).to_json()).unwrap();
    assert_eq!(v["subcommand"], "cohomology");
    assert_eq!(v["values"]["chain_dims"], serde_json::json!([36, 343, 2401]));
    assert_eq!(v["values"]["dim_h"], 6);
    assert_eq!(v["exit_status"], 0);
    let checks = v["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .all(|c| c["name"].is_string() && c["passed"].is_boolean() && c["asserted"].is_boolean()));
    assert!(v.get("timings_ms").is_none());
}

#[test]
fn aliases_match_role_names() {
    for (alias, name, args) in [
        ("thm42-check", "induced-shelf", vec!["--lie", "sl2-type"]),
        ("prop46-check", "adjoint-identities", vec!["--hopf", "group:S3"]),
        ("trig-table-verify", "table1-verify", vec![]),
    ] {
        let a = report(&[&[alias][..], &args].concat());
        let b = report(&[&[name][..], &args].concat());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.subcommand, name);
        assert_eq!(a.exit_status, 0, "{name}");
    }
}

#[test]
fn induced_shelf_reports_hypotheses() {
    let lie = report(&["induced-shelf", "--lie", "sl2-type"]);
    assert!(passed(&lie, "yang_baxter") && passed(&lie, "fixed_point"));
    let rack = report(&["induced-shelf", "--rack", "dihedral:3", "--field", "fp:3"]);
    assert!(passed(&rack, "yang_baxter"));
    assert!(!passed(&rack, "counit_condition"));
}

#[test]
fn enumerate_2d_flags_the_listing() {
    let rep = report(&["enumerate-2d"]);
    assert!(passed(&rep, "candidate_count"));
    assert!(passed(&rep, "shelves_are_all_nonzero"));
    assert!(!passed(&rep, "listed_columns_are_solutions"));
    assert!(!passed(&rep, "solutions_are_listed"));
    assert_eq!(rep.exit_status, 1);
}

#[test]
fn lifts_and_cohomology() {
    let q2 = report(&["lift-quandle", "--rack", "dihedral:4", "--field", "fp:2"]);
    assert!(passed(&q2, "lift_is_cocycle") && passed(&q2, "lift_not_coboundary"));
    let q3 = report(&["lift-quandle", "--rack", "dihedral:3", "--field", "fp:3", "--degree", "3"]);
    assert!(passed(&q3, "lift_is_cocycle") && passed(&q3, "lift_not_coboundary"));
    let lie = report(&["lift-lie", "--lie", "witt:5", "--central-ext"]);
    assert_eq!(lie.exit_status, 0);
    let qc = report(&["quandle-cohomology", "--rack", "dihedral:4", "--field", "fp:2", "--degree", "2"]);
    assert_eq!(qc.values["dim_h"], 4);
    let literal = report(&["cohomology", "--rack", "dihedral:3", "--field", "fp:5", "--degree", "3"]);
    assert!(!passed(&literal, "literal_composite_vanishes"));
    assert!(passed(&literal, "coupled_composite_vanishes"));
}

#[test]
fn hochschild_and_probe() {
    let h = report(&["hochschild-check", "--hopf", "group:Z3", "--trials", "10"]);
    assert!(h.checks.iter().all(|c| c.passed));
    let p = report(&["probe-full-complex", "--rack", "dihedral:3", "--field", "fp:5", "--trials", "4"]);
    assert_eq!(p.values["vanishing_zero"]["per_component"], serde_json::json!([1, 1, 1, 1]));
}

#[test]
fn unknown_fixture_and_field_mismatch() {
    let err = run(["shelfcoh", "verify-shelf", "--rack", "nope:3"]).unwrap_err();
    assert!(matches!(err, CliError::Fixture(FixtureError::Unknown(_))));
    let err = run(["shelfcoh", "verify-shelf", "--lie", "witt:5", "--field", "q"]).unwrap_err();
    assert!(matches!(err, CliError::Fixture(FixtureError::FieldMismatch { .. })));
    let err = run(["shelfcoh", "verify-shelf", "--field", "fp:6", "--rack", "dihedral:3"]).unwrap_err();
    assert!(matches!(err, CliError::Field(_)));
    assert!(matches!(run(["shelfcoh", "no-such-command"]).unwrap_err(), CliError::Usage(_)));
}

#[test]
fn file_inputs() {
    let r = make_rack(&RackKind::Dihedral(5)).unwrap();
    let path = scratch_file("r5.rack", &r.to_text());
    let from_file = report(&["verify-shelf", "--rack", path.to_str().unwrap()]);
    let builtin = report(&["verify-shelf", "--rack", "dihedral:5"]);
    assert_eq!(from_file.checks, builtin.checks);

    let h = build_group_hopf(&s3_table(), None, FieldSpec::Rationals).unwrap();
    let path = scratch_file("s3.hopf", &hopf_to_structure(&h, "S3").to_text());
    let from_file = report(&["adjoint-identities", "--hopf", path.to_str().unwrap()]);
    assert_eq!(from_file.checks, report(&["adjoint-identities", "--hopf", "group:S3"]).checks);

    let bad = scratch_file("bad.rack", "rack 2\n0 1\n");
    let err = run(["shelfcoh", "verify-shelf", "--rack", bad.to_str().unwrap()]).unwrap_err();
    assert!(matches!(err, CliError::Fixture(FixtureError::Parse { .. })));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_shelfcoh");
    let status = |args: &[&str]| Process::new(bin).args(args).output().unwrap();
    let ok = status(&["verify-shelf", "--rack", "dihedral:3", "--json"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["subcommand"], "verify-shelf");
    assert_eq!(status(&["enumerate-2d"]).status.code(), Some(1));
    let err = status(&["verify-shelf", "--rack", "nope:3"]);
    assert_eq!(err.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&err.stderr).contains("unknown fixture"));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}
