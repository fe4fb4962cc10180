mod common;

use std::path::PathBuf;

use common::xy_problem;
use fncomp::fixtures::{fixture, fixture_file_name, FIXTURE_NAMES};
use fncomp::model::*;
use fncomp::Error;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(fixture_file_name(name))
}

fn r(roles: &[Role]) -> RoleSet {
    RoleSet::of(roles)
}

#[test]
fn shipped_fixture_files_match_generators() {
    for name in FIXTURE_NAMES {
        let file_name = if name == "ex2" { "ex2:0.75" } else { name };
        let loaded = load_problem_file(fixture_path(file_name)).unwrap();
        let built = fixture(file_name).unwrap();
        let a = serde_json::to_value(loaded.to_document()).unwrap();
        let b = serde_json::to_value(built.to_document()).unwrap();
        assert_eq!(a, b, "fixture {name}");
    }
}

#[test]
fn ex2_file_is_binary_without_side_information() {
    let spec = load_problem_file(fixture_path("ex2:0.75")).unwrap();
    assert_eq!((spec.nx(), spec.ny(), spec.nz()), (2, 2, 1));
    assert!((spec.p(0, 0, 0) - 0.375).abs() < 1e-15);
}

#[test]
fn ex4_file_is_three_by_three() {
    let spec = load_problem_file(fixture_path("ex4")).unwrap();
    assert_eq!((spec.nx(), spec.ny()), (3, 3));
    assert!((spec.p(0, 0, 0) - 0.21).abs() < 1e-15);
    assert!((spec.p(0, 1, 0) - 0.03).abs() < 1e-15);
}

#[test]
fn half_mass_document_is_rejected() {
    let text = r#"{"X":[0],"Y":[0],"Z":["*"],"F":[0],
        "p":[{"x":0,"y":0,"z":"*","p":0.5}],
        "f":[{"x":0,"y":0,"z":"*","v":0}]}"#;
    assert!(matches!(load_problem(text), Err(Error::Normalization { .. })));
}

#[test]
fn uniform_xor_sources_share_nothing() {
    let j = fixture("ex2:0.5").unwrap().joint();
    let i = mutual_information(&j, r(&[Role::X]), r(&[Role::Y])).unwrap();
    let h = j.conditional_entropy(r(&[Role::X]), r(&[Role::Y])).unwrap();
    assert!(i.abs() < 1e-12);
    assert!((h - 1.0).abs() < 1e-12);
}

#[test]
fn conditional_independence_cases() {
    assert!(check_conditional_independence(&fixture("ex3").unwrap()));
    assert!(!check_conditional_independence(&fixture("ex2:0.9").unwrap()));
    let product = xy_problem(2, 3, vec![0.06, 0.12, 0.12, 0.14, 0.28, 0.28], vec![0, 1, 0, 1, 0, 1], 2);
    assert!(check_conditional_independence(&product));
}

#[test]
fn partial_invertibility_cases() {
    assert!(check_partially_invertible(&fixture("ex4").unwrap(), Role::X).unwrap());
    let inv = fixture("inv").unwrap();
    assert!(check_partially_invertible(&inv, Role::X).unwrap());
    assert!(check_partially_invertible(&inv, Role::Y).unwrap());
    assert!(!check_partially_invertible(&fixture("ex2").unwrap(), Role::X).unwrap());
}

#[test]
fn pruned_symbol_changes_no_quantity() {
    // ex4 with an extra X symbol that never occurs
    let base = fixture("ex4").unwrap();
    let mut p = Vec::new();
    let mut f = Vec::new();
    for x in 0..4 {
        for y in 0..3 {
            p.push(if x < 3 { base.p(x, y, 0) } else { 0.0 });
            f.push(if x < 3 { base.f(x, y, 0) } else { 0 });
        }
    }
    let padded = ProblemSpec::from_tables(
        common::labels(0..4),
        common::labels(0..3),
        common::labels(["*"]),
        base.f_labels().to_vec(),
        p,
        f,
    )
    .unwrap();
    assert_eq!(padded.nx(), 3);
    assert!(!padded.warnings().is_empty());
    let (a, b) = (base.joint(), padded.joint());
    for (s, c) in [(r(&[Role::X]), r(&[Role::Y])), (r(&[Role::Y]), r(&[Role::X])), (r(&[Role::X, Role::Y]), RoleSet::EMPTY)] {
        let ha = a.conditional_entropy(s, c).unwrap();
        let hb = b.conditional_entropy(s, c).unwrap();
        assert!((ha - hb).abs() < 1e-15);
    }
}
