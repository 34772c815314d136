//! One exact check per acceptance criterion. Each prints a single
//! `PASS`/`FAIL` line; failures also list the failing instances.

use std::time::Instant;

use weiljet::verify::{run_suite, CheckOutcome, SuiteParams, DEFAULT_SEED};

fn criterion(number: u32, title: &str, suites: &[&str]) -> bool {
    let params = SuiteParams {
        seed: DEFAULT_SEED,
        ..SuiteParams::default()
    };
    let start = Instant::now();
    let mut outcomes: Vec<CheckOutcome> = Vec::new();
    for s in suites {
        outcomes.extend(run_suite(s, &params).expect("known suite"));
    }
    let failed: Vec<&CheckOutcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let ok = !outcomes.is_empty() && failed.is_empty();
    println!(
        "{} criterion {number}: {title} ({} checks, {} failed, {} ms)",
        if ok { "PASS" } else { "FAIL" },
        outcomes.len(),
        failed.len(),
        start.elapsed().as_millis()
    );
    for f in failed.iter().take(10) {
        println!("    {}: {}", f.id, f.witness.as_deref().unwrap_or("-"));
    }
    ok
}

#[test]
fn simple_polynomial_dimensions() {
    assert!(criterion(
        1,
        "simple-polynomial dimensions",
        &["simple-dims"]
    ));
}

#[test]
fn degree_dimension_table() {
    assert!(criterion(2, "degree/dimension table", &["degree-table"]));
}

#[test]
fn quasi_colimit_certification() {
    assert!(criterion(3, "quasi-colimit certification", &["quasicolim"]));
}

#[test]
fn scaling_laws() {
    assert!(criterion(
        4,
        "scaling laws of strong difference and addition",
        &["scaling", "microcube"]
    ));
}

#[test]
fn naturality() {
    assert!(criterion(
        5,
        "naturality under polynomial maps",
        &["naturality"]
    ));
}

#[test]
fn affine_bundle_theorem() {
    assert!(criterion(6, "affine bundle of jets", &["affine"]));
}

#[test]
fn comparison_theorems() {
    assert!(criterion(
        7,
        "comparison of D_n and D^n jets",
        &["phi-psi", "morphism"]
    ));
}

#[test]
fn dimension_count() {
    assert!(criterion(
        8,
        "dimension of the form spaces and rank of Psi",
        &["dims"]
    ));
}

#[test]
fn negative_suite() {
    assert!(criterion(
        9,
        "documented mutants are rejected",
        &["negative"]
    ));
}
