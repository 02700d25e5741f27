//! One test per acceptance criterion. Each prints a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture --test-threads 1`
//! to see the lines in order.

use jetmoduli::verify::{run_check, VerifyOptions};

fn criterion(id: u8) {
    let deep = std::env::var("JETMODULI_DEEP").is_ok_and(|v| v == "1");
    let r = run_check(id, VerifyOptions { deep });
    println!("{}  ({} ms)", r.line(), r.elapsed_ms);
    assert!(r.passed, "{}", r.line());
}

#[test]
fn c01_series_triple_agreement() {
    criterion(1);
}

#[test]
fn c02_generic_stabilizer_dimensions() {
    criterion(2);
}

#[test]
fn c03_stabilizer_witnesses() {
    criterion(3);
}

#[test]
fn c04_orbit_dimensions_by_rank() {
    criterion(4);
}

#[test]
fn c05_filtration_triviality() {
    criterion(5);
}

#[test]
fn c06_projection_commutes_with_action() {
    criterion(6);
}

#[test]
fn c07_action_homomorphism() {
    criterion(7);
}

#[test]
fn c08_normal_coordinate_equivalence() {
    criterion(8);
}

#[test]
fn c09_operator_identities() {
    criterion(9);
}

#[test]
fn c10_polynomiality_and_poles() {
    criterion(10);
}
