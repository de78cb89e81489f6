//! One test per acceptance criterion; each prints a single PASS/FAIL line.
use aniso_core::acceptance::run_criterion;
fn check(id: usize) {
    let r = run_criterion(id);
    println!("{}", r.line());
    eprintln!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn criterion_01_stanley_dimension_check() {
    check(1);
}

#[test]
fn criterion_02_psi_well_definedness() {
    check(2);
}

#[test]
fn criterion_03_oracle_equivalence() {
    check(3);
}

#[test]
fn criterion_04_char2_certification() {
    check(4);
}

#[test]
fn criterion_05_move_invariance() {
    check(5);
}

#[test]
fn criterion_06_identity_suite() {
    check(6);
}

#[test]
fn criterion_07_differential_operator() {
    check(7);
}

#[test]
fn criterion_08_degree_argument() {
    check(8);
}

#[test]
fn criterion_09_lefschetz_for_two_spheres() {
    check(9);
}

#[test]
fn criterion_10_algebra_layer() {
    check(10);
}
