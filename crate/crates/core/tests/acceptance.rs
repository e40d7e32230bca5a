//! The acceptance gate: one test per criterion, each printing a single
//! stable report line (visible with `-- --nocapture`). The two budgeted
//! criteria also assert their wall-clock limits.

use std::time::Duration;

use quadric_core::selftest::{criteria_count, run_criterion, CriterionOutcome};

fn check(index: usize) -> CriterionOutcome {
    let outcome = run_criterion(index);
    println!("{}", outcome.report_line());
    assert!(outcome.passed, "{}", outcome.report_line());
    outcome
}

#[test]
fn criterion_01_rank_3_to_2_boundary_table() {
    let outcome = check(1);
    assert!(
        outcome.elapsed < Duration::from_secs(1),
        "took {:?}, budget is 1 s",
        outcome.elapsed
    );
}

#[test]
fn criterion_02_rank_4_to_3_boundary_values() {
    check(2);
}

#[test]
fn criterion_03_rank_6_to_5_boundary_values() {
    let outcome = check(3);
    assert!(
        outcome.elapsed < Duration::from_secs(30),
        "took {:?}, budget is 30 s",
        outcome.elapsed
    );
}

#[test]
fn criterion_04_single_class_boundaries_and_parity_gate() {
    check(4);
}

#[test]
fn criterion_05_closed_forms_for_hatted_class_boundaries() {
    check(5);
}

#[test]
fn criterion_06_rank_4_coaction_table() {
    check(6);
}

#[test]
fn criterion_07_paired_index_coaction_cross_check() {
    check(7);
}

#[test]
fn criterion_08_relation_ideal_embeds_to_zero() {
    check(8);
}

#[test]
fn criterion_09_chern_images() {
    check(9);
}

#[test]
fn criterion_10_primitive_generator_sets() {
    check(10);
}

#[test]
fn criterion_11_randomized_algebra_laws() {
    check(11);
}

#[test]
fn criterion_12_hat_elements_and_rank_6_identities() {
    check(12);
}

#[test]
fn criteria_are_exhaustive() {
    assert_eq!(criteria_count(), 12, "every criterion needs a test above");
}
