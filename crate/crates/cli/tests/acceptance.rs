//! Acceptance suite: every exit criterion runs as one test against the
//! verification suites, printing a pass/fail line (visible with
//! `cargo test -p torelli-cli --test acceptance -- --nocapture`).
//! All comparisons are exact; the stated runtime ceilings are asserted
//! where given.

use std::time::Instant;
use torelli_cli::config::Config;
use torelli_cli::verify::{run_suite, SuiteParams, SuiteReport};

fn run(id: &str) -> SuiteReport {
    run_suite(id, &Config::default(), SuiteParams::default())
        .unwrap_or_else(|e| panic!("suite {id} did not run: {e}"))
}

fn report_line(criterion: usize, rep: &SuiteReport) {
    println!(
        "criterion {:2} [{}] {}",
        criterion,
        rep.id,
        if rep.pass() { "PASS" } else { "FAIL" }
    );
    for c in rep.checks.iter().filter(|c| !c.pass) {
        println!(
            "    failing check: {} (expected {}, got {}){}",
            c.name,
            c.expected,
            c.actual,
            c.note
                .as_ref()
                .map(|n| format!(" — {n}"))
                .unwrap_or_default()
        );
    }
}

fn assert_pass(criterion: usize, rep: &SuiteReport) {
    report_line(criterion, rep);
    for c in &rep.checks {
        assert!(
            c.pass,
            "criterion {criterion} check '{}': expected {}, got {}{}",
            c.name,
            c.expected,
            c.actual,
            c.note
                .as_ref()
                .map(|n| format!(" — {n}"))
                .unwrap_or_default()
        );
    }
}

#[test]
fn criterion_01_wedge_square_decompositions() {
    let t = Instant::now();
    let rep = run("prop-9.5");
    assert_pass(1, &rep);
    assert!(
        t.elapsed().as_secs() < 60,
        "runtime target: under 60 s at g = 6"
    );
}

#[test]
fn criterion_02_graded_invariants_both_routes() {
    let t = Instant::now();
    let rep = run("cor-9.3");
    assert_pass(2, &rep);
    assert!(
        t.elapsed().as_secs() < 120,
        "runtime target: under 120 s at g = 3, degree 6"
    );
}

#[test]
fn criterion_03_johnson_derivation_identities() {
    let rep = run("lemma-9.6");
    assert_pass(3, &rep);
}

#[test]
fn criterion_04_bracket_component_tables() {
    let rep = run("prop-9.9");
    assert_pass(4, &rep);
}

#[test]
fn criterion_05_hom_dimensions_and_calibration() {
    let rep = run("prop-9.12");
    assert_pass(5, &rep);
}

#[test]
fn criterion_06_section_classification() {
    let t = Instant::now();
    let rep = run("prop-10.4");
    assert_pass(6, &rep);
    assert!(t.elapsed().as_secs() < 60, "runtime target: seconds");
}

#[test]
fn criterion_07_connecting_map_and_fiber() {
    let rep = run("lemma-18.2");
    assert_pass(7, &rep);
}

#[test]
fn criterion_08_point_class_identities() {
    let rep = run("cor-12.6");
    assert_pass(8, &rep);
}

#[test]
fn criterion_09_h1_table() {
    let rep = run("prop-17.1");
    assert_pass(9, &rep);
}

#[test]
fn criterion_10_branched_cover_formulas() {
    let rep = run("eq-3");
    assert_pass(10, &rep);
}
