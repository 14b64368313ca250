//! Acceptance suite: one test per verification criterion, each printing a
//! pass/fail line. All arithmetic is exact, so every check is an equality.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::sync::OnceLock;

use merminpoly::verify::{run_criterion, Ctx, VerifyOptions};

fn ctx() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(Ctx::new)
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn run(name: &str) {
    let report = run_criterion(name, ctx(), &opts()).expect("known criterion");
    println!("[acceptance] {}", report.line());
    assert!(
        report.pass,
        "criterion {name} failed: expected {} computed {}",
        report.expected, report.computed
    );
}

#[test]
fn acceptance_01_vertex_counts() {
    run("vertices");
}

#[test]
fn acceptance_02_classification_bijection() {
    run("bijection");
}

#[test]
fn acceptance_03_polytope_graphs() {
    run("graphs");
}

#[test]
fn acceptance_04_non_neighbor_certificate() {
    run("nonneighbor");
}

#[test]
fn acceptance_05_groups_and_stabilizers() {
    run("groups");
}

#[test]
fn acceptance_06_neighbor_orbits() {
    run("neighbor-orbits");
}

#[test]
fn acceptance_07_group_isomorphism() {
    run("phi");
}

#[test]
fn acceptance_08_rank_values() {
    run("ranks");
}

#[test]
fn acceptance_09_incidence_weights() {
    run("weights");
}

#[test]
fn acceptance_10_fine_pipeline() {
    run("fine");
}

#[test]
fn acceptance_11_even_class_decompositions() {
    run("noncontextual");
}

#[test]
fn acceptance_12_stabilizer_dual_membership() {
    run("lambda2");
}

#[test]
fn acceptance_13_structure_counts() {
    run("structure");
}
