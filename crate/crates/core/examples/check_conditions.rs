//! Sampled sufficiency checks: one problem that satisfies them and one that
//! provably does not (F(X) = X with l = 1/2 gives d(F(X), F(Y)) = d(X, Y)).

use tfp::cli::{print_report, ProblemFile};
use tfp::hpd::PdMatrix;
use tfp::solver::{check_conditions, CheckOptions};
use tfp::thompson::distance;

const PASS: &str = include_str!("data/constant_pass.json");
const FAIL: &str = include_str!("data/power_fail.json");

pub fn run_example() {
    let mut stdout = std::io::stdout();
    for text in [PASS, FAIL] {
        let loaded = ProblemFile::from_json(text).unwrap().load().unwrap();
        let report = check_conditions(&loaded.problem, &CheckOptions::default()).unwrap();
        print_report(&mut stdout, &report);
        println!();
    }

    let loaded = ProblemFile::from_json(FAIL).unwrap().load().unwrap();
    let report = check_conditions(&loaded.problem, &CheckOptions::default()).unwrap();
    let b = report.condition("B").unwrap();
    assert!(!b.holds());
    let w = b.worst.as_ref().unwrap();
    let x = PdMatrix::from_matrix(w.x.clone()).unwrap();
    let y = PdMatrix::from_matrix(w.y.clone()).unwrap();
    let dxy = distance(&x, &y).unwrap();
    println!(
        "witness re-evaluated: d(X,Y) = {dxy:.6} > l*d(X,Y) = {:.6}",
        loaded.problem.l * dxy
    );
    assert!(dxy > loaded.problem.l * dxy);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
