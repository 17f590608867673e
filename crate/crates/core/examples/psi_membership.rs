//! Control functions: effective constants and grid-based class membership.

use tfp::psi::{membership_report, PsiSpec, DEFAULT_GRID};

pub fn run_example() {
    let specs = [
        PsiSpec::scaled_first(0.5).unwrap(),
        PsiSpec::linear(0.0, 1.0 / 3.0, 0.25).unwrap(),
        PsiSpec::linear(0.2, 0.2, 0.2).unwrap(),
        PsiSpec::scaled_max(0.9).unwrap(),
    ];
    for psi in &specs {
        let alpha = psi.alpha_effective().unwrap();
        let report = membership_report(psi, DEFAULT_GRID);
        println!(
            "{:<12} {:?}: alpha = {alpha:.6}, {} grid points, {} counterexamples",
            psi.kind(),
            psi.params(),
            report.points_checked,
            report.counterexamples.len()
        );
        assert!(report.holds());
    }

    // coefficients summing to one leave the class
    let bad = PsiSpec::Linear {
        m: 0.5,
        n: 0.25,
        o: 0.25,
    };
    assert!(bad.alpha_effective().is_err());
    assert!(!membership_report(&bad, DEFAULT_GRID).holds());
    println!("linear(0.5, 0.25, 0.25) rejected");
}

#[allow(dead_code)]
fn main() {
    run_example();
}
