//! The alternating iteration on the real line with T1(x) = x/4, T2(x) = x/5.

use tfp::fixpoint::{iterate_pair, verify_contraction, RealLine, StoppingRule};
use tfp::psi::PsiSpec;

pub fn run_example() {
    let t1 = |x: &f64| Ok(x / 4.0);
    let t2 = |x: &f64| Ok(x / 5.0);
    let psi = PsiSpec::linear(0.0, 1.0 / 3.0, 0.25).unwrap();
    let alpha = psi.alpha_effective().unwrap();

    let pairs: Vec<(f64, f64)> = (0..50)
        .map(|i| (i as f64 - 20.0, 3.0 * i as f64 - 70.0))
        .collect();
    let report = verify_contraction(&RealLine, t1, t2, &psi, &pairs).unwrap();
    println!(
        "contraction holds on {}/{} pairs",
        report.passed, report.checked
    );
    assert!(report.holds());

    let stop = StoppingRule {
        gap_tol: 1e-15,
        ..StoppingRule::default()
    };
    let trace = iterate_pair(&RealLine, t1, t2, alpha, 1.0, &stop).unwrap();
    for (k, (x, bound)) in trace
        .points
        .iter()
        .skip(1)
        .zip(&trace.bounds)
        .enumerate()
        .take(6)
    {
        println!("u{:<2} = {x:.6e}   bound {bound:.6e}", k + 1);
        assert!(x.abs() <= *bound);
    }
    println!(
        "stopped after {} steps ({})",
        trace.iterations(),
        trace.stop_reason.as_str()
    );
}

#[allow(dead_code)]
fn main() {
    run_example();
}
