//! A type-1 pair with a known common solution X = diag(2, 3):
//! the right-hand sides Q1, Q2 are built so that X solves both equations.

use tfp::hpd::{congruence, matrix_power, CMatrix, Complex64, PdMatrix};
use tfp::solver::{solve, MatrixFunction, ProblemSpec, SolveOptions};
use tfp::thompson::distance;

pub fn manufactured_problem() -> (ProblemSpec, PdMatrix) {
    let c = |re, im| Complex64::new(re, im);
    let a = CMatrix::from_rows(vec![
        vec![c(0.5, 0.0), c(0.0, 0.1)],
        vec![c(0.15, 0.0), c(0.5, 0.0)],
    ])
    .unwrap();
    let x = PdMatrix::from_diag(&[2.0, 3.0]).unwrap();
    let f = MatrixFunction::power(0.5).unwrap();
    let g = MatrixFunction::power(-0.5).unwrap();
    let x2 = matrix_power(&x, 2.0).unwrap();
    let q = |func: &MatrixFunction| {
        let term = congruence(&a, func.apply(&x).unwrap().hermitian()).unwrap();
        PdMatrix::new(x2.hermitian().sub(&term).unwrap()).unwrap()
    };
    let problem = ProblemSpec::type1(q(&f), q(&g), vec![a], 2.0, f, g, 2.0, 0.5).unwrap();
    (problem, x)
}

pub fn run_example() {
    let (problem, expected) = manufactured_problem();
    // the sampled conditions are not met by two distinct equations, so the
    // run is forced and certified by residuals instead
    let options = SolveOptions {
        force: true,
        ..SolveOptions::default()
    };
    let result = solve(&problem, &PdMatrix::identity(2), &options).unwrap();
    println!(
        "{} iterations, residuals {:.2e} / {:.2e}, alpha = {}",
        result.trace.iterations(),
        result.residual1,
        result.residual2,
        result.alpha_used
    );
    let err = distance(&result.solution, &expected).unwrap();
    println!("d(X, diag(2,3)) = {err:.2e}");
    assert!(err < 1e-10);
}

#[allow(dead_code)]
fn main() {
    run_example();
}
