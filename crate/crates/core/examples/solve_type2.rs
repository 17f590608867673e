//! X^2 = A* X^(1/2) A, X^3 = A* X^(1/4) A with an orthogonal A. The identity
//! solves both; the iteration finds it from any start in the ball.

use tfp::cli::ProblemFile;
use tfp::hpd::{random_pd_in_ball, CMatrix};
use tfp::solver::{solve, BallConvention};

const DATA: &str = include_str!("data/example_4_2.json");

pub fn run_example() {
    let loaded = ProblemFile::from_json(DATA).unwrap().load().unwrap();
    let radius = loaded.problem.ball_radius(BallConvention::Radius);
    let starts = [
        ("file x0", loaded.x0.clone()),
        ("random", random_pd_in_ball(3, radius, 11)),
    ];
    for (name, x0) in starts {
        let result = solve(&loaded.problem, &x0, &loaded.options).unwrap();
        let err = result
            .solution
            .matrix()
            .max_abs_diff(&CMatrix::identity(3))
            .unwrap();
        println!(
            "{name:>8}: {} iterations, max |X - I| = {err:.2e}, residuals {:.2e} / {:.2e}",
            result.trace.iterations(),
            result.residual1,
            result.residual2
        );
        assert!(err < 1e-10);
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
