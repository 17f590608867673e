//! Solve from two starting points, save both traces and overlay them in one
//! SVG.

use tfp::cli::{
    read_trace_file, render_svg, write_trace_file, PlotTrace, ProblemFile, Series, TraceSummary,
};
use tfp::hpd::PdMatrix;
use tfp::solver::{solve, trace_rows};

const DATA: &str = include_str!("data/example_4_2.json");

pub fn run_example() {
    let loaded = ProblemFile::from_json(DATA).unwrap().load().unwrap();
    let dir = std::env::temp_dir().join(format!("tfp-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let starts = [
        ("start_a", loaded.x0.clone()),
        ("start_b", PdMatrix::from_diag(&[0.1, 5.0, 20.0]).unwrap()),
    ];
    let mut traces = Vec::new();
    for (name, x0) in starts {
        let result = solve(&loaded.problem, &x0, &loaded.options).unwrap();
        let rows = trace_rows(&loaded.problem, &result.trace).unwrap();
        let summary = TraceSummary {
            solution: result.solution.matrix().clone(),
            alpha_used: result.alpha_used,
            stop_reason: result.trace.stop_reason.as_str().into(),
            seed: loaded.options.seed,
            iterations: result.trace.iterations(),
            residuals: [result.residual1, result.residual2],
            dist: result.dist_to_identity,
            certified: true,
        };
        let path = dir.join(format!("{name}.csv"));
        write_trace_file(&path, &rows, &summary).unwrap();
        traces.push(PlotTrace {
            label: name.into(),
            rows: read_trace_file(&path).unwrap(),
        });
    }
    let svg = render_svg(&traces, &[Series::Gap, Series::Bound]);
    let out = dir.join("convergence.svg");
    std::fs::write(&out, &svg).unwrap();
    println!("wrote {} ({} bytes)", out.display(), svg.len());
    assert_eq!(svg.matches("<polyline").count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[allow(dead_code)]
fn main() {
    run_example();
}
