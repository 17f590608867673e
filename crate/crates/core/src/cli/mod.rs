//! The `tfp` command line: `check`, `solve` and `plot`.
//!
//! Exit codes: 0 success, 1 numerical failure, 2 parse/schema/usage error,
//! 3 conditions not verified, 4 no certified convergence (the partial trace
//! is still written), 5 starting point outside the ball.

pub mod plot;
pub mod problem_file;
pub mod trace;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::solver::{
    check_conditions, solve, trace_rows, ConditionReport, ConditionSummary, SolveError, SolveResult,
};

pub use plot::{render_svg, PlotTrace, Series};
pub use problem_file::{
    read_problem, read_start, FileOptions, FunctionRepr, LoadError, LoadedProblem, ProblemFile,
    StartRepr,
};
pub use trace::{
    read_trace, read_trace_file, summary_path, write_trace, write_trace_file, TraceError,
    TraceSummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERIC: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONDITIONS: i32 = 3;
pub const EXIT_NOT_CONVERGED: i32 = 4;
pub const EXIT_X0_DOMAIN: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "tfp",
    version,
    about = "Common positive definite solutions of paired nonlinear matrix equations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the sufficiency conditions on seeded samples from the ball.
    Check {
        file: PathBuf,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = "TFP_SEED")]
        seed: Option<u64>,
        /// Where to write the JSON report.
        #[arg(long, default_value = "check_report.json")]
        out: PathBuf,
        /// Evaluate samples on all cores (same report as serial).
        #[arg(long)]
        parallel: bool,
    },
    /// Run the alternating iteration and write a trace CSV plus summary JSON.
    Solve {
        file: PathBuf,
        #[arg(long, default_value = "trace.csv")]
        out: PathBuf,
        /// Starting matrix: `identity` or a JSON file with a matrix literal.
        #[arg(long)]
        x0: Option<String>,
        /// Skip the condition gate.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, env = "TFP_SEED")]
        seed: Option<u64>,
    },
    /// Draw one or more traces as a semilog SVG.
    Plot {
        #[arg(required = true)]
        traces: Vec<PathBuf>,
        #[arg(long, default_value = "convergence.svg")]
        out: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "gap")]
        series: Vec<Series>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    execute(cli.command, out, err)
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match command {
        Command::Check {
            file,
            samples,
            seed,
            out: report_path,
            parallel,
        } => cmd_check(&file, samples, seed, &report_path, parallel, out, err),
        Command::Solve {
            file,
            out: trace_path,
            x0,
            force,
            samples,
            seed,
        } => cmd_solve(
            &file,
            &trace_path,
            x0.as_deref(),
            force,
            samples,
            seed,
            out,
            err,
        ),
        Command::Plot {
            traces,
            out: svg_path,
            series,
        } => cmd_plot(&traces, &svg_path, &series, out, err),
    }
}

fn load(file: &Path, err: &mut dyn Write) -> Option<LoadedProblem> {
    match read_problem(file) {
        Ok(p) => Some(p),
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", file.display());
            None
        }
    }
}

fn print_summary(out: &mut dyn Write, c: &ConditionSummary) {
    let _ = writeln!(
        out,
        "  {:<10} {:>5}/{:<5} ({:.3})  {}",
        c.name,
        c.passed,
        c.checked,
        c.pass_ratio(),
        c.description
    );
    if let Some(w) = &c.worst {
        let tag = if c.holds() { "tightest" } else { "witness" };
        let _ = writeln!(
            out,
            "             {tag}: sample {} [{}] lhs = {:.9e}, rhs = {:.9e}",
            w.sample, w.inequality.label, w.inequality.lhs, w.inequality.rhs
        );
        if !c.holds() {
            let m = |x: &crate::hpd::CMatrix| serde_json::to_string(x).unwrap_or_default();
            let _ = writeln!(out, "             X = {}", m(&w.x));
            let _ = writeln!(out, "             Y = {}", m(&w.y));
        }
    }
}

/// Human-readable condition report.
pub fn print_report(out: &mut dyn Write, report: &ConditionReport) {
    let _ = writeln!(
        out,
        "{} conditions: {} samples, seed {}, ball radius {}",
        report.kind, report.samples, report.seed, report.radius
    );
    for c in &report.conditions {
        print_summary(out, c);
    }
    if !report.diagnostics.is_empty() {
        let _ = writeln!(out, "diagnostics (not gating):");
        for c in &report.diagnostics {
            print_summary(out, c);
        }
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.passed() { "PASS" } else { "FAIL" }
    );
}

pub fn report_json(report: &ConditionReport) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize") + "\n"
}

fn cmd_check(
    file: &Path,
    samples: Option<usize>,
    seed: Option<u64>,
    report_path: &Path,
    parallel: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(loaded) = load(file, err) else {
        return EXIT_PARSE;
    };
    let mut opts = loaded.options.check_options();
    if let Some(s) = samples {
        if s == 0 {
            let _ = writeln!(err, "error: --samples must be at least 1");
            return EXIT_PARSE;
        }
        opts.samples = s;
    }
    if let Some(s) = seed {
        opts.seed = s;
    }
    opts.parallel = parallel;
    let report = match check_conditions(&loaded.problem, &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_NUMERIC;
        }
    };
    print_report(out, &report);
    if let Err(e) = std::fs::write(report_path, report_json(&report)) {
        let _ = writeln!(err, "error: cannot write {}: {e}", report_path.display());
        return EXIT_NUMERIC;
    }
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CONDITIONS
    }
}

fn write_result(
    loaded: &LoadedProblem,
    result: &SolveResult,
    seed: u64,
    trace_path: &Path,
    certified: bool,
    err: &mut dyn Write,
) -> bool {
    let rows = match trace_rows(&loaded.problem, &result.trace) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return false;
        }
    };
    let summary = TraceSummary {
        solution: result.solution.matrix().clone(),
        alpha_used: result.alpha_used,
        stop_reason: result.trace.stop_reason.as_str().to_string(),
        seed,
        iterations: result.trace.iterations(),
        residuals: [result.residual1, result.residual2],
        dist: result.dist_to_identity,
        certified,
    };
    match write_trace_file(trace_path, &rows, &summary) {
        Ok(()) => true,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            false
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    file: &Path,
    trace_path: &Path,
    x0: Option<&str>,
    force: bool,
    samples: Option<usize>,
    seed: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let Some(mut loaded) = load(file, err) else {
        return EXIT_PARSE;
    };
    match x0 {
        None => {}
        Some("identity") => loaded.x0 = crate::hpd::PdMatrix::identity(loaded.problem.n()),
        Some(path) => match read_start(Path::new(path), loaded.problem.n()) {
            Ok(x) => loaded.x0 = x,
            Err(e) => {
                let _ = writeln!(err, "error: {path}: {e}");
                return EXIT_PARSE;
            }
        },
    }
    let mut opts = loaded.options;
    opts.force |= force;
    if let Some(s) = samples {
        opts.samples = s.max(1);
    }
    if let Some(s) = seed {
        opts.seed = s;
    }

    match solve(&loaded.problem, &loaded.x0, &opts) {
        Ok(result) => {
            if !write_result(&loaded, &result, opts.seed, trace_path, true, err) {
                return EXIT_NUMERIC;
            }
            let _ = writeln!(
                out,
                "converged after {} iterations ({}): residuals {:.3e}, {:.3e}; d(X, I) = {:.6}",
                result.trace.iterations(),
                result.trace.stop_reason.as_str(),
                result.residual1,
                result.residual2,
                result.dist_to_identity
            );
            let _ = writeln!(out, "trace written to {}", trace_path.display());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match &e {
                SolveError::X0Domain { .. } => EXIT_X0_DOMAIN,
                SolveError::ConditionsNotVerified(report) => {
                    print_report(out, report);
                    EXIT_CONDITIONS
                }
                SolveError::MaxIterationsExceeded(r) | SolveError::ResidualNotCertified(r) => {
                    if write_result(&loaded, r, opts.seed, trace_path, false, err) {
                        let _ = writeln!(out, "partial trace written to {}", trace_path.display());
                    }
                    EXIT_NOT_CONVERGED
                }
                SolveError::MapDomain { .. } | SolveError::Numeric(_) => EXIT_NUMERIC,
            }
        }
    }
}

fn cmd_plot(
    traces: &[PathBuf],
    svg_path: &Path,
    series: &[Series],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut plots = Vec::with_capacity(traces.len());
    for path in traces {
        match read_trace_file(path) {
            Ok(rows) => plots.push(PlotTrace {
                label: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string()),
                rows,
            }),
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_PARSE;
            }
        }
    }
    let svg = render_svg(&plots, series);
    if let Err(e) = std::fs::write(svg_path, svg) {
        let _ = writeln!(err, "error: cannot write {}: {e}", svg_path.display());
        return EXIT_NUMERIC;
    }
    let _ = writeln!(out, "plot written to {}", svg_path.display());
    EXIT_OK
}
