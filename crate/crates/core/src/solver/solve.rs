use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::fixpoint::{iterate_pair, IterateError, IterationTrace, MetricSpace, StoppingRule};
use crate::hpd::PdMatrix;
use crate::thompson::{distance, distance_to_identity};

use super::conditions::{check_conditions, CheckOptions, ConditionReport, DEFAULT_SAMPLES};
use super::problem::{residuals, BallConvention, ProblemSpec};

/// `P(n)` with the Thompson metric.
#[derive(Debug, Clone, Copy, Default)]
pub struct ThompsonSpace;

impl MetricSpace for ThompsonSpace {
    type Point = PdMatrix;

    fn distance(&self, x: &PdMatrix, y: &PdMatrix) -> Result<f64> {
        distance(x, y)
    }
}

/// Slack on the starting-point ball test.
const X0_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub gap_tol: f64,
    pub residual_tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    pub samples: usize,
    /// Run even when the sampled condition report fails (or skip it).
    pub force: bool,
    pub parallel: bool,
    pub ball: BallConvention,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            gap_tol: 1e-12,
            residual_tol: 1e-10,
            max_iter: 500,
            seed: 42,
            samples: DEFAULT_SAMPLES,
            force: false,
            parallel: false,
            ball: BallConvention::Radius,
        }
    }
}

impl SolveOptions {
    pub fn check_options(&self) -> CheckOptions {
        CheckOptions {
            samples: self.samples,
            seed: self.seed,
            parallel: self.parallel,
            ball: self.ball,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub solution: PdMatrix,
    pub trace: IterationTrace<PdMatrix>,
    pub residual1: f64,
    pub residual2: f64,
    pub dist_to_identity: f64,
    pub alpha_used: f64,
    /// The condition report the run was gated on; `None` when forced.
    pub conditions: Option<ConditionReport>,
}

impl SolveResult {
    pub fn max_residual(&self) -> f64 {
        self.residual1.max(self.residual2)
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("starting point lies outside the ball: d(X0, I) = {distance:.6} > {radius:.6}")]
    X0Domain { distance: f64, radius: f64 },

    #[error("sufficiency conditions not verified on the sampled ball (use force to override)")]
    ConditionsNotVerified(Box<ConditionReport>),

    #[error("no convergence within {} iterations (last gap {:.3e})", .0.trace.iterations(), .0.trace.gaps.last().copied().unwrap_or(f64::NAN))]
    MaxIterationsExceeded(Box<SolveResult>),

    #[error("iteration stopped but residuals {:.3e}, {:.3e} exceed the tolerance", .0.residual1, .0.residual2)]
    ResidualNotCertified(Box<SolveResult>),

    #[error("map evaluation failed at step {step}: {source}")]
    MapDomain { step: usize, source: Error },

    #[error(transparent)]
    Numeric(#[from] Error),
}

impl SolveError {
    /// Partial result for the failures that still produced a trace.
    pub fn partial(&self) -> Option<&SolveResult> {
        match self {
            Self::MaxIterationsExceeded(r) | Self::ResidualNotCertified(r) => Some(r),
            _ => None,
        }
    }
}

/// Runs the alternating iteration `X_k = T1(X_{k−1})` (k odd),
/// `X_k = T2(X_{k−1})` (k even) from `x0`, with the contraction constant taken
/// from the problem, and certifies the limit by its residuals.
pub fn solve(
    problem: &ProblemSpec,
    x0: &PdMatrix,
    options: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    problem.validate()?;
    if x0.dim() != problem.n() {
        return Err(Error::DimensionMismatch {
            expected: problem.n(),
            found: x0.dim(),
        }
        .into());
    }
    let radius = problem.ball_radius(options.ball);
    let d0 = distance_to_identity(x0)?;
    if d0 > radius + X0_SLACK {
        return Err(SolveError::X0Domain {
            distance: d0,
            radius,
        });
    }

    let conditions = if options.force {
        None
    } else {
        let report = check_conditions(problem, &options.check_options())?;
        if !report.passed() {
            return Err(SolveError::ConditionsNotVerified(Box::new(report)));
        }
        Some(report)
    };

    let alpha = problem.alpha();
    let (t1, t2) = problem.maps();
    let stop = StoppingRule {
        gap_tol: options.gap_tol,
        max_iter: options.max_iter,
        bound_tol: None,
    };
    let outcome = iterate_pair(
        &ThompsonSpace,
        |x: &PdMatrix| t1.apply(x),
        |x: &PdMatrix| t2.apply(x),
        alpha,
        x0.clone(),
        &stop,
    );
    let finish = |trace: IterationTrace<PdMatrix>| -> Result<SolveResult> {
        let solution = trace.last().clone();
        let (residual1, residual2) = residuals(problem, &solution)?;
        Ok(SolveResult {
            dist_to_identity: distance_to_identity(&solution)?,
            solution,
            trace,
            residual1,
            residual2,
            alpha_used: alpha,
            conditions: conditions.clone(),
        })
    };
    match outcome {
        Ok(trace) => {
            let result = finish(trace)?;
            if result.max_residual() > options.residual_tol {
                return Err(SolveError::ResidualNotCertified(Box::new(result)));
            }
            Ok(result)
        }
        Err(IterateError::MaxIterationsExceeded(trace)) => {
            Err(SolveError::MaxIterationsExceeded(Box::new(finish(*trace)?)))
        }
        Err(IterateError::MapDomain { step, source }) => {
            Err(SolveError::MapDomain { step, source })
        }
        Err(IterateError::Setup(msg)) => Err(Error::InvalidProblem(msg).into()),
    }
}

/// One row of a persisted convergence trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub k: usize,
    pub thompson_gap: f64,
    pub error_bound: f64,
    pub residual1: f64,
    pub residual2: f64,
    pub dist_to_identity: f64,
}

/// Per-iteration diagnostics for every iterate after the start point.
pub fn trace_rows(
    problem: &ProblemSpec,
    trace: &IterationTrace<PdMatrix>,
) -> Result<Vec<TraceRow>> {
    trace
        .points
        .iter()
        .skip(1)
        .enumerate()
        .map(|(i, x)| {
            let (residual1, residual2) = residuals(problem, x)?;
            Ok(TraceRow {
                k: i + 1,
                thompson_gap: trace.gaps[i],
                error_bound: trace.bounds[i],
                residual1,
                residual2,
                dist_to_identity: distance_to_identity(x)?,
            })
        })
        .collect()
}
