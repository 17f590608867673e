//! Alternating common-fixed-point iteration for a pair of self-maps of a
//! complete metric space.
//!
//! Starting from `u₀`, odd steps apply `T1` and even steps apply `T2`:
//! `u₁ = T1(u₀)`, `u₂ = T2(u₁)`, `u₃ = T1(u₂)`, …  When the pair satisfies
//! `d(T1x, T2y) ≤ ψ(d(x,y), d(x,T1x), d(y,T2y))` for a control function with
//! constant `α`, the gaps shrink geometrically and
//! `d(uₙ, z) ≤ α^{n−1}/(1−α) · d(u₀, u₁)`.

use serde::Serialize;
use thiserror::Error;

use crate::error::{Error, Result};
use crate::psi::PsiSpec;

/// A metric on some point type. The engine never inspects points beyond
/// measuring distances between them.
pub trait MetricSpace {
    type Point: Clone;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Result<f64>;
}

/// The real line with `|x − y|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealLine;

impl MetricSpace for RealLine {
    type Point = f64;

    fn distance(&self, x: &f64, y: &f64) -> Result<f64> {
        Ok((x - y).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StoppingRule {
    /// Stop once a step moves the iterate by at most this much.
    pub gap_tol: f64,
    pub max_iter: usize,
    /// Optionally stop once the a-priori error bound falls to this level.
    pub bound_tol: Option<f64>,
}

impl Default for StoppingRule {
    fn default() -> Self {
        Self {
            gap_tol: 1e-12,
            max_iter: 500,
            bound_tol: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    GapTol,
    MaxIter,
    BoundTol,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GapTol => "gap_tol",
            Self::MaxIter => "max_iter",
            Self::BoundTol => "bound_tol",
        }
    }
}

/// Every iterate together with the step gaps `d(u_{k−1}, u_k)` and the
/// a-priori bound on `d(u_k, z)` for `k = 1, 2, …`.
#[derive(Debug, Clone)]
pub struct IterationTrace<P> {
    pub points: Vec<P>,
    pub gaps: Vec<f64>,
    pub bounds: Vec<f64>,
    pub alpha: f64,
    pub stop_reason: StopReason,
}

impl<P> IterationTrace<P> {
    pub fn iterations(&self) -> usize {
        self.gaps.len()
    }

    pub fn last(&self) -> &P {
        self.points
            .last()
            .expect("trace holds at least the start point")
    }
}

#[derive(Debug, Error)]
pub enum IterateError<P: std::fmt::Debug> {
    #[error("no convergence within {} iterations (last gap {:.3e})", .0.iterations(), .0.gaps.last().copied().unwrap_or(f64::NAN))]
    MaxIterationsExceeded(Box<IterationTrace<P>>),

    #[error("map rejected the iterate at step {step}: {source}")]
    MapDomain { step: usize, source: Error },

    #[error("invalid iteration setup: {0}")]
    Setup(String),
}

/// `α^{n−1} · d01 / (1 − α)`, with the convention `0⁰ = 1`.
pub fn error_bound(alpha: f64, d01: f64, n: usize) -> f64 {
    assert!(n >= 1, "the bound is stated for n >= 1");
    let exp = i32::try_from(n - 1).unwrap_or(i32::MAX);
    alpha.powi(exp) * d01 / (1.0 - alpha)
}

/// Runs the alternating scheme until a step gap drops to `stop.gap_tol`
/// (or the bound drops to `stop.bound_tol`). Reaching `stop.max_iter` first
/// is an error that carries the partial trace.
pub fn iterate_pair<S, F1, F2>(
    space: &S,
    t1: F1,
    t2: F2,
    alpha: f64,
    u0: S::Point,
    stop: &StoppingRule,
) -> std::result::Result<IterationTrace<S::Point>, IterateError<S::Point>>
where
    S: MetricSpace,
    S::Point: std::fmt::Debug,
    F1: Fn(&S::Point) -> Result<S::Point>,
    F2: Fn(&S::Point) -> Result<S::Point>,
{
    if !(0.0..1.0).contains(&alpha) {
        return Err(IterateError::Setup(format!(
            "α must lie in [0, 1), got {alpha}"
        )));
    }
    if stop.max_iter == 0 {
        return Err(IterateError::Setup("max_iter must be at least 1".into()));
    }

    let mut trace = IterationTrace {
        points: vec![u0],
        gaps: Vec::new(),
        bounds: Vec::new(),
        alpha,
        stop_reason: StopReason::MaxIter,
    };
    for step in 1..=stop.max_iter {
        let prev = trace.last();
        let next = if step % 2 == 1 { t1(prev) } else { t2(prev) }
            .map_err(|source| IterateError::MapDomain { step, source })?;
        let gap = space
            .distance(prev, &next)
            .map_err(|source| IterateError::MapDomain { step, source })?;
        let d01 = trace.gaps.first().copied().unwrap_or(gap);
        let bound = error_bound(alpha, d01, step);
        trace.points.push(next);
        trace.gaps.push(gap);
        trace.bounds.push(bound);

        if gap <= stop.gap_tol {
            trace.stop_reason = StopReason::GapTol;
            return Ok(trace);
        }
        if stop.bound_tol.is_some_and(|tol| bound <= tol) {
            trace.stop_reason = StopReason::BoundTol;
            return Ok(trace);
        }
    }
    Err(IterateError::MaxIterationsExceeded(Box::new(trace)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionSample {
    pub index: usize,
    /// `d(T1x, T2y)`
    pub lhs: f64,
    /// `ψ(d(x,y), d(x,T1x), d(y,T2y))`
    pub rhs: f64,
}

impl ContractionSample {
    pub fn margin(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionReport {
    pub checked: usize,
    pub passed: usize,
    /// Sample with the largest `lhs − rhs`.
    pub worst: Option<ContractionSample>,
    pub failures: Vec<ContractionSample>,
}

impl ContractionReport {
    pub fn holds(&self) -> bool {
        self.checked > 0 && self.passed == self.checked
    }
}

const CONTRACTION_SLACK: f64 = 1e-12;

/// Checks the generalized contraction inequality on the given sample pairs.
pub fn verify_contraction<S, F1, F2>(
    space: &S,
    t1: F1,
    t2: F2,
    psi: &PsiSpec,
    pairs: &[(S::Point, S::Point)],
) -> Result<ContractionReport>
where
    S: MetricSpace,
    F1: Fn(&S::Point) -> Result<S::Point>,
    F2: Fn(&S::Point) -> Result<S::Point>,
{
    if pairs.is_empty() {
        return Err(Error::InvalidArgument(
            "need at least one sample pair".into(),
        ));
    }
    let mut report = ContractionReport {
        checked: 0,
        passed: 0,
        worst: None,
        failures: Vec::new(),
    };
    for (index, (x, y)) in pairs.iter().enumerate() {
        let tx = t1(x)?;
        let ty = t2(y)?;
        let sample = ContractionSample {
            index,
            lhs: space.distance(&tx, &ty)?,
            rhs: psi.eval(
                space.distance(x, y)?,
                space.distance(x, &tx)?,
                space.distance(y, &ty)?,
            ),
        };
        report.checked += 1;
        if sample.lhs <= sample.rhs + CONTRACTION_SLACK {
            report.passed += 1;
        } else {
            report.failures.push(sample);
        }
        if report.worst.is_none_or(|w| sample.margin() > w.margin()) {
            report.worst = Some(sample);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter(x: &f64) -> Result<f64> {
        Ok(x / 4.0)
    }

    fn fifth(x: &f64) -> Result<f64> {
        Ok(x / 5.0)
    }

    #[test]
    fn constant_maps_land_immediately() {
        let c = 3.5;
        let trace = iterate_pair(
            &RealLine,
            |_| Ok(c),
            |_| Ok(c),
            0.0,
            -10.0,
            &StoppingRule::default(),
        )
        .unwrap();
        assert_eq!(trace.points[1], c);
        assert_eq!(*trace.last(), c);
        assert_eq!(trace.iterations(), 2);
        assert_eq!(trace.gaps[1], 0.0);
        assert_eq!(trace.stop_reason, StopReason::GapTol);
    }

    #[test]
    fn halving_is_geometric() {
        let half = |x: &f64| Ok(x / 2.0);
        let stop = StoppingRule {
            gap_tol: 1e-9,
            ..Default::default()
        };
        let trace = iterate_pair(&RealLine, half, half, 0.5, 1.0, &stop).unwrap();
        for (n, u) in trace.points.iter().enumerate() {
            assert_eq!(*u, 0.5f64.powi(n as i32));
        }
        for (k, &b) in trace.bounds.iter().enumerate() {
            let n = k + 1;
            assert!((b - 0.5f64.powi(n as i32 - 1)).abs() < 1e-15);
            assert!(trace.points[n].abs() <= b);
        }
    }

    #[test]
    fn odd_steps_use_first_map() {
        let trace = iterate_pair(
            &RealLine,
            quarter,
            fifth,
            7.0 / 12.0,
            1.0,
            &StoppingRule::default(),
        )
        .unwrap();
        assert_eq!(trace.points[1], 0.25);
        assert_eq!(trace.points[2], 0.25 / 5.0);
        assert_eq!(trace.points[3], 0.25 / 5.0 / 4.0);
    }

    #[test]
    fn max_iterations_carries_partial_trace() {
        let stop = StoppingRule {
            gap_tol: 0.0,
            max_iter: 5,
            bound_tol: None,
        };
        let err = iterate_pair(&RealLine, quarter, fifth, 0.6, 1.0, &stop).unwrap_err();
        match err {
            IterateError::MaxIterationsExceeded(trace) => {
                assert_eq!(trace.iterations(), 5);
                assert_eq!(trace.points.len(), 6);
                assert_eq!(trace.stop_reason, StopReason::MaxIter);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bound_tolerance_stops_early() {
        let stop = StoppingRule {
            gap_tol: 0.0,
            max_iter: 500,
            bound_tol: Some(1e-3),
        };
        let trace = iterate_pair(&RealLine, quarter, fifth, 0.6, 1.0, &stop).unwrap();
        assert_eq!(trace.stop_reason, StopReason::BoundTol);
        assert!(*trace.bounds.last().unwrap() <= 1e-3);
        assert!(trace.bounds[trace.bounds.len() - 2] > 1e-3);
    }

    #[test]
    fn map_errors_are_reported_with_step() {
        let picky = |x: &f64| {
            if *x < 0.1 {
                Err(Error::InvalidArgument("too small".into()))
            } else {
                Ok(x / 2.0)
            }
        };
        let err =
            iterate_pair(&RealLine, picky, picky, 0.5, 1.0, &StoppingRule::default()).unwrap_err();
        assert!(
            matches!(err, IterateError::MapDomain { step: 5, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_bad_setup() {
        let stop = StoppingRule::default();
        assert!(matches!(
            iterate_pair(&RealLine, quarter, fifth, 1.0, 1.0, &stop),
            Err(IterateError::Setup(_))
        ));
        let zero = StoppingRule {
            max_iter: 0,
            ..stop
        };
        assert!(matches!(
            iterate_pair(&RealLine, quarter, fifth, 0.5, 1.0, &zero),
            Err(IterateError::Setup(_))
        ));
    }

    #[test]
    fn error_bound_examples() {
        assert_eq!(error_bound(0.0, 2.0, 1), 2.0);
        assert_eq!(error_bound(0.0, 2.0, 2), 0.0);
        assert_eq!(error_bound(0.0, 2.0, 7), 0.0);
        assert!((error_bound(0.5, 0.5, 3) - 0.25).abs() < 1e-16);
        for n in 1..30 {
            let a = 0.37;
            let ratio = error_bound(a, 1.3, n + 1) / error_bound(a, 1.3, n);
            assert!((ratio - a).abs() < 1e-14);
        }
    }

    #[test]
    fn contraction_checks() {
        let c = |_: &f64| Ok(2.0);
        let pairs: Vec<(f64, f64)> = (0..10).map(|i| (i as f64, -(i as f64))).collect();
        let psi = PsiSpec::scaled_first(0.0).unwrap();
        assert!(verify_contraction(&RealLine, c, c, &psi, &pairs)
            .unwrap()
            .holds());

        let double = |x: &f64| Ok(2.0 * x);
        let ident = |x: &f64| Ok(*x);
        let psi = PsiSpec::scaled_first(0.9).unwrap();
        let report = verify_contraction(&RealLine, double, ident, &psi, &[(1.0, 1.0)]).unwrap();
        assert!(!report.holds());
        let w = report.failures[0];
        assert_eq!((w.lhs, w.rhs), (1.0, 0.0));

        assert!(verify_contraction(&RealLine, ident, ident, &psi, &[]).is_err());
    }
}
