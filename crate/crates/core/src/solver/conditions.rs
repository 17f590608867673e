//! Sampled verification of the sufficiency conditions of both equation types.
//!
//! The conditions quantify over a whole Thompson ball, so they are checked on
//! seeded random pairs `(X, Y)` from the ball. Sample `i` is drawn from its own
//! ChaCha stream, which makes serial and parallel runs produce identical
//! reports.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hpd::{eig_hermitian, random_pd_in_ball_with, CMatrix, PdMatrix};
use crate::thompson::{distance, distance_to_identity, w_ratio};

use super::problem::{BallConvention, ProblemKind, ProblemSpec};

/// Relative slack `lhs ≤ rhs + CHECK_TOL · max(1, |rhs|)` absorbing rounding
/// in equality cases.
pub const CHECK_TOL: f64 = 1e-9;

pub const DEFAULT_SAMPLES: usize = 200;

/// Reproducible sample pair `i` for a given seed.
pub fn sample_pair(n: usize, radius: f64, seed: u64, index: usize) -> (PdMatrix, PdMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let x = random_pd_in_ball_with(&mut rng, n, radius);
    let y = random_pd_in_ball_with(&mut rng, n, radius);
    (x, y)
}

/// One scalar inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Inequality {
    pub label: &'static str,
    pub lhs: f64,
    pub rhs: f64,
}

impl Inequality {
    fn new(label: &'static str, lhs: f64, rhs: f64) -> Self {
        Self { label, lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs + CHECK_TOL * self.rhs.abs().max(1.0)
    }

    pub fn violation(&self) -> f64 {
        self.lhs - self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub sample: usize,
    pub inequality: Inequality,
    pub x: CMatrix,
    pub y: CMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionSummary {
    pub name: &'static str,
    pub description: &'static str,
    pub checked: usize,
    pub passed: usize,
    /// Worst violating sample, or the tightest sample when none violate.
    pub worst: Option<Witness>,
}

impl ConditionSummary {
    pub fn holds(&self) -> bool {
        self.passed == self.checked
    }

    pub fn pass_ratio(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            self.passed as f64 / self.checked as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub kind: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub radius: f64,
    /// Conditions gating the solver.
    pub conditions: Vec<ConditionSummary>,
    /// Secondary diagnostics; reported, never gating.
    pub diagnostics: Vec<ConditionSummary>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(ConditionSummary::holds)
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionSummary> {
        self.conditions
            .iter()
            .chain(&self.diagnostics)
            .find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub parallel: bool,
    pub ball: BallConvention,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 42,
            parallel: false,
            ball: BallConvention::Radius,
        }
    }
}

struct ConditionDef {
    name: &'static str,
    description: &'static str,
    gating: bool,
}

const TYPE1_CONDITIONS: [ConditionDef; 6] = [
    ConditionDef {
        name: "A",
        description: "d(Q1,Q2) <= d(F(X),G(Y))",
        gating: true,
    },
    ConditionDef {
        name: "B",
        description: "d(F(X),G(Y)) <= l*d(X,Y)",
        gating: true,
    },
    ConditionDef {
        name: "C",
        description: "d(T1(X),I) <= a and d(T2(X),I) <= a",
        gating: true,
    },
    ConditionDef {
        name: "A_literal",
        description: "W(Q2/Q1) <= W(G(Y)/F(X)) and W(Q1/Q2) <= W(F(X)/G(Y))",
        gating: false,
    },
    ConditionDef {
        name: "B_literal",
        description: "W(G(Y)/F(X)) <= W(Y/X)^l and W(F(X)/G(Y)) <= W(X/Y)^l",
        gating: false,
    },
    ConditionDef {
        name: "C_literal",
        description: "lmax(T(X)) <= e^a and lmax(T(X)^(-1/4)) <= e^a for T = T1, T2",
        gating: false,
    },
];

const TYPE2_CONDITIONS: [ConditionDef; 3] = [
    ConditionDef {
        name: "A",
        description: "lmax(F(X)) <= e^(ra)/m, lmax(F(X)^-1) <= m*e^(ra), same for G",
        gating: true,
    },
    ConditionDef {
        name: "B",
        description: "lmax(F(X)) <= W(X/Y)^l/(m*2^r), lmax(G(X)) <= W(X/Y)^l/(m*2^s), \
                      lmax(F(X)^-1), lmax(G(X)^-1) <= m*W(Y/X)^l",
        gating: true,
    },
    ConditionDef {
        name: "ball",
        description: "d(T1(X),I) <= ra and d(T2(X),I) <= ra",
        gating: false,
    },
];

/// Per-sample evaluation: one list of inequalities per condition.
type SampleEval = Vec<Vec<Inequality>>;

fn eval_type1(problem: &ProblemSpec, x: &PdMatrix, y: &PdMatrix) -> Result<SampleEval> {
    let ProblemKind::Type1 { q1, q2 } = &problem.kind else {
        return Err(Error::InvalidArgument(
            "type-1 check on a type-2 problem".into(),
        ));
    };
    let radius = problem.radius;
    let l = problem.l;
    let fx = problem.f.apply(x)?;
    let gy = problem.g.apply(y)?;
    let (t1, t2) = problem.maps();
    let t1x = t1.apply(x)?;
    let t2x = t2.apply(x)?;

    let d_fg = distance(&fx, &gy)?;
    let cond_a = vec![Inequality::new(
        "d(Q1,Q2) <= d(F(X),G(Y))",
        distance(q1, q2)?,
        d_fg,
    )];
    let cond_b = vec![Inequality::new(
        "d(F(X),G(Y)) <= l*d(X,Y)",
        d_fg,
        l * distance(x, y)?,
    )];
    let cond_c = vec![
        Inequality::new("d(T1(X),I) <= a", distance_to_identity(&t1x)?, radius),
        Inequality::new("d(T2(X),I) <= a", distance_to_identity(&t2x)?, radius),
    ];

    let w_gf = w_ratio(&gy, &fx)?;
    let w_fg = w_ratio(&fx, &gy)?;
    let lit_a = vec![
        Inequality::new("W(Q2/Q1) <= W(G(Y)/F(X))", w_ratio(q2, q1)?, w_gf),
        Inequality::new("W(Q1/Q2) <= W(F(X)/G(Y))", w_ratio(q1, q2)?, w_fg),
    ];
    let lit_b = vec![
        Inequality::new("W(G(Y)/F(X)) <= W(Y/X)^l", w_gf, w_ratio(y, x)?.powf(l)),
        Inequality::new("W(F(X)/G(Y)) <= W(X/Y)^l", w_fg, w_ratio(x, y)?.powf(l)),
    ];
    let cap = radius.exp();
    let mut lit_c = Vec::with_capacity(4);
    for (t, big, small) in [
        (&t1x, "lmax(T1(X)) <= e^a", "lmax(T1(X)^(-1/4)) <= e^a"),
        (&t2x, "lmax(T2(X)) <= e^a", "lmax(T2(X)^(-1/4)) <= e^a"),
    ] {
        let eig = eig_hermitian(t.hermitian())?;
        lit_c.push(Inequality::new(big, eig.max(), cap));
        lit_c.push(Inequality::new(small, eig.min().powf(-0.25), cap));
    }
    Ok(vec![cond_a, cond_b, cond_c, lit_a, lit_b, lit_c])
}

fn eval_type2(problem: &ProblemSpec, x: &PdMatrix, y: &PdMatrix) -> Result<SampleEval> {
    let ProblemKind::Type2 { r } = problem.kind else {
        return Err(Error::InvalidArgument(
            "type-2 check on a type-1 problem".into(),
        ));
    };
    let s = problem.s;
    let l = problem.l;
    let m = problem.m() as f64;
    let cap = (r * problem.radius).exp();

    let spectrum = |p: &PdMatrix| -> Result<(f64, f64)> {
        let eig = eig_hermitian(p.hermitian())?;
        Ok((eig.max(), 1.0 / eig.min()))
    };
    let (f_max, f_inv_max) = spectrum(&problem.f.apply(x)?)?;
    let (g_max, g_inv_max) = spectrum(&problem.g.apply(x)?)?;

    let cond_a = vec![
        Inequality::new("lmax(F(X)) <= e^(ra)/m", f_max, cap / m),
        Inequality::new("lmax(F(X)^-1) <= m*e^(ra)", f_inv_max, m * cap),
        Inequality::new("lmax(G(X)) <= e^(ra)/m", g_max, cap / m),
        Inequality::new("lmax(G(X)^-1) <= m*e^(ra)", g_inv_max, m * cap),
    ];
    let w_xy = w_ratio(x, y)?.powf(l);
    let w_yx = w_ratio(y, x)?.powf(l);
    let cond_b = vec![
        Inequality::new(
            "lmax(F(X)) <= W(X/Y)^l/(m*2^r)",
            f_max,
            w_xy / (m * 2f64.powf(r)),
        ),
        Inequality::new(
            "lmax(G(X)) <= W(X/Y)^l/(m*2^s)",
            g_max,
            w_xy / (m * 2f64.powf(s)),
        ),
        Inequality::new("lmax(F(X)^-1) <= m*W(Y/X)^l", f_inv_max, m * w_yx),
        Inequality::new("lmax(G(X)^-1) <= m*W(Y/X)^l", g_inv_max, m * w_yx),
    ];
    let (t1, t2) = problem.maps();
    let ball = r * problem.radius;
    let cond_ball = vec![
        Inequality::new(
            "d(T1(X),I) <= ra",
            distance_to_identity(&t1.apply(x)?)?,
            ball,
        ),
        Inequality::new(
            "d(T2(X),I) <= ra",
            distance_to_identity(&t2.apply(x)?)?,
            ball,
        ),
    ];
    Ok(vec![cond_a, cond_b, cond_ball])
}

/// Checks the type-1 conditions on `options.samples` seeded pairs from the
/// ball `d(·, I) ≤ a`.
///
/// Conditions (A) and (B) are gated in their symmetrized form
/// `d(Q1,Q2) ≤ d(F(X),G(Y))`, `d(F(X),G(Y)) ≤ l·d(X,Y)`, which is exactly what
/// the contraction estimate consumes; (C) is the pair of ball constraints.
/// The literal one-sided ratio inequalities are kept as diagnostics.
pub fn check_conditions_type1(
    problem: &ProblemSpec,
    options: &CheckOptions,
) -> Result<ConditionReport> {
    if !matches!(problem.kind, ProblemKind::Type1 { .. }) {
        return Err(Error::InvalidArgument(
            "check_conditions_type1 needs a type-1 problem".into(),
        ));
    }
    run_checks(problem, options, &TYPE1_CONDITIONS, eval_type1)
}

/// Checks the type-2 conditions (A) and (B) literally on seeded pairs from the
/// ball `d(·, I) ≤ r·a`. Ball invariance of both maps is reported as a
/// diagnostic.
pub fn check_conditions_type2(
    problem: &ProblemSpec,
    options: &CheckOptions,
) -> Result<ConditionReport> {
    if !matches!(problem.kind, ProblemKind::Type2 { .. }) {
        return Err(Error::InvalidArgument(
            "check_conditions_type2 needs a type-2 problem".into(),
        ));
    }
    run_checks(problem, options, &TYPE2_CONDITIONS, eval_type2)
}

pub fn check_conditions(problem: &ProblemSpec, options: &CheckOptions) -> Result<ConditionReport> {
    match problem.kind {
        ProblemKind::Type1 { .. } => check_conditions_type1(problem, options),
        ProblemKind::Type2 { .. } => check_conditions_type2(problem, options),
    }
}

fn run_checks(
    problem: &ProblemSpec,
    options: &CheckOptions,
    defs: &[ConditionDef],
    eval: fn(&ProblemSpec, &PdMatrix, &PdMatrix) -> Result<SampleEval>,
) -> Result<ConditionReport> {
    if options.samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let n = problem.n();
    let radius = problem.ball_radius(options.ball);
    let one = |i: usize| -> Result<SampleEval> {
        let (x, y) = sample_pair(n, radius, options.seed, i);
        eval(problem, &x, &y)
    };
    let evals: Vec<SampleEval> = if options.parallel {
        (0..options.samples)
            .into_par_iter()
            .map(one)
            .collect::<Result<_>>()?
    } else {
        (0..options.samples).map(one).collect::<Result<_>>()?
    };

    let mut summaries: Vec<ConditionSummary> = defs
        .iter()
        .map(|d| ConditionSummary {
            name: d.name,
            description: d.description,
            checked: 0,
            passed: 0,
            worst: None,
        })
        .collect();
    let mut worst_violation = vec![f64::NEG_INFINITY; defs.len()];
    for (sample, eval) in evals.into_iter().enumerate() {
        for (c, inequalities) in eval.into_iter().enumerate() {
            let summary = &mut summaries[c];
            summary.checked += 1;
            if inequalities.iter().all(Inequality::holds) {
                summary.passed += 1;
            }
            let tightest = inequalities
                .into_iter()
                .max_by(|a, b| a.violation().total_cmp(&b.violation()))
                .expect("every condition has an inequality");
            if tightest.violation() > worst_violation[c] {
                worst_violation[c] = tightest.violation();
                let (x, y) = sample_pair(n, radius, options.seed, sample);
                summary.worst = Some(Witness {
                    sample,
                    inequality: tightest,
                    x: x.matrix().clone(),
                    y: y.matrix().clone(),
                });
            }
        }
    }

    let (conditions, diagnostics): (Vec<_>, Vec<_>) =
        summaries.into_iter().zip(defs).partition(|(_, d)| d.gating);
    Ok(ConditionReport {
        kind: problem.kind_name(),
        samples: options.samples,
        seed: options.seed,
        radius,
        conditions: conditions.into_iter().map(|(s, _)| s).collect(),
        diagnostics: diagnostics.into_iter().map(|(s, _)| s).collect(),
    })
}
