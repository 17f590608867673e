//! The two families of paired matrix equations: their root maps, residuals,
//! sampled sufficiency checks and the alternating solver.
//!
//! Type 1 (nonsingular `Aᵢ`, `l < s`) uses the maps
//! `T1(X) = (Q1 + Σ Aᵢ* F(X) Aᵢ)^{1/s}`, `T2(X) = (Q2 + Σ Aᵢ* G(X) Aᵢ)^{1/s}`
//! on the ball `d(X, I) ≤ a` with contraction constant `l/s`.
//!
//! Type 2 (unitary `Aᵢ`, `3l < rs/(r+s)`) uses
//! `T1(X) = (Σ Aᵢ* F(X) Aᵢ)^{1/r}`, `T2(X) = (Σ Aᵢ* G(X) Aᵢ)^{1/s}`
//! on the ball `d(X, I) ≤ r·a` with contraction constant `3l(1/r + 1/s)`.

mod conditions;
mod maps;
mod problem;
mod solve;

pub use conditions::{
    check_conditions, check_conditions_type1, check_conditions_type2, sample_pair, CheckOptions,
    ConditionReport, ConditionSummary, Inequality, Witness, CHECK_TOL, DEFAULT_SAMPLES,
};
pub use maps::{build_map_type1, build_map_type2, EquationMap};
pub use problem::{
    residuals, BallConvention, MatrixFunction, ProblemKind, ProblemSpec, UNITARY_TOL,
};
pub use solve::{
    solve, trace_rows, SolveError, SolveOptions, SolveResult, ThompsonSpace, TraceRow,
};
