//! Control functions `ψ : ℝ₊³ → ℝ₊` for generalized contractions.
//!
//! A function belongs to the class for constant `α ∈ [0, 1)` when it is
//! continuous and each of `b ≤ ψ(a,a,b)`, `b ≤ ψ(b,a,a)`, `b ≤ ψ(a,b,a)`
//! forces `b ≤ α·a`. The iteration engine only ever consumes that `α`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Built-in control functions. The variants are public so callers can build
/// out-of-class specs for validation; the checked constructors enforce the
/// parameter invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PsiSpec {
    /// `ψ(a,b,c) = α·a`
    ScaledFirst { alpha: f64 },
    /// `ψ(a,b,c) = M·a + N·b + O·c`
    Linear { m: f64, n: f64, o: f64 },
    /// `ψ(a,b,c) = α·max{a,b,c}`
    ScaledMax { alpha: f64 },
}

impl PsiSpec {
    pub fn scaled_first(alpha: f64) -> Result<Self> {
        check_unit_interval(alpha)?;
        Ok(Self::ScaledFirst { alpha })
    }

    pub fn linear(m: f64, n: f64, o: f64) -> Result<Self> {
        if [m, n, o].iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidArgument(format!(
                "linear coefficients must be finite and nonnegative, got ({m}, {n}, {o})"
            )));
        }
        let sum = m + n + o;
        if sum >= 1.0 {
            return Err(Error::NotInPsiAlpha { alpha: sum });
        }
        Ok(Self::Linear { m, n, o })
    }

    pub fn scaled_max(alpha: f64) -> Result<Self> {
        check_unit_interval(alpha)?;
        Ok(Self::ScaledMax { alpha })
    }

    pub fn eval(&self, a: f64, b: f64, c: f64) -> f64 {
        match *self {
            Self::ScaledFirst { alpha } => alpha * a,
            Self::Linear { m, n, o } => m * a + n * b + o * c,
            Self::ScaledMax { alpha } => alpha * a.max(b).max(c),
        }
    }

    /// The contraction constant certified by the implication condition.
    ///
    /// For the linear family each branch is solved for `b`:
    /// `b ≤ Ma+Na+Ob ⇒ b ≤ (M+N)/(1−O)·a`, and likewise for the two permuted
    /// branches.
    pub fn alpha_effective(&self) -> Result<f64> {
        let alpha = match *self {
            Self::ScaledFirst { alpha } | Self::ScaledMax { alpha } => alpha,
            Self::Linear { m, n, o } => {
                if m + n + o >= 1.0 {
                    return Err(Error::NotInPsiAlpha { alpha: m + n + o });
                }
                ((m + n) / (1.0 - o))
                    .max((n + o) / (1.0 - m))
                    .max((m + o) / (1.0 - n))
            }
        };
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::NotInPsiAlpha { alpha });
        }
        Ok(alpha)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::ScaledFirst { .. } => "scaled_first",
            Self::Linear { .. } => "linear",
            Self::ScaledMax { .. } => "scaled_max",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Self::ScaledFirst { alpha } | Self::ScaledMax { alpha } => vec![alpha],
            Self::Linear { m, n, o } => vec![m, n, o],
        }
    }

    pub fn from_parts(kind: &str, params: &[f64]) -> Result<Self> {
        match (kind, params) {
            ("scaled_first", [alpha]) => Self::scaled_first(*alpha),
            ("scaled_max", [alpha]) => Self::scaled_max(*alpha),
            ("linear", [m, n, o]) => Self::linear(*m, *n, *o),
            _ => Err(Error::InvalidArgument(format!(
                "unknown control function {kind:?} with {} parameters",
                params.len()
            ))),
        }
    }
}

fn check_unit_interval(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "α must be finite and nonnegative, got {alpha}"
        )));
    }
    if alpha >= 1.0 {
        return Err(Error::NotInPsiAlpha { alpha });
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiRepr {
    kind: String,
    params: Vec<f64>,
}

impl Serialize for PsiSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PsiRepr {
            kind: self.kind().to_string(),
            params: self.params(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PsiSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PsiRepr::deserialize(deserializer)?;
        Self::from_parts(&repr.kind, &repr.params).map_err(serde::de::Error::custom)
    }
}

/// Which disjunct of the implication condition a counterexample violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `b ≤ ψ(a,a,b)`
    AAB,
    /// `b ≤ ψ(b,a,a)`
    BAA,
    /// `b ≤ ψ(a,b,a)`
    ABA,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub a: f64,
    pub b: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub alpha: f64,
    pub points_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.alpha < 1.0 && self.counterexamples.is_empty()
    }
}

pub const GRID_LO: f64 = 1e-6;
pub const GRID_HI: f64 = 1e3;
pub const DEFAULT_GRID: usize = 64;

/// Relative slack for boundary cases where `b = α·a` up to rounding.
const BOUNDARY_SLACK: f64 = 1e-12;

/// `grid_size` log-spaced points over `[1e-6, 1e3]`.
pub fn log_grid(grid_size: usize) -> Vec<f64> {
    assert!(grid_size >= 2, "grid needs at least two points");
    let (lo, hi) = (GRID_LO.ln(), GRID_HI.ln());
    (0..grid_size)
        .map(|i| (lo + (hi - lo) * i as f64 / (grid_size - 1) as f64).exp())
        .collect()
}

/// Checks the implication condition with a claimed constant `alpha` over the
/// log grid, collecting every counterexample.
pub fn check_implication(psi: &PsiSpec, alpha: f64, grid_size: usize) -> MembershipReport {
    let grid = log_grid(grid_size);
    let mut counterexamples = Vec::new();
    for &a in &grid {
        for &b in &grid {
            let branches = [
                (Branch::AAB, psi.eval(a, a, b)),
                (Branch::BAA, psi.eval(b, a, a)),
                (Branch::ABA, psi.eval(a, b, a)),
            ];
            for (branch, value) in branches {
                if b <= value && b > alpha * a * (1.0 + BOUNDARY_SLACK) {
                    counterexamples.push(Counterexample { a, b, branch });
                }
            }
        }
    }
    MembershipReport {
        alpha,
        points_checked: grid.len() * grid.len(),
        counterexamples,
    }
}

/// Grid check of class membership using [`PsiSpec::alpha_effective`].
/// Specs whose effective constant is not below one fail outright.
pub fn membership_report(psi: &PsiSpec, grid_size: usize) -> MembershipReport {
    match psi.alpha_effective() {
        Ok(alpha) => check_implication(psi, alpha, grid_size),
        Err(_) => {
            let alpha = match *psi {
                PsiSpec::ScaledFirst { alpha } | PsiSpec::ScaledMax { alpha } => alpha,
                PsiSpec::Linear { m, n, o } => m + n + o,
            };
            MembershipReport {
                alpha,
                points_checked: 0,
                counterexamples: Vec::new(),
            }
        }
    }
}

pub fn validate_membership(psi: &PsiSpec, grid_size: usize) -> bool {
    membership_report(psi, grid_size).holds()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(PsiSpec::scaled_first(0.5).unwrap().eval(2.0, 7.0, 9.0), 1.0);
        let lin = PsiSpec::linear(0.0, 1.0 / 3.0, 0.25).unwrap();
        assert!((lin.eval(5.0, 3.0, 4.0) - 2.0).abs() < 1e-15);
        assert!((PsiSpec::scaled_max(0.9).unwrap().eval(1.0, 2.0, 3.0) - 2.7).abs() < 1e-15);
    }

    /// Brute-force oracle: the smallest α such that, over a fine grid of
    /// ratios t = b/a, every branch inequality b ≤ ψ(..) implies t ≤ α.
    fn grid_alpha(psi: &PsiSpec) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..=400 {
            for j in 1..=400 {
                let a = 10.0 * i as f64 / 400.0;
                let b = 10.0 * j as f64 / 400.0;
                if b <= psi.eval(a, a, b) || b <= psi.eval(b, a, a) || b <= psi.eval(a, b, a) {
                    worst = worst.max(b / a);
                }
            }
        }
        worst
    }

    #[test]
    fn alpha_effective_linear() {
        let psi = PsiSpec::linear(0.2, 0.3, 0.3).unwrap();
        let alpha = psi.alpha_effective().unwrap();
        assert!((alpha - 0.75).abs() < 1e-15);
        // the grid supremum approaches 0.75 from below
        let g = grid_alpha(&psi);
        assert!(g <= alpha + 1e-12 && g > alpha - 0.02, "grid {g}");
    }

    #[test]
    fn alpha_effective_builtins() {
        assert_eq!(
            PsiSpec::scaled_first(0.4)
                .unwrap()
                .alpha_effective()
                .unwrap(),
            0.4
        );
        assert_eq!(
            PsiSpec::scaled_max(0.9).unwrap().alpha_effective().unwrap(),
            0.9
        );
        let toy = PsiSpec::linear(0.0, 1.0 / 3.0, 0.25).unwrap();
        assert!((toy.alpha_effective().unwrap() - 7.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn out_of_class_specs() {
        assert!(matches!(
            PsiSpec::linear(0.5, 0.4, 0.3),
            Err(Error::NotInPsiAlpha { .. })
        ));
        assert!(PsiSpec::scaled_first(1.0).is_err());
        assert!(PsiSpec::scaled_max(-0.1).is_err());
        let hand_built = PsiSpec::ScaledFirst { alpha: 1.0 };
        assert!(matches!(
            hand_built.alpha_effective(),
            Err(Error::NotInPsiAlpha { .. })
        ));
        assert!(!validate_membership(&hand_built, DEFAULT_GRID));
        // linear with sum < 1 whose solved branch constant reaches 1
        let edge = PsiSpec::Linear {
            m: 0.0,
            n: 0.5,
            o: 0.5,
        };
        assert!(edge.alpha_effective().is_err());
    }

    #[test]
    fn builtins_are_members() {
        assert!(validate_membership(
            &PsiSpec::scaled_first(0.5).unwrap(),
            DEFAULT_GRID
        ));
        assert!(validate_membership(
            &PsiSpec::scaled_max(0.99).unwrap(),
            DEFAULT_GRID
        ));
        assert!(validate_membership(
            &PsiSpec::linear(0.2, 0.3, 0.3).unwrap(),
            DEFAULT_GRID
        ));
        assert!(validate_membership(
            &PsiSpec::linear(0.0, 1.0 / 3.0, 0.25).unwrap(),
            DEFAULT_GRID
        ));
    }

    #[test]
    fn understated_alpha_is_caught() {
        let psi = PsiSpec::linear(0.2, 0.3, 0.3).unwrap();
        let report = check_implication(&psi, 0.5, 32);
        assert!(!report.holds());
        let w = report.counterexamples[0];
        assert!(w.b > 0.5 * w.a);
    }

    #[test]
    fn monotone_on_grid() {
        let specs = [
            PsiSpec::scaled_first(0.7).unwrap(),
            PsiSpec::linear(0.1, 0.2, 0.3).unwrap(),
            PsiSpec::scaled_max(0.8).unwrap(),
        ];
        let grid = log_grid(12);
        for psi in specs {
            for w in grid.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                for &x in &grid {
                    for &y in &grid {
                        assert!(psi.eval(lo, x, y) <= psi.eval(hi, x, y));
                        assert!(psi.eval(x, lo, y) <= psi.eval(x, hi, y));
                        assert!(psi.eval(x, y, lo) <= psi.eval(x, y, hi));
                    }
                }
            }
        }
    }

    #[test]
    fn serde_shape() {
        let psi = PsiSpec::linear(0.1, 0.2, 0.3).unwrap();
        let json = serde_json::to_string(&psi).unwrap();
        assert_eq!(json, r#"{"kind":"linear","params":[0.1,0.2,0.3]}"#);
        assert_eq!(serde_json::from_str::<PsiSpec>(&json).unwrap(), psi);
        assert!(
            serde_json::from_str::<PsiSpec>(r#"{"kind":"scaled_max","params":[1.5]}"#).is_err()
        );
        assert!(serde_json::from_str::<PsiSpec>(r#"{"kind":"cubic","params":[0.1]}"#).is_err());
    }
}
