use crate::error::{Error, Result};
use crate::hpd::{eig_hermitian, matrix_power, pd_floor, CMatrix, Hermitian, PdMatrix};

use super::maps::{build_map_type1, build_map_type2, EquationMap};

/// Unitarity tolerance `‖A*A − I‖_F` for type-2 coefficients.
pub const UNITARY_TOL: f64 = 1e-10;

/// The matrix functions `F`, `G` applied inside the congruence sums.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFunction {
    /// `X ↦ X^p` with `p ∈ [−1, 1] \ {0}`.
    Power(f64),
    /// `X ↦ C` for a fixed positive definite `C`.
    Constant(PdMatrix),
}

impl MatrixFunction {
    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent.is_finite() && exponent != 0.0 && exponent.abs() <= 1.0) {
            return Err(Error::InvalidProblem(format!(
                "power exponent must lie in [-1, 1] \\ {{0}}, got {exponent}"
            )));
        }
        Ok(Self::Power(exponent))
    }

    pub fn constant(value: PdMatrix) -> Self {
        Self::Constant(value)
    }

    pub fn apply(&self, x: &PdMatrix) -> Result<PdMatrix> {
        match self {
            Self::Power(p) if *p == 1.0 => Ok(x.clone()),
            Self::Power(p) => matrix_power(x, *p),
            Self::Constant(c) => {
                if c.dim() != x.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: x.dim(),
                        found: c.dim(),
                    });
                }
                Ok(c.clone())
            }
        }
    }

    fn validate(&self, n: usize, key: &str) -> Result<()> {
        match self {
            Self::Power(p) => Self::power(*p).map(|_| ()),
            Self::Constant(c) if c.dim() != n => Err(Error::InvalidProblem(format!(
                "{key}: constant value is {}x{}, expected {n}x{n}",
                c.dim(),
                c.dim()
            ))),
            Self::Constant(_) => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    /// `X^s = Q1 + Σ Aᵢ* F(X) Aᵢ`, `X^s = Q2 + Σ Aᵢ* G(X) Aᵢ` with nonsingular `Aᵢ`.
    Type1 { q1: PdMatrix, q2: PdMatrix },
    /// `X^r = Σ Aᵢ* F(X) Aᵢ`, `X^s = Σ Aᵢ* G(X) Aᵢ` with unitary `Aᵢ`.
    Type2 { r: f64 },
}

/// How the radius of the Thompson ball around the identity is read.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum BallConvention {
    /// `d(X, I) ≤ a` (type 1) and `d(X, I) ≤ r·a` (type 2).
    #[default]
    Radius,
    /// `d(X, I) ≤ e^a` and `d(X, I) ≤ e^{ra}`.
    ExpRadius,
}

/// One pair of matrix equations together with the data of its sufficiency
/// conditions: ball radius `a` and contraction exponent `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub coefficients: Vec<CMatrix>,
    pub s: f64,
    pub f: MatrixFunction,
    pub g: MatrixFunction,
    pub radius: f64,
    pub l: f64,
}

impl ProblemSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn type1(
        q1: PdMatrix,
        q2: PdMatrix,
        coefficients: Vec<CMatrix>,
        s: f64,
        f: MatrixFunction,
        g: MatrixFunction,
        radius: f64,
        l: f64,
    ) -> Result<Self> {
        let spec = Self {
            kind: ProblemKind::Type1 { q1, q2 },
            coefficients,
            s,
            f,
            g,
            radius,
            l,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn type2(
        coefficients: Vec<CMatrix>,
        r: f64,
        s: f64,
        f: MatrixFunction,
        g: MatrixFunction,
        radius: f64,
        l: f64,
    ) -> Result<Self> {
        let spec = Self {
            kind: ProblemKind::Type2 { r },
            coefficients,
            s,
            f,
            g,
            radius,
            l,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidProblem(msg));
        let Some(first) = self.coefficients.first() else {
            return bad("A: need at least one coefficient matrix".into());
        };
        let n = first.dim();
        if n == 0 {
            return bad("A: coefficient matrices must be nonempty".into());
        }
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.dim() != n {
                return bad(format!(
                    "A[{i}]: is {}x{}, expected {n}x{n}",
                    a.dim(),
                    a.dim()
                ));
            }
        }
        if !(self.s.is_finite() && self.s > 1.0) {
            return bad(format!("s: must be a real number > 1, got {}", self.s));
        }
        if !(self.radius.is_finite() && self.radius >= 0.0) {
            return bad(format!(
                "a: ball radius must be finite and >= 0, got {}",
                self.radius
            ));
        }
        if !(self.l.is_finite() && self.l > 0.0) {
            return bad(format!("l: must be > 0, got {}", self.l));
        }
        self.f.validate(n, "F")?;
        self.g.validate(n, "G")?;

        match &self.kind {
            ProblemKind::Type1 { q1, q2 } => {
                for (key, q) in [("Q1", q1), ("Q2", q2)] {
                    if q.dim() != n {
                        return bad(format!(
                            "{key}: is {}x{}, expected {n}x{n}",
                            q.dim(),
                            q.dim()
                        ));
                    }
                }
                for (i, a) in self.coefficients.iter().enumerate() {
                    if !is_nonsingular(a)? {
                        return bad(format!("A[{i}]: must be nonsingular"));
                    }
                }
                if self.l >= self.s {
                    return bad(format!(
                        "l: must satisfy l < s, got l={} s={}",
                        self.l, self.s
                    ));
                }
            }
            ProblemKind::Type2 { r } => {
                if !(r.is_finite() && *r > 1.0) {
                    return bad(format!("r: must be a real number > 1, got {r}"));
                }
                for (i, a) in self.coefficients.iter().enumerate() {
                    let defect = a.unitarity_defect();
                    if defect > UNITARY_TOL {
                        return bad(format!(
                            "A[{i}]: must be unitary (‖A*A − I‖_F = {defect:.3e})"
                        ));
                    }
                }
                let cap = r * self.s / (r + self.s);
                if 3.0 * self.l >= cap {
                    return bad(format!(
                        "l: must satisfy 3l < rs/(r+s) = {cap}, got l={}",
                        self.l
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.coefficients[0].dim()
    }

    pub fn m(&self) -> usize {
        self.coefficients.len()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            ProblemKind::Type1 { .. } => "type1",
            ProblemKind::Type2 { .. } => "type2",
        }
    }

    /// Contraction constant of the pair: `l/s` (type 1) or `3l(1/r + 1/s)` (type 2).
    pub fn alpha(&self) -> f64 {
        match self.kind {
            ProblemKind::Type1 { .. } => self.l / self.s,
            ProblemKind::Type2 { r } => 3.0 * self.l * (1.0 / r + 1.0 / self.s),
        }
    }

    /// Radius of the ball on which the maps are self-maps.
    pub fn ball_radius(&self, convention: BallConvention) -> f64 {
        let base = match self.kind {
            ProblemKind::Type1 { .. } => self.radius,
            ProblemKind::Type2 { r } => r * self.radius,
        };
        match convention {
            BallConvention::Radius => base,
            BallConvention::ExpRadius => base.exp(),
        }
    }

    /// Powers on the left-hand sides of the two equations.
    pub fn exponents(&self) -> (f64, f64) {
        match self.kind {
            ProblemKind::Type1 { .. } => (self.s, self.s),
            ProblemKind::Type2 { r } => (r, self.s),
        }
    }

    /// The two root maps `T1`, `T2` whose common fixed point solves the pair.
    pub fn maps(&self) -> (EquationMap, EquationMap) {
        match &self.kind {
            ProblemKind::Type1 { q1, q2 } => (
                build_map_type1(q1, &self.coefficients, &self.f, self.s),
                build_map_type1(q2, &self.coefficients, &self.g, self.s),
            ),
            ProblemKind::Type2 { r } => (
                build_map_type2(&self.coefficients, &self.f, *r),
                build_map_type2(&self.coefficients, &self.g, self.s),
            ),
        }
    }
}

fn is_nonsingular(a: &CMatrix) -> Result<bool> {
    let gram = Hermitian::symmetrize(a.adjoint().matmul(a)?);
    let eig = eig_hermitian(&gram)?;
    Ok(eig.max() > 0.0 && eig.min() > pd_floor(a.dim(), eig.max()))
}

/// Relative residuals `‖X^{sⱼ} − RHSⱼ(X)‖_F / max(1, ‖X^{sⱼ}‖_F)` of the two
/// equations.
pub fn residuals(problem: &ProblemSpec, x: &PdMatrix) -> Result<(f64, f64)> {
    let (t1, t2) = problem.maps();
    let (e1, e2) = problem.exponents();
    let one = |map: &EquationMap, e: f64| -> Result<f64> {
        let lhs = matrix_power(x, e)?;
        let rhs = map.rhs(x)?;
        let diff = lhs.hermitian().sub(&rhs)?;
        Ok(diff.frobenius_norm() / lhs.hermitian().frobenius_norm().max(1.0))
    };
    Ok((one(&t1, e1)?, one(&t2, e2)?))
}
