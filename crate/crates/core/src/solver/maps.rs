use crate::error::Result;
use crate::hpd::{congruence, pd_power, CMatrix, Hermitian, PdMatrix};

use super::problem::MatrixFunction;

/// `X ↦ (Q + Σᵢ Aᵢ* F(X) Aᵢ)^{1/root}`, with `Q` absent for type-2 maps.
#[derive(Debug, Clone)]
pub struct EquationMap {
    shift: Option<Hermitian>,
    coefficients: Vec<CMatrix>,
    func: MatrixFunction,
    root: f64,
}

impl EquationMap {
    /// Right-hand side `Q + Σᵢ Aᵢ* F(X) Aᵢ`.
    pub fn rhs(&self, x: &PdMatrix) -> Result<Hermitian> {
        let fx = self.func.apply(x)?;
        let mut acc = match &self.shift {
            Some(q) => q.clone(),
            None => Hermitian::zeros(x.dim()),
        };
        for a in &self.coefficients {
            acc = acc.add(&congruence(a, fx.hermitian())?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, x: &PdMatrix) -> Result<PdMatrix> {
        pd_power(&self.rhs(x)?, 1.0 / self.root)
    }

    pub fn root(&self) -> f64 {
        self.root
    }

    pub fn func(&self) -> &MatrixFunction {
        &self.func
    }
}

pub fn build_map_type1(
    q: &PdMatrix,
    coefficients: &[CMatrix],
    f: &MatrixFunction,
    s: f64,
) -> EquationMap {
    EquationMap {
        shift: Some(q.hermitian().clone()),
        coefficients: coefficients.to_vec(),
        func: f.clone(),
        root: s,
    }
}

pub fn build_map_type2(coefficients: &[CMatrix], f: &MatrixFunction, rho: f64) -> EquationMap {
    EquationMap {
        shift: None,
        coefficients: coefficients.to_vec(),
        func: f.clone(),
        root: rho,
    }
}
