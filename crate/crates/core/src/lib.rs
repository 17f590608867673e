//! Unique positive definite common solutions of paired nonlinear matrix
//! equations
//!
//! ```text
//! type 1:  X^s = Q1 + Σ Aᵢ* F(X) Aᵢ,   X^s = Q2 + Σ Aᵢ* G(X) Aᵢ      (Aᵢ nonsingular)
//! type 2:  X^r =      Σ Aᵢ* F(X) Aᵢ,   X^s =      Σ Aᵢ* G(X) Aᵢ      (Aᵢ unitary)
//! ```
//!
//! found as the common fixed point of the two root maps under alternating
//! iteration on a Thompson-metric ball around the identity.
//!
//! - [`hpd`]: Hermitian / positive definite algebra (Jacobi eigensolver, powers, sampling)
//! - [`thompson`]: the Thompson metric and the order ratio `W(A/B)`
//! - [`psi`]: control functions for generalized contractions
//! - [`fixpoint`]: generic alternating common-fixed-point iteration
//! - [`solver`]: the matrix equation maps, condition checkers and solver
//! - [`cli`]: problem/trace file formats, SVG plots and the `tfp` commands

pub mod cli;
pub mod error;
pub mod fixpoint;
pub mod hpd;
pub mod psi;
pub mod solver;
pub mod thompson;

pub use error::{Error, Result};
