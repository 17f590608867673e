//! The Thompson metric on the cone of positive definite matrices.
//!
//! `W(A/B) = inf{δ > 0 : A ≤ δB}` is the largest eigenvalue of
//! `B^{-1/2} A B^{-1/2}`, and `d(A, B) = max{log W(A/B), log W(B/A)}`.

use crate::error::{Error, Result};
use crate::hpd::{congruence, eig_hermitian, matrix_power, PdMatrix};

/// Distances at or below this value are treated as equality.
pub const EQUALITY_TOL: f64 = 1e-10;

/// `W(A/B) = λ_max(B^{-1/2} A B^{-1/2})`.
pub fn w_ratio(a: &PdMatrix, b: &PdMatrix) -> Result<f64> {
    check_dims(a, b)?;
    let b_inv_sqrt = matrix_power(b, -0.5)?;
    let sandwiched = congruence(b_inv_sqrt.matrix(), a.hermitian())?;
    Ok(eig_hermitian(&sandwiched)?.max())
}

/// Thompson distance, natural-log scale. Both ratios are evaluated
/// independently, so `distance(a, b) == distance(b, a)` bit for bit.
pub fn distance(a: &PdMatrix, b: &PdMatrix) -> Result<f64> {
    let ab = w_ratio(a, b)?.ln();
    let ba = w_ratio(b, a)?.ln();
    Ok(ab.max(ba).max(0.0))
}

/// `d(X, I)`: the largest `|log λ|` over the spectrum of `X`.
pub fn distance_to_identity(x: &PdMatrix) -> Result<f64> {
    distance(x, &PdMatrix::identity(x.dim()))
}

/// Whether `a` and `b` coincide up to [`EQUALITY_TOL`].
pub fn coincide(a: &PdMatrix, b: &PdMatrix) -> Result<bool> {
    Ok(distance(a, b)? <= EQUALITY_TOL)
}

fn check_dims(a: &PdMatrix, b: &PdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: b.dim(),
            found: a.dim(),
        });
    }
    Ok(())
}
