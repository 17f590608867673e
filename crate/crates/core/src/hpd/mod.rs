//! Dense complex Hermitian and positive definite matrix algebra.
//!
//! Every arithmetic result that is Hermitian in exact arithmetic is stored as
//! its exact Hermitian part `(M + M*)/2`, so symmetry drift never accumulates
//! across long iterations.

mod eigen;
mod literal;
mod matrix;
mod random;

pub use eigen::{
    congruence, eig_hermitian, matrix_power, pd_power, sweep_budget, EigenDecomposition,
};
pub use matrix::{
    hermitian_tolerance, is_positive_definite, pd_floor, CMatrix, Hermitian, PdMatrix,
};
pub use random::{
    random_nonsingular_with, random_pd_in_ball, random_pd_in_ball_with, random_unitary,
    random_unitary_with, seeded_rng,
};

pub use num_complex::Complex64;
