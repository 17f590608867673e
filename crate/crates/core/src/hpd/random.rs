//! Seeded sampling of unitary matrices and of points in a Thompson ball
//! around the identity.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::{CMatrix, Hermitian, PdMatrix};

/// Deterministic generator used by every sampler in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed unitary from a seeded complex Gaussian draw.
///
/// Columns are orthonormalized by modified Gram-Schmidt (applied twice), which
/// is the QR factorization with a real positive `R` diagonal, so no extra
/// phase correction is needed.
pub fn random_unitary(n: usize, seed: u64) -> CMatrix {
    random_unitary_with(&mut seeded_rng(seed), n)
}

pub fn random_unitary_with<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    assert!(n >= 1, "dimension must be positive");
    loop {
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                    .collect()
            })
            .collect();
        if orthonormalize(&mut cols) {
            let mut u = CMatrix::zeros(n);
            for (j, col) in cols.iter().enumerate() {
                for (i, z) in col.iter().enumerate() {
                    u[(i, j)] = *z;
                }
            }
            return u;
        }
    }
}

fn orthonormalize(cols: &mut [Vec<Complex64>]) -> bool {
    for j in 0..cols.len() {
        for _pass in 0..2 {
            for k in 0..j {
                let proj: Complex64 = cols[k]
                    .iter()
                    .zip(&cols[j])
                    .map(|(q, x)| q.conj() * x)
                    .sum();
                let (head, tail) = cols.split_at_mut(j);
                for (x, q) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm.is_nan() || norm <= 1e-12 {
            return false;
        }
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    true
}

/// Random positive definite matrix `U · diag(e^{t_i}) · U*` with `t_i`
/// uniform in `[-radius, radius]`, so its Thompson distance to the identity
/// is `max |t_i| <= radius`.
pub fn random_pd_in_ball(n: usize, radius: f64, seed: u64) -> PdMatrix {
    random_pd_in_ball_with(&mut seeded_rng(seed), n, radius)
}

pub fn random_pd_in_ball_with<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> PdMatrix {
    assert!(
        radius >= 0.0 && radius.is_finite(),
        "radius must be finite and nonnegative"
    );
    if radius == 0.0 {
        return PdMatrix::identity(n);
    }
    let u = random_unitary_with(rng, n);
    let spectrum: Vec<f64> = (0..n)
        .map(|_| rng.random_range(-radius..=radius).exp())
        .collect();
    let m = &(&u * &CMatrix::from_diag(&spectrum)) * &u.adjoint();
    PdMatrix::from_spectrum(Hermitian::symmetrize(m), &spectrum)
        .expect("exponential spectrum is positive")
}

/// Random nonsingular complex matrix `U · diag(σ) · W` with singular values in
/// `[1/spread, spread]`.
pub fn random_nonsingular_with<R: Rng + ?Sized>(rng: &mut R, n: usize, spread: f64) -> CMatrix {
    let u = random_unitary_with(rng, n);
    let w = random_unitary_with(rng, n);
    let log_spread = spread.max(1.0).ln();
    let sigma: Vec<f64> = (0..n)
        .map(|_| {
            if log_spread == 0.0 {
                1.0
            } else {
                rng.random_range(-log_spread..=log_spread).exp()
            }
        })
        .collect();
    &(&u * &CMatrix::from_diag(&sigma)) * &w
}
