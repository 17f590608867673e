//! Cyclic Jacobi eigensolver for complex Hermitian matrices, and the
//! spectral functions built on it.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::matrix::{CMatrix, Hermitian, PdMatrix};

/// Spectral decomposition `M = V · diag(values) · V*` with eigenvalues
/// sorted ascending and orthonormal columns in `vectors`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// `V · diag(f(λ)) · V*`, re-symmetrized.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Hermitian {
        let n = self.values.len();
        let mapped: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    acc += v[(i, k)] * mapped[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
                if i != j {
                    out[(j, i)] = acc.conj();
                }
            }
        }
        Hermitian::symmetrize(out)
    }

    pub fn reconstruct(&self) -> Hermitian {
        self.map_spectrum(|l| l)
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }
}

/// Maximum number of cyclic sweeps for an `n × n` input.
pub fn sweep_budget(n: usize) -> usize {
    30 * n * n
}

const OFF_DIAGONAL_REL_TOL: f64 = 1e-14;

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each rotation first strips the phase of the pivot `m[p][q]` with a
/// diagonal unitary, then annihilates the resulting real symmetric pivot with
/// a plane rotation. Iterates until the off-diagonal Frobenius norm is at most
/// `1e-14 · ‖M‖_F`.
pub fn eig_hermitian(h: &Hermitian) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = CMatrix::identity(n);
    let threshold = OFF_DIAGONAL_REL_TOL * a.frobenius_norm();

    let budget = sweep_budget(n);
    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a);
    while off > threshold {
        if sweeps == budget {
            return Err(Error::ConvergenceFailure {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, dst)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let beta = b.norm();
    if beta == 0.0 {
        return;
    }
    let n = a.dim();
    // e^{-iφ} where b = |b| e^{iφ}
    let phase = b.conj() / beta;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let theta = 0.5 * (aqq - app) / beta;
    let t = if theta.is_infinite() {
        0.0
    } else {
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on (p, q); A ← J* A J, V ← V J.
    let jqp = -phase * s;
    let jqq = phase * c;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * beta, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * beta, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
}

/// Real power of a Hermitian matrix that is required to be positive
/// definite; one eigensolve covers both the certification and the power.
pub fn pd_power(h: &Hermitian, p: f64) -> Result<PdMatrix> {
    if !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "exponent must be finite, got {p}"
        )));
    }
    let eig = eig_hermitian(h)?;
    // certify the input first so a non-PD argument is reported as such
    PdMatrix::from_spectrum(h.clone(), &eig.values)?;
    let powered: Vec<f64> = eig.values.iter().map(|&l| l.powf(p)).collect();
    let out = eig.map_spectrum(|l| l.powf(p));
    PdMatrix::from_spectrum(out, &powered)
}

/// `P^p` for positive definite `P` and any finite nonzero real `p`.
pub fn matrix_power(pd: &PdMatrix, p: f64) -> Result<PdMatrix> {
    if p == 0.0 || !p.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "exponent must be finite and nonzero, got {p}"
        )));
    }
    pd_power(pd.hermitian(), p)
}

/// `A* · M · A`, re-symmetrized.
pub fn congruence(a: &CMatrix, m: &Hermitian) -> Result<Hermitian> {
    if a.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: a.dim(),
        });
    }
    let inner = m.matrix().matmul(a)?;
    Ok(Hermitian::symmetrize(a.adjoint().matmul(&inner)?))
}
