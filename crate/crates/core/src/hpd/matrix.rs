//! Dense square complex matrices and the Hermitian / positive definite
//! newtypes built on top of them.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::eigen::eig_hermitian;

/// Dense `n × n` complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length equal to the row count.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { n, data })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * c).collect(),
        }
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> Result<f64> {
        self.check_dim(rhs)?;
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `‖A*A − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("square");
        gram.sub(&Self::identity(self.n))
            .expect("square")
            .frobenius_norm()
    }

    /// `(M + M*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let z = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = z;
                out[(j, i)] = z.conj();
            }
        }
        out
    }

    /// Largest entrywise deviation from conjugate symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            worst = worst.max(self[(i, i)].im.abs());
            for j in (i + 1)..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: rhs.n,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    /// Panics on dimension mismatch; use [`CMatrix::matmul`] for the fallible form.
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.n, self.n)?;
        for row in self.rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:>10.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  {}", cells.join("  "))?;
        }
        write!(f, "]")
    }
}

/// Hermitian symmetry tolerance `1e-12 · max(1, ‖M‖_F)`.
pub fn hermitian_tolerance(m: &CMatrix) -> f64 {
    1e-12 * m.frobenius_norm().max(1.0)
}

/// A complex matrix with conjugate-transpose symmetry.
///
/// Construction validates symmetry within [`hermitian_tolerance`] and stores
/// the exactly symmetrized Hermitian part, so every value of this type is
/// Hermitian to the last bit.
#[derive(Clone, PartialEq)]
pub struct Hermitian(CMatrix);

impl Hermitian {
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let asymmetry = m.hermitian_defect();
        let tolerance = hermitian_tolerance(&m);
        if asymmetry > tolerance {
            return Err(Error::NonHermitian {
                asymmetry,
                tolerance,
            });
        }
        Ok(Self(m.hermitian_part()))
    }

    /// Re-symmetrizes without checking. For results of algebra that is
    /// Hermitian in exact arithmetic.
    pub(crate) fn symmetrize(m: CMatrix) -> Self {
        Self(m.hermitian_part())
    }

    pub fn identity(n: usize) -> Self {
        Self(CMatrix::identity(n))
    }

    pub fn zeros(n: usize) -> Self {
        Self(CMatrix::zeros(n))
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        Self(CMatrix::from_diag(diag))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(CMatrix::from_real_rows(rows)?)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.frobenius_norm()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::symmetrize(self.0.add(&rhs.0)?))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Self::symmetrize(self.0.sub(&rhs.0)?))
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::symmetrize(self.0.scale(c))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        let eig = eig_hermitian(self)?;
        Ok(*eig.values.last().expect("nonempty"))
    }
}

impl Index<(usize, usize)> for Hermitian {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl fmt::Debug for Hermitian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hermitian{:?}", self.0)
    }
}

/// Relative floor below which an eigenvalue is not treated as positive:
/// `n · ε_mach · λ_max`.
pub fn pd_floor(n: usize, max_eig: f64) -> f64 {
    n as f64 * f64::EPSILON * max_eig.max(0.0)
}

/// Returns whether `m` is positive definite under the relative floor, together
/// with its smallest eigenvalue.
pub fn is_positive_definite(m: &Hermitian) -> Result<(bool, f64)> {
    let eig = eig_hermitian(m)?;
    let min = eig.values[0];
    let max = *eig.values.last().expect("nonempty");
    Ok((max > 0.0 && min > pd_floor(m.dim(), max), min))
}

/// A Hermitian matrix certified positive definite, with its smallest
/// eigenvalue cached.
#[derive(Clone, PartialEq)]
pub struct PdMatrix {
    base: Hermitian,
    min_eig: f64,
}

impl PdMatrix {
    pub fn new(base: Hermitian) -> Result<Self> {
        let eig = eig_hermitian(&base)?;
        Self::from_spectrum(base, &eig.values)
    }

    /// Validates a matrix from checked entries; convenience for literals.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        Self::new(Hermitian::new(m)?)
    }

    pub(crate) fn from_spectrum(base: Hermitian, values: &[f64]) -> Result<Self> {
        let min_eig = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max_eig = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let floor = pd_floor(base.dim(), max_eig);
        if !(max_eig > 0.0 && min_eig > floor) {
            return Err(Error::NotPositiveDefinite { min_eig, floor });
        }
        Ok(Self { base, min_eig })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            base: Hermitian::identity(n),
            min_eig: 1.0,
        }
    }

    /// Positive diagonal matrix.
    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        let base = Hermitian::from_diag(diag);
        Self::from_spectrum(base, diag)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    #[inline]
    pub fn min_eig(&self) -> f64 {
        self.min_eig
    }

    #[inline]
    pub fn hermitian(&self) -> &Hermitian {
        &self.base
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix {
        self.base.matrix()
    }

    /// Sum of two positive definite matrices; positive definite in exact
    /// arithmetic, re-certified here.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Self::new(self.base.add(&rhs.base)?)
    }

    /// Multiplies by a positive scalar.
    pub fn scale(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "scale factor must be positive and finite, got {c}"
            )));
        }
        Ok(Self {
            base: self.base.scale(c),
            min_eig: self.min_eig * c,
        })
    }
}

impl Index<(usize, usize)> for PdMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.base[idx]
    }
}

impl fmt::Debug for PdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Pd(min_eig={:.4e}){:?}",
            self.min_eig,
            self.base.matrix()
        )
    }
}
