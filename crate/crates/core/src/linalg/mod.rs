//! Dense complex matrices and the operator-level primitives used everywhere
//! else: adjoint, Cartesian decomposition, Kronecker product, operator norm
//! and the positive square root `|A| = (A*A)^{1/2}`.
//!
//! Two Hermitian eigensolvers live here. [`hermitian_eig`] is a cyclic
//! complex Jacobi solver that returns a full decomposition; it backs the
//! functional calculus (`|A|`, `A^r`, PSD checks). [`tridiag`] holds a
//! Householder/bisection path that only extracts extremal eigenpairs and is
//! the workhorse of the angular sweeps in [`crate::numrange`].

mod jacobi;
mod json;
pub mod tridiag;

pub use jacobi::{hermitian_eig, EigDecomposition, DEFAULT_EIG_TOL, MAX_SWEEPS};
pub use json::MatrixJson;

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Default cap on the dimension of a Kronecker product.
pub const DEFAULT_KRON_CAP: usize = 4096;

/// Absolute floor used when a tolerance is scaled by a norm that may vanish.
pub const SCALE_FLOOR: f64 = 1e-14;

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4}{:+.4}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting empty, ragged or
    /// non-finite input.
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                k / dim,
                k % dim
            )));
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from rows; every row must have the same length as the
    /// number of rows.
    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidMatrix("matrix is not square".into()));
        }
        Self::new(dim, rows.concat())
    }

    /// Real matrix from rows of `f64`.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be at least 1");
        Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let entries: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&entries)
    }

    /// 1×1 matrix holding `z`.
    pub fn scalar(z: C64) -> Self {
        Self { dim: 1, data: vec![z] }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    fn check_same_dim(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.dim, self.dim, other.dim, other.dim
            )));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "matmul")?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let out_row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                let b_row = &other.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "add")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { dim: self.dim, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other, "sub")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { dim: self.dim, data })
    }

    pub fn scale(&self, alpha: C64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| alpha * z).collect() }
    }

    pub fn scale_real(&self, alpha: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * alpha).collect() }
    }

    /// `self − λI`.
    pub fn shift(&self, lambda: C64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] -= lambda;
        }
        out
    }

    /// Real linear combination `α·self + β·other` for equal dimensions.
    pub fn lincomb(&self, alpha: f64, other: &Self, beta: f64) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a * alpha + b * beta)
            .collect();
        Self { dim: self.dim, data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn mul_vec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim, "vector length must match matrix dimension");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Ax, x⟩ = x* A x`.
    pub fn quadratic_form(&self, x: &[C64]) -> C64 {
        inner(&self.mul_vec(x), x)
    }

    /// Frobenius norm of `self − self*`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*)/2` computed on the upper triangle and mirrored, so the result
    /// is Hermitian bit for bit.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].re, 0.0);
            for j in i + 1..n {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// Real part of the Cartesian decomposition, `(A + A*)/2`.
    pub fn re_part(&self) -> Self {
        self.hermitian_part()
    }

    /// Imaginary part of the Cartesian decomposition, `(A − A*)/(2i)`.
    pub fn im_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = C64::new(self[(i, i)].im, 0.0);
            for j in i + 1..n {
                let d = (self[(i, j)] - self[(j, i)].conj()) * 0.5;
                // d / i = −i·d
                let v = C64::new(d.im, -d.re);
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    /// `A*A = AA*` within `tol·‖A‖²_F`.
    pub fn is_normal(&self, tol: f64) -> bool {
        let a_star = self.adjoint();
        let lhs = a_star.matmul(self).expect("same dimension");
        let rhs = self.matmul(&a_star).expect("same dimension");
        let defect = lhs.sub(&rhs).expect("same dimension").frobenius_norm();
        defect <= tol * self.frobenius_norm().powi(2)
    }

    /// `A² = 0` within `tol·‖A‖²_F`.
    pub fn is_square_zero(&self, tol: f64) -> bool {
        let sq = self.matmul(self).expect("same dimension");
        sq.frobenius_norm() <= tol * self.frobenius_norm().powi(2)
    }

    /// Kronecker product with the default size cap.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        kron_with_cap(self, other, DEFAULT_KRON_CAP)
    }
}

/// Kronecker product `a ⊗ b`: block `(i, j)` equals `a[i, j]·b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    kron_with_cap(a, b, DEFAULT_KRON_CAP)
}

pub fn kron_with_cap(a: &ComplexMatrix, b: &ComplexMatrix, cap: usize) -> Result<ComplexMatrix> {
    let (m, n) = (a.dim, b.dim);
    let dim = m.saturating_mul(n);
    if dim > cap {
        return Err(Error::SizeCap { dim, cap });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..m {
        for j in 0..m {
            let aij = a[(i, j)];
            for k in 0..n {
                let row = &mut out.data[(i * n + k) * dim + j * n..(i * n + k) * dim + (j + 1) * n];
                for (o, &bkl) in row.iter_mut().zip(b.row(k)) {
                    *o = aij * bkl;
                }
            }
        }
    }
    Ok(out)
}

/// `⟨x, y⟩ = Σ x_i · conj(y_i)`, linear in the first argument.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[C64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Operator (spectral) norm: square root of the largest eigenvalue of `A*A`.
pub fn operator_norm(a: &ComplexMatrix) -> Result<f64> {
    if a.frobenius_norm() == 0.0 {
        return Ok(0.0);
    }
    let gram = a.adjoint().matmul(a)?.hermitian_part();
    let (_, top) = tridiag::extreme_eigenvalues(&gram);
    Ok(top.max(0.0).sqrt())
}

/// Norm of a Hermitian matrix: largest eigenvalue modulus.
pub fn hermitian_norm(h: &ComplexMatrix) -> f64 {
    let (lo, hi) = tridiag::extreme_eigenvalues(h);
    lo.abs().max(hi.abs())
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
pub fn hermitian_function(h: &ComplexMatrix, f: impl Fn(f64) -> f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h, DEFAULT_EIG_TOL)?;
    Ok(eig.reconstruct(f))
}

/// Positive square root of `A*A`. Eigenvalues of `A*A` in `[−ε, 0)` with
/// `ε = 1e-12·‖A*A‖_F` are clamped to zero before the root is taken.
pub fn abs_op(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = a.adjoint().matmul(a)?.hermitian_part();
    psd_sqrt(&gram)
}

/// Square root of a Hermitian PSD matrix with roundoff clamping.
pub fn psd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eps = 1e-12 * p.frobenius_norm();
    let eig = hermitian_eig(p, DEFAULT_EIG_TOL)?;
    if let Some(&lo) = eig.eigenvalues.first() {
        if lo < -eps.max(SCALE_FLOOR) {
            return Err(Error::NotPsd { min_eigenvalue: lo });
        }
    }
    Ok(eig.reconstruct(|lam| lam.max(0.0).sqrt()))
}
