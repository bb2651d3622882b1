//! Cyclic complex Jacobi eigensolver for Hermitian matrices.

use super::{ComplexMatrix, C64, SCALE_FLOOR};
use crate::error::{Error, Result};

/// Default relative off-diagonal threshold.
pub const DEFAULT_EIG_TOL: f64 = 1e-13;

/// Sweep cap before [`Error::NoConvergence`] is reported.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order and the matching unit eigenvectors as the
/// columns of `eigenvectors`.
#[derive(Debug, Clone)]
pub struct EigDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column(k)
    }

    /// `V·diag(f(λ))·V*`, symmetrized.
    pub fn reconstruct(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = C64::new(0.0, 0.0);
                for (k, &w) in weights.iter().enumerate() {
                    if w != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * w;
                    }
                }
                out[(i, j)] = acc;
            }
        }
        for i in 0..n {
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
            for j in i + 1..n {
                out[(j, i)] = out[(i, j)].conj();
            }
        }
        out
    }
}

fn off_diagonal_norm(h: &ComplexMatrix) -> f64 {
    let n = h.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += h[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations until the
/// off-diagonal Frobenius mass drops below `tol·‖h‖_F`.
///
/// The input must satisfy `‖h − h*‖_F ≤ 1e-10·max(1, ‖h‖_F)`; it is
/// symmetrized before the sweeps start.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<EigDecomposition> {
    if !(tol > 0.0) {
        return Err(Error::InvalidTol(tol));
    }
    let fro = h.frobenius_norm();
    let asymmetry = h.hermitian_defect();
    if asymmetry > 1e-10 * fro.max(1.0) {
        return Err(Error::NotHermitian { asymmetry });
    }

    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol * fro.max(SCALE_FLOOR);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        converged = off_diagonal_norm(&a) <= threshold;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(EigDecomposition { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation annihilating `a[p, q]`.
///
/// With `a[p, q] = |b|e^{iφ}` the rotation is `J = diag(1, e^{−iφ})·R` where
/// `R` is the real rotation zeroing the now-real off-diagonal entry.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let modulus = b.norm();
    if modulus == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let phase = b / modulus; // e^{iφ}
    let tau = (aqq - app) / (2.0 * modulus);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.dim();

    // J = [[c, s], [−s·e^{−iφ}, c·e^{−iφ}]]
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // A ← A·J
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    // A ← J*·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    // V ← V·J
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * s + vkq * jqq;
    }
}
