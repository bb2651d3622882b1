//! Extremal eigenpairs of Hermitian matrices via Householder reduction to a
//! real symmetric tridiagonal matrix, Sturm-sequence bisection and shifted
//! inverse iteration.
//!
//! Only the largest and smallest eigenvalues are ever needed by the angular
//! sweeps, so this path avoids the full O(n³)-per-sweep cost of Jacobi.

use super::{vec_norm, ComplexMatrix, C64};

/// Real symmetric tridiagonal matrix unitarily similar to a Hermitian input.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    /// Moduli of the sub-diagonal entries; the phases are irrelevant for the
    /// spectrum.
    pub off: Vec<f64>,
}

impl Tridiagonal {
    /// Householder reduction. The input is read through its lower triangle
    /// and assumed Hermitian.
    pub fn reduce(h: &ComplexMatrix) -> Self {
        let n = h.dim();
        let mut w: Vec<C64> = h.as_slice().to_vec();
        let mut diag = vec![0.0; n];
        let mut off = vec![0.0; n.saturating_sub(1)];
        let mut v = vec![C64::new(0.0, 0.0); n];
        let mut p = vec![C64::new(0.0, 0.0); n];

        for k in 0..n.saturating_sub(1) {
            diag[k] = w[k * n + k].re;
            let m = n - k - 1;
            let x0 = w[(k + 1) * n + k];
            let tail: f64 = (k + 2..n).map(|i| w[i * n + k].norm_sqr()).sum();
            let xnorm = (x0.norm_sqr() + tail).sqrt();
            off[k] = xnorm;
            if tail == 0.0 {
                continue;
            }
            let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
            let alpha = -phase * xnorm;
            // v = (x − αe₁)/‖x − αe₁‖ on rows k+1..n
            let v = &mut v[..m];
            v[0] = x0 - alpha;
            for i in 1..m {
                v[i] = w[(k + 1 + i) * n + k];
            }
            let vn = vec_norm(v);
            for z in v.iter_mut() {
                *z /= vn;
            }
            // p = S·v on the trailing block S
            let p = &mut p[..m];
            for i in 0..m {
                let row = &w[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
                p[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
            }
            let beta: f64 = v.iter().zip(p.iter()).map(|(a, b)| (a.conj() * b).re).sum();
            // q = 2(p − βv); S ← S − v q* − q v*
            for i in 0..m {
                p[i] = (p[i] - v[i] * beta) * 2.0;
            }
            for i in 0..m {
                let row = &mut w[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
                let (vi, qi) = (v[i], p[i]);
                for (j, s) in row.iter_mut().enumerate() {
                    *s -= vi * p[j].conj() + qi * v[j].conj();
                }
            }
        }
        if n > 0 {
            diag[n - 1] = w[(n - 1) * n + n - 1].re;
        }
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let scale = self.gershgorin_radius().max(f64::MIN_POSITIVE);
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.dim() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / q };
            q = self.diag[i] - x - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * scale;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1] } else { 0.0 } + if i + 1 < n { self.off[i] } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn gershgorin_radius(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Bisection for the eigenvalue with `index` eigenvalues strictly below
    /// it (0 = smallest).
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let n = self.dim();
        assert!(index < n);
        let (mut lo, mut hi) = self.gershgorin();
        if lo == hi {
            return lo;
        }
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi {
                break;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + 0.5 * (hi - lo)
    }
}

/// `(λ_min, λ_max)` of a Hermitian matrix.
pub fn extreme_eigenvalues(h: &ComplexMatrix) -> (f64, f64) {
    let t = Tridiagonal::reduce(h);
    let n = t.dim();
    (t.eigenvalue(0), t.eigenvalue(n - 1))
}

/// Largest eigenvalue of a Hermitian matrix with a unit eigenvector.
///
/// The eigenvector comes from inverse iteration with the Cholesky factor of
/// `σI − h`, `σ` placed just above the bisected top eigenvalue. The zero
/// matrix yields the first basis vector.
pub fn top_eigenpair(h: &ComplexMatrix) -> (f64, Vec<C64>) {
    let n = h.dim();
    let t = Tridiagonal::reduce(h);
    let top = t.eigenvalue(n - 1);
    let bottom = t.eigenvalue(0);
    let scale = top.abs().max(bottom.abs());
    let mut e1 = vec![C64::new(0.0, 0.0); n];
    e1[0] = C64::new(1.0, 0.0);
    if scale == 0.0 || n == 1 {
        return (top, e1);
    }

    let mut gap = 1e-10 * scale;
    for _ in 0..8 {
        if let Some(chol) = Cholesky::factor_shifted(h, top + gap) {
            let mut x = start_vector(n);
            for _ in 0..4 {
                let y = chol.solve(&x);
                let norm = vec_norm(&y);
                if !norm.is_finite() || norm == 0.0 {
                    break;
                }
                x = y.into_iter().map(|z| z / norm).collect();
            }
            return (top, x);
        }
        gap *= 10.0;
    }
    // Shift never produced a positive definite matrix; fall back to Jacobi.
    let eig = super::hermitian_eig(h, super::DEFAULT_EIG_TOL).expect("hermitian input");
    (top, eig.eigenvector(n - 1))
}

/// Deterministic dense start vector (SplitMix64 stream with a fixed seed).
fn start_vector(n: usize) -> Vec<C64> {
    let mut rng = crate::generators::SplitMix64::new(0x5eed_1234_abcd_0001);
    let x: Vec<C64> = (0..n)
        .map(|_| C64::new(rng.next_f64() - 0.5, rng.next_f64() - 0.5))
        .collect();
    let norm = vec_norm(&x);
    x.into_iter().map(|z| z / norm).collect()
}

/// Lower Cholesky factor of `σI − h`.
struct Cholesky {
    n: usize,
    l: Vec<C64>,
}

impl Cholesky {
    fn factor_shifted(h: &ComplexMatrix, sigma: f64) -> Option<Self> {
        let n = h.dim();
        let mut l = vec![C64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = sigma - h[(j, j)].re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > 0.0) {
                return None;
            }
            let d = d.sqrt();
            l[j * n + j] = C64::new(d, 0.0);
            for i in j + 1..n {
                let mut s = -h[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / d;
            }
        }
        Some(Self { n, l })
    }

    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i].re;
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[k * n + i].conj() * y[k];
            }
            y[i] = s / self.l[i * n + i].re;
        }
        y
    }
}
