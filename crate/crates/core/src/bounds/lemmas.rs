//! Standalone checks of three classical operator inequalities used by the
//! tensor bounds: the power inequality for positive operators, the mixed
//! Schwarz inequality and the norm of a sum of positive operators.

use crate::error::{Error, Result};
use crate::linalg::{
    abs_op, hermitian_eig, operator_norm, psd_sqrt, vec_norm, ComplexMatrix, EigDecomposition, C64, DEFAULT_EIG_TOL,
    SCALE_FLOOR,
};

const UNIT_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;
const LEMMA_TOL: f64 = 1e-10;

fn require_unit(x: &[C64]) -> Result<()> {
    let norm = vec_norm(x);
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm });
    }
    Ok(())
}

fn psd_eig(a: &ComplexMatrix) -> Result<EigDecomposition> {
    let eig = hermitian_eig(a, DEFAULT_EIG_TOL)?;
    let lo = eig.eigenvalues[0];
    let hi = *eig.eigenvalues.last().expect("non-empty spectrum");
    if lo < -PSD_TOL * hi.abs().max(1.0) {
        return Err(Error::NotPsd { min_eigenvalue: lo });
    }
    Ok(eig)
}

/// `(⟨Ax,x⟩^r, ⟨A^r x,x⟩)` for PSD `a`, unit `x`, `r ≥ 1`.
pub fn power_lemma_sides(a: &ComplexMatrix, x: &[C64], r: f64) -> Result<(f64, f64)> {
    if !(r >= 1.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("power lemma needs r ≥ 1, got {r}")));
    }
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a {}x{} matrix", x.len(), a.dim(), a.dim())));
    }
    require_unit(x)?;
    let eig = psd_eig(a)?;
    let ar = eig.reconstruct(|lam| lam.max(0.0).powf(r));
    let lhs = a.quadratic_form(x).re.max(0.0).powf(r);
    let rhs = ar.quadratic_form(x).re;
    Ok((lhs, rhs))
}

/// `⟨Ax,x⟩^r ≤ ⟨A^r x,x⟩`.
pub fn check_power_lemma(a: &ComplexMatrix, x: &[C64], r: f64) -> Result<bool> {
    let (lhs, rhs) = power_lemma_sides(a, x, r)?;
    Ok(lhs <= rhs + LEMMA_TOL * rhs.abs().max(1.0))
}

/// `(|⟨Ax,x⟩|, ⟨|A|x,x⟩^{1/2}⟨|A*|x,x⟩^{1/2})` for unit `x`.
pub fn mixed_schwarz_sides(a: &ComplexMatrix, x: &[C64]) -> Result<(f64, f64)> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a {}x{} matrix", x.len(), a.dim(), a.dim())));
    }
    require_unit(x)?;
    let left = abs_op(a)?.quadratic_form(x).re.max(0.0);
    let right = abs_op(&a.adjoint())?.quadratic_form(x).re.max(0.0);
    Ok((a.quadratic_form(x).norm(), (left * right).sqrt()))
}

/// `|⟨Ax,x⟩| ≤ ⟨|A|x,x⟩^{1/2}⟨|A*|x,x⟩^{1/2}`.
pub fn check_mixed_schwarz(a: &ComplexMatrix, x: &[C64]) -> Result<bool> {
    let (lhs, rhs) = mixed_schwarz_sides(a, x)?;
    Ok(lhs <= rhs + LEMMA_TOL * rhs.max(1.0))
}

/// `(‖A+B‖, max{‖A‖,‖B‖} + ‖A^{1/2}B^{1/2}‖)` for PSD `a`, `b`.
pub fn sum_norm_sides(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(f64, f64)> {
    psd_eig(a)?;
    psd_eig(b)?;
    let (na, nb) = (operator_norm(a)?, operator_norm(b)?);
    let cross = operator_norm(&psd_sqrt(a)?.matmul(&psd_sqrt(b)?)?)?;
    Ok((operator_norm(&a.add(b)?)?, na.max(nb) + cross))
}

/// `‖A+B‖ ≤ max{‖A‖,‖B‖} + ‖A^{1/2}B^{1/2}‖` within `1e-8·(‖a‖+‖b‖)`.
pub fn check_sum_norm_lemma(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<bool> {
    let (lhs, rhs) = sum_norm_sides(a, b)?;
    let tol = 1e-8 * (operator_norm(a)? + operator_norm(b)?) + SCALE_FLOOR;
    Ok(lhs <= rhs + tol)
}
