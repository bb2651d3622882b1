//! Grid checks of the two rotation characterizations:
//!
//! ```text
//! w(A⊗B) = ½‖A‖‖B‖        ⇔  ‖e^{iθ}T ± e^{−iθ}T*‖  = ‖A‖‖B‖                    for all θ
//! w²(A⊗B) = ¼‖A*A⊗B*B + AA*⊗BB*‖ ⇔ ‖e^{iθ}T ± e^{−iθ}T*‖² = ‖A*A⊗B*B + AA*⊗BB*‖  for all θ
//! ```
//!
//! with `T = A⊗B`. Both norms are read off Hermitian matrices:
//! `‖e^{iθ}T + e^{−iθ}T*‖ = 2‖ℜ(e^{iθ}T)‖` and
//! `‖e^{iθ}T − e^{−iθ}T*‖ = 2‖ℑ(e^{iθ}T)‖`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{cartesian_norm, OperatorPair};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_norm, operator_norm, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EqualityKind {
    HalfNorm,
    QuarterSquared,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EqualityReport {
    pub kind: EqualityKind,
    pub grid_size: usize,
    /// Value both rotated quantities are compared against.
    pub target: f64,
    pub max_deviation_plus: f64,
    pub max_deviation_minus: f64,
    pub consistent: bool,
    pub tol: f64,
    /// Tolerance at which grid consistency certifies the statement for every
    /// θ, from the Lipschitz constant of the rotated quantities.
    pub continuum_tol: f64,
}

fn rotated_norms(p: &OperatorPair, grid: usize) -> Result<Vec<(f64, f64)>> {
    if grid < 4 {
        return Err(Error::InvalidArgument(format!("equality grid needs at least 4 angles, got {grid}")));
    }
    let t = p.kron();
    Ok((0..grid)
        .map(|k| {
            let rotated = t.scale(C64::from_polar(1.0, TAU * k as f64 / grid as f64));
            (2.0 * hermitian_norm(&rotated.re_part()), 2.0 * hermitian_norm(&rotated.im_part()))
        })
        .collect())
}

fn report(kind: EqualityKind, grid: usize, target: f64, values: &[(f64, f64)], tol: f64, lipschitz: f64) -> EqualityReport {
    let dev_plus = values.iter().map(|v| (v.0 - target).abs()).fold(0.0, f64::max);
    let dev_minus = values.iter().map(|v| (v.1 - target).abs()).fold(0.0, f64::max);
    EqualityReport {
        kind,
        grid_size: grid,
        target,
        max_deviation_plus: dev_plus,
        max_deviation_minus: dev_minus,
        consistent: dev_plus <= tol && dev_minus <= tol,
        tol,
        continuum_tol: tol + lipschitz * PI / grid as f64,
    }
}

/// Both rotated norms against `‖A‖‖B‖` on `θ_k = 2πk/grid`.
pub fn check_equality_half(p: &OperatorPair, grid: usize, tol: f64) -> Result<EqualityReport> {
    let values = rotated_norms(p, grid)?;
    let s = operator_norm(&p.a)? * operator_norm(&p.b)?;
    Ok(report(EqualityKind::HalfNorm, grid, s, &values, tol, 2.0 * s))
}

/// Both squared rotated norms against `‖A*A⊗B*B + AA*⊗BB*‖`.
pub fn check_equality_quarter(p: &OperatorPair, grid: usize, tol: f64) -> Result<EqualityReport> {
    let values: Vec<(f64, f64)> = rotated_norms(p, grid)?.into_iter().map(|(a, b)| (a * a, b * b)).collect();
    let s = operator_norm(&p.a)? * operator_norm(&p.b)?;
    let target = cartesian_norm(&p.a, &p.b)?;
    Ok(report(EqualityKind::QuarterSquared, grid, target, &values, tol, 8.0 * s * s))
}
