//! Tensor-product numerical radius bounds.
//!
//! Each [`BoundId`] names one inequality chain around `w(A⊗B)` (or its
//! square). [`eval_bound`] evaluates every term of the chain and checks the
//! adjacent inequalities within a tolerance; [`eval_all`] runs the whole
//! catalogue on a pair, sharing the expensive quantities.

mod equality;
mod lemmas;

pub use equality::{check_equality_half, check_equality_quarter, EqualityKind, EqualityReport};
pub use lemmas::{
    check_mixed_schwarz, check_power_lemma, check_sum_norm_lemma, mixed_schwarz_sides, power_lemma_sides,
    sum_norm_sides,
};

use std::cell::OnceCell;
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_num;
use crate::linalg::{abs_op, hermitian_norm, kron_with_cap, operator_norm, ComplexMatrix, C64, DEFAULT_KRON_CAP};
use crate::numrange::{Support, SweepOptions};
use crate::scalar_distance::{crawford_gap_rhs, distance_to_scalars, CrawfordGapResult};

/// Default grid of the Crawford-gap λ-search.
pub const DEFAULT_GAP_GRID: usize = 9;

/// Operands of a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPair {
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
}

impl OperatorPair {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        Self::with_cap(a, b, DEFAULT_KRON_CAP)
    }

    pub fn with_cap(a: ComplexMatrix, b: ComplexMatrix, cap: usize) -> Result<Self> {
        let dim = a.dim() * b.dim();
        if dim > cap {
            return Err(Error::SizeCap { dim, cap });
        }
        Ok(Self { a, b })
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn kron(&self) -> ComplexMatrix {
        kron_with_cap(&self.a, &self.b, usize::MAX).expect("cap checked at construction")
    }

    /// `1e-7·(1 + ‖a‖²‖b‖²)`.
    pub fn default_tol(&self) -> Result<f64> {
        let s = operator_norm(&self.a)? * operator_norm(&self.b)?;
        Ok(1e-7 * (1.0 + s * s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    ClassicNorm,
    RadiusProduct,
    DoubleRadius,
    DistRefined,
    AbsUpper,
    CartesianUpper,
    NormdiffLower,
    RotNormdiffLower,
    SqNormdiffLower,
    SqRotLower,
    CrawfordGap,
}

impl BoundId {
    pub const ALL: [BoundId; 11] = [
        BoundId::ClassicNorm,
        BoundId::RadiusProduct,
        BoundId::DoubleRadius,
        BoundId::DistRefined,
        BoundId::AbsUpper,
        BoundId::CartesianUpper,
        BoundId::NormdiffLower,
        BoundId::RotNormdiffLower,
        BoundId::SqNormdiffLower,
        BoundId::SqRotLower,
        BoundId::CrawfordGap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::ClassicNorm => "CLASSIC_NORM",
            BoundId::RadiusProduct => "RADIUS_PRODUCT",
            BoundId::DoubleRadius => "DOUBLE_RADIUS",
            BoundId::DistRefined => "DIST_REFINED",
            BoundId::AbsUpper => "ABS_UPPER",
            BoundId::CartesianUpper => "CARTESIAN_UPPER",
            BoundId::NormdiffLower => "NORMDIFF_LOWER",
            BoundId::RotNormdiffLower => "ROT_NORMDIFF_LOWER",
            BoundId::SqNormdiffLower => "SQ_NORMDIFF_LOWER",
            BoundId::SqRotLower => "SQ_ROT_LOWER",
            BoundId::CrawfordGap => "CRAWFORD_GAP",
        }
    }

    /// What the chain is centered on.
    pub fn center(self) -> Center {
        match self {
            BoundId::AbsUpper | BoundId::CartesianUpper | BoundId::SqNormdiffLower | BoundId::SqRotLower => {
                Center::RadiusSquared
            }
            BoundId::CrawfordGap => Center::NormGap,
            _ => Center::Radius,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Center {
    /// `w(A⊗B)`
    Radius,
    /// `w²(A⊗B)`
    RadiusSquared,
    /// `‖A⊗B‖² − w²(A⊗B)`
    NormGap,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Term {
    pub name: &'static str,
    pub value: f64,
}

fn term(name: &'static str, value: f64) -> Term {
    Term { name, value }
}

/// One evaluated chain `lower_terms ≤ center ≤ upper_terms`, read left to
/// right. `aux` holds values that feed the chain without being part of it
/// (both arguments of a `min`, the minimizing `λ`, ...).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub id: BoundId,
    pub center_kind: Center,
    pub center: f64,
    pub lower_terms: Vec<Term>,
    pub upper_terms: Vec<Term>,
    pub aux: Vec<Term>,
    pub holds: bool,
    pub min_slack: f64,
    pub tol: f64,
}

impl BoundReport {
    fn new(id: BoundId, center: f64, lower: Vec<Term>, upper: Vec<Term>, aux: Vec<Term>, tol: f64) -> Self {
        let chain: Vec<f64> = lower
            .iter()
            .map(|t| t.value)
            .chain(std::iter::once(center))
            .chain(upper.iter().map(|t| t.value))
            .collect();
        let min_slack = chain.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let holds = chain.iter().all(|v| v.is_finite()) && min_slack >= -tol;
        Self { id, center_kind: id.center(), center, lower_terms: lower, upper_terms: upper, aux, holds, min_slack, tol }
    }

    /// Signed slack of the bound adjacent to the center on the lower side.
    pub fn lower_slack(&self) -> Option<f64> {
        self.lower_terms.last().map(|t| self.center - t.value)
    }

    pub fn upper_slack(&self) -> Option<f64> {
        self.upper_terms.first().map(|t| t.value - self.center)
    }

    pub fn term(&self, name: &str) -> Option<f64> {
        self.lower_terms
            .iter()
            .chain(&self.upper_terms)
            .chain(&self.aux)
            .find(|t| t.name == name)
            .map(|t| t.value)
    }

    fn flattened_terms(&self) -> String {
        let mut parts = Vec::new();
        for (side, terms) in [("lower", &self.lower_terms), ("upper", &self.upper_terms), ("aux", &self.aux)] {
            for t in terms {
                parts.push(format!("{side}.{}={}", t.name, fmt_num(t.value)));
            }
        }
        parts.join(";")
    }
}

/// Expensive per-pair quantities, computed at most once.
pub struct PairContext<'p> {
    pair: &'p OperatorPair,
    t: ComplexMatrix,
    tol: f64,
    norm_a: OnceCell<f64>,
    norm_b: OnceCell<f64>,
    norm_t: OnceCell<f64>,
    w_a: OnceCell<f64>,
    w_b: OnceCell<f64>,
    w_t: OnceCell<f64>,
    d_a: OnceCell<f64>,
    d_b: OnceCell<f64>,
    cartesian: OnceCell<f64>,
    abs_cross: OnceCell<f64>,
    square_norms: OnceCell<(f64, f64)>,
    rotated: OnceCell<[f64; 4]>,
    gap: OnceCell<CrawfordGapResult>,
    gap_grid: usize,
}

fn cached<T: Clone>(cell: &OnceCell<T>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v).clone())
}

impl<'p> PairContext<'p> {
    pub fn new(pair: &'p OperatorPair, tol: f64) -> Result<Self> {
        Self::with_gap_grid(pair, tol, DEFAULT_GAP_GRID)
    }

    pub fn with_gap_grid(pair: &'p OperatorPair, tol: f64, gap_grid: usize) -> Result<Self> {
        if !(tol > 0.0) || !tol.is_finite() {
            return Err(Error::InvalidTol(tol));
        }
        Ok(Self {
            pair,
            t: pair.kron(),
            tol,
            norm_a: OnceCell::new(),
            norm_b: OnceCell::new(),
            norm_t: OnceCell::new(),
            w_a: OnceCell::new(),
            w_b: OnceCell::new(),
            w_t: OnceCell::new(),
            d_a: OnceCell::new(),
            d_b: OnceCell::new(),
            cartesian: OnceCell::new(),
            abs_cross: OnceCell::new(),
            square_norms: OnceCell::new(),
            rotated: OnceCell::new(),
            gap: OnceCell::new(),
            gap_grid,
        })
    }

    pub fn tensor(&self) -> &ComplexMatrix {
        &self.t
    }

    /// Accuracy the inner solvers are asked for, well below the check
    /// tolerance.
    fn solver_tol(&self) -> f64 {
        (1e-3 * self.tol).clamp(1e-13, 1e-9)
    }

    fn radius(&self, m: &ComplexMatrix) -> Result<f64> {
        Ok(Support::new(m).radius(C64::new(0.0, 0.0), &SweepOptions::with_tol(self.solver_tol()))?.value)
    }

    pub fn norm_a(&self) -> Result<f64> {
        cached(&self.norm_a, || operator_norm(&self.pair.a))
    }
    pub fn norm_b(&self) -> Result<f64> {
        cached(&self.norm_b, || operator_norm(&self.pair.b))
    }
    pub fn norm_t(&self) -> Result<f64> {
        cached(&self.norm_t, || operator_norm(&self.t))
    }
    pub fn w_a(&self) -> Result<f64> {
        cached(&self.w_a, || self.radius(&self.pair.a))
    }
    pub fn w_b(&self) -> Result<f64> {
        cached(&self.w_b, || self.radius(&self.pair.b))
    }
    /// `w(A⊗B)`.
    pub fn w_t(&self) -> Result<f64> {
        cached(&self.w_t, || self.radius(&self.t))
    }
    pub fn d_a(&self) -> Result<f64> {
        cached(&self.d_a, || Ok(distance_to_scalars(&self.pair.a, self.solver_tol())?.value))
    }
    pub fn d_b(&self) -> Result<f64> {
        cached(&self.d_b, || Ok(distance_to_scalars(&self.pair.b, self.solver_tol())?.value))
    }

    /// `‖A*A⊗B*B + AA*⊗BB*‖`.
    pub fn cartesian(&self) -> Result<f64> {
        cached(&self.cartesian, || cartesian_norm(&self.pair.a, &self.pair.b))
    }

    /// `‖ℜ(|A||A*| ⊗ |B||B*|)‖`.
    pub fn abs_cross(&self) -> Result<f64> {
        cached(&self.abs_cross, || {
            let (a, b) = (&self.pair.a, &self.pair.b);
            let pa = abs_op(a)?.matmul(&abs_op(&a.adjoint())?)?;
            let pb = abs_op(b)?.matmul(&abs_op(&b.adjoint())?)?;
            let x = kron_with_cap(&pa, &pb, usize::MAX)?;
            Ok(hermitian_norm(&x.re_part()))
        })
    }

    /// `(‖A²‖, ‖B²‖)`.
    pub fn square_norms(&self) -> Result<(f64, f64)> {
        cached(&self.square_norms, || {
            let (a, b) = (&self.pair.a, &self.pair.b);
            Ok((operator_norm(&a.matmul(a)?)?, operator_norm(&b.matmul(b)?)?))
        })
    }

    /// `[‖T+T*‖, ‖T−T*‖, ‖T+iT*‖, ‖T−iT*‖]` for `T = A⊗B`, from
    /// `T + e^{iφ}T* = e^{iφ/2}·2ℜ(e^{−iφ/2}T)`.
    pub fn rotated_norms(&self) -> Result<[f64; 4]> {
        cached(&self.rotated, || {
            let t = &self.t;
            let rot = |phase: f64| 2.0 * hermitian_norm(&t.scale(C64::from_polar(1.0, phase)).re_part());
            Ok([
                2.0 * hermitian_norm(&t.re_part()),
                2.0 * hermitian_norm(&t.im_part()),
                rot(-FRAC_PI_4),
                rot(FRAC_PI_4),
            ])
        })
    }

    pub fn crawford_gap(&self) -> Result<CrawfordGapResult> {
        cached(&self.gap, || crawford_gap_rhs(&self.t, self.gap_grid, self.solver_tol()))
    }

    pub fn eval(&self, id: BoundId) -> Result<BoundReport> {
        let tol = self.tol;
        let report = match id {
            BoundId::ClassicNorm => {
                let s = self.norm_a()? * self.norm_b()?;
                BoundReport::new(
                    id,
                    self.w_t()?,
                    vec![term("half_norm_product", 0.5 * s)],
                    vec![term("norm_product", s)],
                    vec![],
                    tol,
                )
            }
            BoundId::RadiusProduct => {
                let (wa, wb, na, nb) = (self.w_a()?, self.w_b()?, self.norm_a()?, self.norm_b()?);
                let (first, second) = (wa * nb, wb * na);
                BoundReport::new(
                    id,
                    self.w_t()?,
                    vec![term("radius_product", wa * wb)],
                    vec![term("min_radius_norm", if second < first { second } else { first })],
                    vec![term("w_a_norm_b", first), term("w_b_norm_a", second)],
                    tol,
                )
            }
            BoundId::DoubleRadius => {
                let p = self.w_a()? * self.w_b()?;
                BoundReport::new(
                    id,
                    self.w_t()?,
                    vec![term("radius_product", p)],
                    vec![term("double_radius_product", 2.0 * p)],
                    vec![],
                    tol,
                )
            }
            BoundId::DistRefined => {
                let (wa, wb, da, db) = (self.w_a()?, self.w_b()?, self.d_a()?, self.d_b()?);
                let (first, second) = (wa * (wb + db), wb * (wa + da));
                BoundReport::new(
                    id,
                    self.w_t()?,
                    vec![],
                    vec![
                        term("dist_refined", if second < first { second } else { first }),
                        term("double_radius_product", 2.0 * wa * wb),
                    ],
                    vec![term("w_a_plus_d_b", first), term("w_b_plus_d_a", second), term("d_a", da), term("d_b", db)],
                    tol,
                )
            }
            BoundId::AbsUpper => {
                let w = self.w_t()?;
                let s = self.norm_a()? * self.norm_b()?;
                let (sa, sb) = self.square_norms()?;
                let first = 0.25 * self.cartesian()? + 0.5 * self.abs_cross()?;
                let second = 0.25 * (s + (sa * sb).sqrt()).powi(2);
                BoundReport::new(
                    id,
                    w * w,
                    vec![],
                    vec![term("abs_term", first), term("power_term", second), term("norm_product_squared", s * s)],
                    vec![term("square_norm_a", sa), term("square_norm_b", sb)],
                    tol,
                )
            }
            BoundId::CartesianUpper => {
                let w = self.w_t()?;
                let s = self.norm_a()? * self.norm_b()?;
                BoundReport::new(
                    id,
                    w * w,
                    vec![],
                    vec![term("half_cartesian", 0.5 * self.cartesian()?), term("norm_product_squared", s * s)],
                    vec![],
                    tol,
                )
            }
            BoundId::NormdiffLower | BoundId::RotNormdiffLower => {
                let s = self.norm_a()? * self.norm_b()?;
                let r = self.rotated_norms()?;
                let (plus, minus) = if id == BoundId::NormdiffLower { (r[0], r[1]) } else { (r[2], r[3]) };
                BoundReport::new(
                    id,
                    self.w_t()?,
                    vec![term("half_norm_product", 0.5 * s), term("normdiff_bound", 0.5 * s + 0.25 * (plus - minus).abs())],
                    vec![],
                    vec![term("norm_plus", plus), term("norm_minus", minus)],
                    tol,
                )
            }
            BoundId::SqNormdiffLower | BoundId::SqRotLower => {
                let w = self.w_t()?;
                let q = 0.25 * self.cartesian()?;
                let r = self.rotated_norms()?;
                let (plus, minus) = if id == BoundId::SqNormdiffLower { (r[0], r[1]) } else { (r[2], r[3]) };
                BoundReport::new(
                    id,
                    w * w,
                    vec![term("quarter_cartesian", q), term("sq_normdiff_bound", q + 0.125 * (plus * plus - minus * minus).abs())],
                    vec![],
                    vec![term("norm_plus", plus), term("norm_minus", minus)],
                    tol,
                )
            }
            BoundId::CrawfordGap => {
                let (w, n) = (self.w_t()?, self.norm_t()?);
                let gap = self.crawford_gap()?;
                BoundReport::new(
                    id,
                    n * n - w * w,
                    vec![],
                    vec![term("gap_infimum_estimate", gap.best_value)],
                    vec![
                        term("lambda_star_re", gap.lambda_star.re),
                        term("lambda_star_im", gap.lambda_star.im),
                        term("evaluated_shifts", gap.grid_values.len() as f64),
                    ],
                    tol,
                )
            }
        };
        Ok(report)
    }
}

/// `‖A*A⊗B*B + AA*⊗BB*‖`.
pub fn cartesian_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let (ah, bh) = (a.adjoint(), b.adjoint());
    let left = kron_with_cap(&ah.matmul(a)?, &bh.matmul(b)?, usize::MAX)?;
    let right = kron_with_cap(&a.matmul(&ah)?, &b.matmul(&bh)?, usize::MAX)?;
    Ok(hermitian_norm(&left.add(&right)?.hermitian_part()))
}

/// Evaluates one bound chain on `p`.
pub fn eval_bound(id: BoundId, p: &OperatorPair, tol: f64) -> Result<BoundReport> {
    PairContext::new(p, tol)?.eval(id)
}

/// Parses a bound name and evaluates it.
pub fn eval_bound_named(name: &str, p: &OperatorPair, tol: f64) -> Result<BoundReport> {
    eval_bound(name.parse()?, p, tol)
}

/// All reports for a pair in [`BoundId::ALL`] order, with per-bound errors
/// collected rather than aborting.
#[derive(Debug, Clone)]
pub struct BoundSet {
    pub reports: Vec<BoundReport>,
    pub errors: Vec<(BoundId, Error)>,
    /// Lower bounds within tolerance of the smallest gap below `w(A⊗B)`.
    pub tightest_lower: Vec<BoundId>,
    pub tightest_upper: Vec<BoundId>,
}

impl BoundSet {
    pub fn all_hold(&self) -> bool {
        self.errors.is_empty() && self.reports.iter().all(|r| r.holds)
    }

    pub fn get(&self, id: BoundId) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.id == id)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "id,center,terms,holds,min_slack")?;
        for r in &self.reports {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.id,
                fmt_num(r.center),
                r.flattened_terms(),
                r.holds,
                fmt_num(r.min_slack)
            )?;
        }
        Ok(())
    }
}

impl Serialize for BoundSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for r in &self.reports {
            map.serialize_entry(r.id.as_str(), r)?;
        }
        let errors: Vec<(BoundId, String)> = self.errors.iter().map(|(id, e)| (*id, e.to_string())).collect();
        map.serialize_entry("errors", &errors)?;
        map.serialize_entry("tightest_lower", &self.tightest_lower)?;
        map.serialize_entry("tightest_upper", &self.tightest_upper)?;
        map.end()
    }
}

/// Distance of a report's bound from `w(A⊗B)`, in units of `w`, on each side.
fn radius_gaps(r: &BoundReport, w: f64) -> (Option<f64>, Option<f64>) {
    let root = |v: f64| v.max(0.0).sqrt();
    match r.center_kind {
        Center::Radius => (r.lower_terms.last().map(|t| w - t.value), r.upper_terms.first().map(|t| t.value - w)),
        Center::RadiusSquared => {
            (r.lower_terms.last().map(|t| w - root(t.value)), r.upper_terms.first().map(|t| root(t.value) - w))
        }
        // ‖T‖² − w² ≤ h  ⇒  w ≥ sqrt(‖T‖² − h)
        Center::NormGap => {
            let n2 = r.center + w * w;
            (r.upper_terms.first().map(|t| w - root(n2 - t.value)), None)
        }
    }
}

fn tightest(gaps: &[(BoundId, f64)], tol: f64) -> Vec<BoundId> {
    let Some(best) = gaps.iter().map(|g| g.1).min_by(|a, b| a.total_cmp(b)) else {
        return Vec::new();
    };
    gaps.iter().filter(|g| g.1 <= best + tol).map(|g| g.0).collect()
}

/// Every bound on `p`, sharing one `w(A⊗B)` computation.
pub fn eval_all(p: &OperatorPair, tol: f64) -> Result<BoundSet> {
    eval_all_with(&PairContext::new(p, tol)?)
}

pub fn eval_all_with(ctx: &PairContext<'_>) -> Result<BoundSet> {
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for id in BoundId::ALL {
        match ctx.eval(id) {
            Ok(r) => reports.push(r),
            Err(e) => errors.push((id, e)),
        }
    }
    let (mut lower, mut upper) = (Vec::new(), Vec::new());
    if let Ok(w) = ctx.w_t() {
        for r in &reports {
            let (lo, up) = radius_gaps(r, w);
            if let Some(g) = lo {
                lower.push((r.id, g));
            }
            if let Some(g) = up {
                upper.push((r.id, g));
            }
        }
    }
    Ok(BoundSet { tightest_lower: tightest(&lower, ctx.tol), tightest_upper: tightest(&upper, ctx.tol), reports, errors })
}
