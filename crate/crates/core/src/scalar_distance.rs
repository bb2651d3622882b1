//! Scalar-shift optimizations: the distance to scalars
//! `d(A) = inf_λ w(A − λI)` and the Crawford-gap function
//! `h(λ) = ‖T − λI‖² − c(T − λI)²`.
//!
//! `w(A − λI) = max { |z − λ| : z ∈ W(A) }`, so `d(A)` is the radius of the
//! smallest disk enclosing `W(A)` and the minimizer is its center. The solver
//! keeps a finite set of boundary points of `W(A)`, takes the smallest disk
//! enclosing them (a lower bound on `d(A)`), evaluates `w(A − cI)` at its
//! center `c` (an upper bound) and adds the farthest boundary point until the
//! two agree.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::SplitMix64;
use crate::linalg::{hermitian_eig, operator_norm, ComplexMatrix, C64, DEFAULT_EIG_TOL};
use crate::numrange::{Support, SweepOptions};
use crate::simplex::{self, NelderMeadOptions};

/// Radius evaluations allowed before `distance_to_scalars` gives up.
pub const MAX_RADIUS_EVALUATIONS: usize = 500;
/// Boundary directions seeding the enclosing-disk iteration.
const SEED_DIRECTIONS: usize = 64;
/// Nelder–Mead evaluations spent refining the best Crawford-gap grid point.
pub const GAP_REFINE_EVALUATIONS: usize = 48;

#[derive(Debug, Clone, Serialize)]
pub struct ScalarDistanceResult {
    /// `w(A − λ*I)`.
    pub value: f64,
    pub lambda_star: C64,
    /// Radius evaluations used.
    pub iterations: usize,
    /// `2·w(A)`; the minimizer lies within this distance of `tr(A)/n`.
    pub box_radius: f64,
    /// Radius of the smallest disk enclosing the sampled boundary points.
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSample {
    pub lambda: C64,
    pub h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrawfordGapResult {
    /// Smallest `h(λ)` seen; an upper estimate of the infimum.
    pub best_value: f64,
    pub lambda_star: C64,
    /// Every evaluated `(λ, h(λ))`, grid first, then refinement steps.
    pub grid_values: Vec<GapSample>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: C64,
    pub radius: f64,
}

impl Disk {
    fn contains(&self, z: C64, slack: f64) -> bool {
        (z - self.center).norm() <= self.radius + slack
    }

    fn of_pair(p: C64, q: C64) -> Self {
        let center = (p + q) * 0.5;
        Self { center, radius: (p - center).norm().max((q - center).norm()) }
    }

    fn of_triple(p: C64, q: C64, r: C64) -> Self {
        let (b, c) = (q - p, r - p);
        let det = 2.0 * (b.re * c.im - b.im * c.re);
        let scale = b.norm_sqr().max(c.norm_sqr());
        if det.abs() <= 1e-14 * scale {
            // Collinear: the disk on the two farthest points.
            let candidates = [Self::of_pair(p, q), Self::of_pair(p, r), Self::of_pair(q, r)];
            return candidates.into_iter().max_by(|x, y| x.radius.total_cmp(&y.radius)).unwrap();
        }
        let (bb, cc) = (b.norm_sqr(), c.norm_sqr());
        let u = C64::new((c.im * bb - b.im * cc) / det, (b.re * cc - c.re * bb) / det);
        let center = p + u;
        let radius = [p, q, r].iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
        Self { center, radius }
    }
}

/// Smallest disk enclosing `points` (incremental Welzl on a fixed
/// pseudo-random permutation, so the result is deterministic).
pub fn enclosing_disk(points: &[C64]) -> Disk {
    assert!(!points.is_empty(), "enclosing disk of an empty set");
    let mut pts = points.to_vec();
    let mut rng = SplitMix64::new(0x00d1_5c00_ffee_0001);
    for i in (1..pts.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        pts.swap(i, j);
    }
    let scale = pts.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let slack = 1e-13 * scale.max(f64::MIN_POSITIVE);

    let mut disk = Disk { center: pts[0], radius: 0.0 };
    for i in 1..pts.len() {
        if disk.contains(pts[i], slack) {
            continue;
        }
        disk = Disk { center: pts[i], radius: 0.0 };
        for j in 0..i {
            if disk.contains(pts[j], slack) {
                continue;
            }
            disk = Disk::of_pair(pts[i], pts[j]);
            for k in 0..j {
                if !disk.contains(pts[k], slack) {
                    disk = Disk::of_triple(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    disk
}

/// `d(A) = inf_λ w(A − λI)`.
pub fn distance_to_scalars(a: &ComplexMatrix, tol: f64) -> Result<ScalarDistanceResult> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTol(tol));
    }
    let support = Support::new(a);
    let zero = C64::new(0.0, 0.0);
    let sweep = SweepOptions { tol: 0.25 * tol, max_evaluations: 4096, ..SweepOptions::default() };
    let box_radius = 2.0 * support.radius(zero, &sweep)?.value;

    let mut points: Vec<C64> = (0..SEED_DIRECTIONS)
        .map(|k| support.sample(TAU * k as f64 / SEED_DIRECTIONS as f64, zero).point)
        .collect();
    for iterations in 1..=MAX_RADIUS_EVALUATIONS {
        let disk = enclosing_disk(&points);
        let r = support.radius(disk.center, &sweep)?;
        if r.value - disk.radius <= tol {
            return Ok(ScalarDistanceResult {
                value: r.value,
                lambda_star: disk.center,
                iterations,
                box_radius,
                lower_bound: disk.radius,
            });
        }
        points.push(a.quadratic_form(&r.certificate));
    }
    Err(Error::BudgetExceeded(MAX_RADIUS_EVALUATIONS))
}

/// Independent check of `d(A)`: nested `n×n` grids over the search box,
/// each zoomed around the previous best point, with `w(A − λI)` replaced by
/// its support-line polygon on `m` Jacobi-solved angles,
/// `max_j f(θ_j) − Re(e^{iθ_j}λ)`.
pub fn distance_grid_oracle(a: &ComplexMatrix, n: usize, levels: usize, m: usize) -> Result<(f64, C64)> {
    if n < 3 || levels == 0 || m < 8 {
        return Err(Error::InvalidArgument("grid oracle needs n ≥ 3, levels ≥ 1, m ≥ 8".into()));
    }
    let re = a.re_part();
    let im = a.im_part();
    let mut cos = Vec::with_capacity(m);
    let mut sin = Vec::with_capacity(m);
    let mut top = Vec::with_capacity(m);
    for k in 0..m {
        let (s, c) = (TAU * k as f64 / m as f64).sin_cos();
        let eig = hermitian_eig(&re.lincomb(c, &im, -s), DEFAULT_EIG_TOL)?;
        cos.push(c);
        sin.push(s);
        top.push(*eig.eigenvalues.last().expect("non-empty spectrum"));
    }
    let g = |x: f64, y: f64| {
        let mut best = f64::NEG_INFINITY;
        for j in 0..m {
            best = best.max(top[j] - (cos[j] * x - sin[j] * y));
        }
        best
    };
    let w = top.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(0.0);
    let mut center = a.trace() / a.dim() as f64;
    let mut half = 2.0 * w;
    let mut best = (g(center.re, center.im), center);
    for _ in 0..levels {
        if half == 0.0 {
            break;
        }
        let step = 2.0 * half / (n - 1) as f64;
        for i in 0..n {
            for j in 0..n {
                let x = center.re - half + step * i as f64;
                let y = center.im - half + step * j as f64;
                let v = g(x, y);
                if v < best.0 {
                    best = (v, C64::new(x, y));
                }
            }
        }
        center = best.1;
        half = 10.0 * step;
    }
    Ok(best)
}

fn gap_order(a: &GapSample, b: &GapSample) -> Ordering {
    a.h.total_cmp(&b.h)
        .then_with(|| a.lambda.norm().total_cmp(&b.lambda.norm()))
        .then_with(|| a.lambda.arg().rem_euclid(TAU).total_cmp(&b.lambda.arg().rem_euclid(TAU)))
}

fn gap_value(support: &Support<'_>, lambda: C64, sweep: &SweepOptions) -> Result<f64> {
    let norm = operator_norm(&support.matrix().shift(lambda))?;
    let c = support.crawford(lambda, sweep)?.upper_bound.min(norm);
    Ok((norm * norm - c * c).max(0.0))
}

/// `h(λ)` at a single shift, with `c` at its certified upper bound.
pub fn crawford_gap_at(t: &ComplexMatrix, lambda: C64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTol(tol));
    }
    gap_value(&Support::new(t), lambda, &SweepOptions::with_tol(tol))
}

/// Evaluates `h(λ) = ‖T − λI‖² − c(T − λI)²` on an `n_grid × n_grid` grid
/// over the disk `|λ − tr(T)/dim| ≤ 2‖T‖`, then refines around the best
/// grid point with Nelder–Mead. `c` is taken at its certified upper bound,
/// so every recorded `h` is a lower estimate of the exact value.
pub fn crawford_gap_rhs(t: &ComplexMatrix, n_grid: usize, tol: f64) -> Result<CrawfordGapResult> {
    if n_grid < 9 {
        return Err(Error::InvalidArgument(format!("crawford gap grid needs n_grid ≥ 9, got {n_grid}")));
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTol(tol));
    }
    let support = Support::new(t);
    let sweep = SweepOptions::with_tol(tol);
    let h = |lambda: C64| gap_value(&support, lambda, &sweep);

    let mut samples: Vec<GapSample> = Vec::new();
    let center = t.trace() / t.dim() as f64;
    let radius = 2.0 * operator_norm(t)?;
    let step = 2.0 * radius / (n_grid - 1) as f64;
    if radius == 0.0 {
        samples.push(GapSample { lambda: center, h: h(center)? });
    } else {
        for i in 0..n_grid {
            for j in 0..n_grid {
                let offset = C64::new(-radius + step * i as f64, -radius + step * j as f64);
                if offset.norm() <= radius * (1.0 + 1e-12) {
                    let lambda = center + offset;
                    samples.push(GapSample { lambda, h: h(lambda)? });
                }
            }
        }
    }
    let seed = *samples.iter().min_by(|a, b| gap_order(a, b)).expect("grid contains the center");
    if radius > 0.0 && seed.h > 0.0 {
        let opts = NelderMeadOptions {
            max_evaluations: GAP_REFINE_EVALUATIONS,
            f_tol: 0.1 * tol,
            x_tol: 1e-9 * radius,
        };
        let mut failure = None;
        let objective = |x: &[f64]| {
            let lambda = C64::new(x[0], x[1]);
            match h(lambda) {
                Ok(v) => {
                    samples.push(GapSample { lambda, h: v });
                    v
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            }
        };
        simplex::minimize(objective, &[seed.lambda.re, seed.lambda.im], 0.5 * step, &opts);
        if let Some(e) = failure {
            return Err(e);
        }
    }
    let best = *samples.iter().min_by(|a, b| gap_order(a, b)).expect("non-empty");
    Ok(CrawfordGapResult { best_value: best.h, lambda_star: best.lambda, grid_values: samples })
}
