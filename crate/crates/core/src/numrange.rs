//! Numerical radius, Crawford number and numerical-range boundary sampling.
//!
//! Everything is driven by the support function of the numerical range,
//!
//! ```text
//! f(θ) = λ_max(ℜ(e^{iθ}A)) = max { Re(e^{iθ}z) : z ∈ W(A) },
//! ```
//!
//! and the top eigenvector `x(θ)`, whose Rayleigh value `⟨Ax, x⟩` is a point of
//! `W(A)` on the supporting line. `w(A) = max_θ f(θ)` and
//! `c(A) = max(0, −min_θ f(θ))`.
//!
//! The global search over θ is a branch-and-bound on arcs `[θ₁, θ₂]` of the
//! circle. Two certified envelopes drive it:
//!
//! * the two support lines at the arc ends meet at a vertex `P`, and
//!   `f(θ) ≤ Re(e^{iθ}P)` on the arc (the range lies in the wedge);
//! * the two boundary points `z₁, z₂` lie in `W(A)`, so
//!   `f(θ) ≥ max(Re(e^{iθ}z₁), Re(e^{iθ}z₂))` on the arc.
//!
//! Both envelopes are exact sinusoids, so the gap they leave shrinks
//! quadratically with the arc width. Arcs whose envelope cannot beat the
//! incumbent by more than `tol` are discarded; the rest are split. The
//! search stops when the bracket closes to `tol` or the evaluation budget is
//! spent, and the certified bracket is returned either way.

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::rc::Rc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::format::fmt_num;
use crate::linalg::{hermitian_eig, tridiag, ComplexMatrix, C64, DEFAULT_EIG_TOL};

/// Default absolute tolerance of the angular searches.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default number of boundary samples.
pub const DEFAULT_BOUNDARY_POINTS: usize = 720;

/// Arcs narrower than this fall back to a Lipschitz envelope; the wedge
/// vertex becomes ill-conditioned as the two support lines turn parallel.
const MIN_WEDGE_WIDTH: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub tol: f64,
    /// Uniform arcs seeded before branch-and-bound (at least 3).
    pub initial_grid: usize,
    pub max_evaluations: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, initial_grid: 64, max_evaluations: 2048 }
    }
}

impl SweepOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) || !self.tol.is_finite() {
            return Err(Error::InvalidTol(self.tol));
        }
        if self.initial_grid < 3 {
            return Err(Error::InvalidArgument("initial grid needs at least 3 points".into()));
        }
        Ok(())
    }
}

/// Numerical radius with its certificate.
#[derive(Debug, Clone, Serialize)]
pub struct RadiusResult {
    /// `|⟨A x, x⟩|` for the certificate `x`; never exceeds the true radius.
    pub value: f64,
    pub theta_star: f64,
    pub certificate: Vec<C64>,
    pub evaluations: usize,
    /// Certified upper bound on the radius.
    pub upper_bound: f64,
}

impl RadiusResult {
    pub fn gap(&self) -> f64 {
        self.upper_bound - self.value
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrawfordResult {
    /// Certified lower bound on `c(A)` (a separating line realizes it).
    pub value: f64,
    /// Angle at which `λ_min(ℜ(e^{iθ}A))` is largest.
    pub theta_star: f64,
    pub attained_inside: bool,
    pub evaluations: usize,
    pub upper_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RangeSample {
    pub theta: f64,
    pub boundary_point: C64,
    pub support_value: f64,
}

#[derive(Debug, Clone)]
struct BaseSample {
    value: f64,
    point: C64,
    vector: Rc<Vec<C64>>,
}

/// One evaluation of the (possibly shifted) support function.
#[derive(Debug, Clone)]
pub struct SupportSample {
    pub theta: f64,
    /// Support value of `A − λI` at `theta`.
    pub value: f64,
    /// Boundary point of `W(A − λI)` on the supporting line.
    pub point: C64,
    pub vector: Rc<Vec<C64>>,
}

/// Support function of `W(A)` with memoized eigen-solves, shared by every
/// scalar shift `A − λI` (shifting moves the range rigidly:
/// `f_{A−λI}(θ) = f_A(θ) − Re(e^{iθ}λ)`).
pub struct Support<'a> {
    matrix: &'a ComplexMatrix,
    re: ComplexMatrix,
    im: ComplexMatrix,
    frobenius: f64,
    cache: RefCell<HashMap<u64, BaseSample>>,
    solves: Cell<usize>,
}

impl<'a> Support<'a> {
    pub fn new(matrix: &'a ComplexMatrix) -> Self {
        Self {
            matrix,
            re: matrix.re_part(),
            im: matrix.im_part(),
            frobenius: matrix.frobenius_norm(),
            cache: RefCell::new(HashMap::new()),
            solves: Cell::new(0),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.matrix
    }

    /// Eigen-solves performed so far.
    pub fn solves(&self) -> usize {
        self.solves.get()
    }

    /// `ℜ(e^{iθ}A) = cos θ·ℜ(A) − sin θ·ℑ(A)`, Hermitian bit for bit.
    pub fn hermitian_at(&self, theta: f64) -> ComplexMatrix {
        let (s, c) = theta.sin_cos();
        self.re.lincomb(c, &self.im, -s)
    }

    fn base(&self, theta: f64) -> BaseSample {
        let key = theta.to_bits();
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let (value, vector) = tridiag::top_eigenpair(&self.hermitian_at(theta));
        let point = self.matrix.quadratic_form(&vector);
        let sample = BaseSample { value, point, vector: Rc::new(vector) };
        self.solves.set(self.solves.get() + 1);
        self.cache.borrow_mut().insert(key, sample.clone());
        sample
    }

    pub fn sample(&self, theta: f64, shift: C64) -> SupportSample {
        let base = self.base(theta);
        SupportSample {
            theta,
            value: base.value - (C64::from_polar(1.0, theta) * shift).re,
            point: base.point - shift,
            vector: base.vector,
        }
    }

    fn lipschitz(&self, shift: C64) -> f64 {
        self.frobenius + shift.norm() * (self.matrix.dim() as f64).sqrt()
    }

    /// `w(A − λI)`.
    pub fn radius(&self, shift: C64, opts: &SweepOptions) -> Result<RadiusResult> {
        opts.validate()?;
        let before = self.solves();
        let out = branch_and_bound(self, shift, opts, Objective::Radius);
        let best = &out.samples[out.best];
        let certificate = if best.point.norm() == 0.0 && out.upper <= opts.tol {
            let mut e1 = vec![C64::new(0.0, 0.0); self.matrix.dim()];
            e1[0] = C64::new(1.0, 0.0);
            e1
        } else {
            best.vector.as_ref().clone()
        };
        Ok(RadiusResult {
            value: out.incumbent,
            theta_star: best.theta.rem_euclid(TAU),
            certificate,
            evaluations: self.solves() - before,
            upper_bound: out.upper.max(out.incumbent),
        })
    }

    /// `c(A − λI)`.
    pub fn crawford(&self, shift: C64, opts: &SweepOptions) -> Result<CrawfordResult> {
        opts.validate()?;
        let before = self.solves();
        let out = branch_and_bound(self, shift, opts, Objective::Crawford);
        let best = &out.samples[out.best];
        let value = out.incumbent.max(0.0);
        Ok(CrawfordResult {
            value,
            theta_star: (best.theta + PI).rem_euclid(TAU),
            attained_inside: value <= opts.tol,
            evaluations: self.solves() - before,
            upper_bound: out.upper.max(value),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Objective {
    /// Maximize the support function.
    Radius,
    /// Maximize the negated support function.
    Crawford,
}

struct SearchOutcome {
    samples: Vec<SupportSample>,
    best: usize,
    incumbent: f64,
    upper: f64,
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    bound: f64,
    left: usize,
    right: usize,
    split: Option<f64>,
}

impl PartialEq for Arc {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Arc {}
impl PartialOrd for Arc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Arc {
    // Max-heap on the bound; equal bounds pop the earlier-created arc first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.bound
            .total_cmp(&other.bound)
            .then_with(|| other.left.cmp(&self.left))
            .then_with(|| other.right.cmp(&self.right))
    }
}

/// Maps `theta` into `[lo, lo + 2π)`.
fn wrap_from(theta: f64, lo: f64) -> f64 {
    lo + (theta - lo).rem_euclid(TAU)
}

/// Upper envelope of `f` on the arc from the wedge of its two support lines.
fn wedge_bound(l: &SupportSample, r: &SupportSample, lipschitz: f64) -> (f64, Option<f64>) {
    let width = r.theta - l.theta;
    let endpoint_max = l.value.max(r.value);
    if width < MIN_WEDGE_WIDTH {
        return (endpoint_max + 0.5 * lipschitz * width, None);
    }
    // Re(e^{iθ}P) = cos θ·px − sin θ·py must equal the support values at both ends.
    let (s1, c1) = l.theta.sin_cos();
    let (s2, c2) = r.theta.sin_cos();
    let det = s1 * c2 - c1 * s2;
    let px = (s1 * r.value - s2 * l.value) / det;
    let py = (c1 * r.value - c2 * l.value) / det;
    let vertex = C64::new(px, py);
    let peak = wrap_from(-vertex.arg(), l.theta);
    if peak < r.theta {
        (vertex.norm().max(endpoint_max), Some(peak))
    } else {
        (endpoint_max, None)
    }
}

/// Lower envelope of `f` on the arc from the two boundary points, as its
/// minimum over the arc together with the minimizing angle.
fn chord_bound(l: &SupportSample, r: &SupportSample) -> (f64, f64) {
    let envelope = |theta: f64| {
        let u = C64::from_polar(1.0, theta);
        (u * l.point).re.max((u * r.point).re)
    };
    let mut candidates = vec![l.theta, r.theta];
    let diff = l.point - r.point;
    if diff.norm() > 0.0 {
        candidates.push(0.5 * PI - diff.arg());
        candidates.push(1.5 * PI - diff.arg());
    }
    for z in [l.point, r.point] {
        if z.norm() > 0.0 {
            candidates.push(PI - z.arg());
        }
    }
    let mut best = (envelope(l.theta).min(l.value), l.theta);
    let end = (envelope(r.theta).min(r.value), r.theta);
    if end.0 < best.0 {
        best = end;
    }
    for &c in &candidates[2..] {
        let t = wrap_from(c, l.theta);
        if t > l.theta && t < r.theta {
            let v = envelope(t);
            if v < best.0 {
                best = (v, t);
            }
        }
    }
    best
}

fn arc_for(
    samples: &[SupportSample],
    left: usize,
    right: usize,
    objective: Objective,
    lipschitz: f64,
) -> Arc {
    let (l, r) = (&samples[left], &samples[right]);
    match objective {
        Objective::Radius => {
            let (bound, split) = wedge_bound(l, r, lipschitz);
            Arc { bound, left, right, split }
        }
        Objective::Crawford => {
            let (low, at) = chord_bound(l, r);
            let split = (at > l.theta && at < r.theta).then_some(at);
            Arc { bound: -low, left, right, split }
        }
    }
}

fn score(s: &SupportSample, objective: Objective) -> f64 {
    match objective {
        Objective::Radius => s.point.norm().max(s.value),
        Objective::Crawford => -s.value,
    }
}

fn branch_and_bound(support: &Support<'_>, shift: C64, opts: &SweepOptions, objective: Objective) -> SearchOutcome {
    let m = opts.initial_grid;
    let lipschitz = support.lipschitz(shift);
    let mut samples: Vec<SupportSample> = (0..m)
        .map(|k| support.sample(TAU * k as f64 / m as f64, shift))
        .collect();
    // Closing sample at 2π repeats θ = 0.
    let mut closing = samples[0].clone();
    closing.theta = TAU;
    samples.push(closing);

    let mut best = 0;
    for k in 1..m {
        if score(&samples[k], objective) > score(&samples[best], objective) {
            best = k;
        }
    }
    let mut incumbent = score(&samples[best], objective);
    // c(A) is clamped at zero, so arcs only need to beat max(0, incumbent).
    let floor = |inc: f64| match objective {
        Objective::Radius => inc,
        Objective::Crawford => inc.max(0.0),
    };

    let mut heap: BinaryHeap<Arc> = (0..m).map(|k| arc_for(&samples, k, k + 1, objective, lipschitz)).collect();
    let mut evaluations = m;
    while let Some(&top) = heap.peek() {
        if top.bound <= floor(incumbent) + opts.tol || evaluations >= opts.max_evaluations {
            break;
        }
        heap.pop();
        let (lt, rt) = (samples[top.left].theta, samples[top.right].theta);
        let width = rt - lt;
        let theta = match top.split {
            Some(t) if t > lt + 0.1 * width && t < rt - 0.1 * width => t,
            _ => lt + 0.5 * width,
        };
        if !(theta > lt && theta < rt) {
            // Arc cannot be split further in floating point.
            continue;
        }
        let s = support.sample(theta, shift);
        evaluations += 1;
        let idx = samples.len();
        let sc = score(&s, objective);
        samples.push(s);
        if sc > incumbent {
            incumbent = sc;
            best = idx;
        }
        heap.push(arc_for(&samples, top.left, idx, objective, lipschitz));
        heap.push(arc_for(&samples, idx, top.right, objective, lipschitz));
    }
    let upper = heap.peek().map_or(incumbent, |a| a.bound.max(incumbent));
    SearchOutcome { samples, best, incumbent, upper }
}

/// `w(A) = max_θ λ_max(ℜ(e^{iθ}A))`.
pub fn numerical_radius(a: &ComplexMatrix, tol: f64) -> Result<RadiusResult> {
    numerical_radius_with(a, &SweepOptions::with_tol(tol))
}

pub fn numerical_radius_with(a: &ComplexMatrix, opts: &SweepOptions) -> Result<RadiusResult> {
    Support::new(a).radius(C64::new(0.0, 0.0), opts)
}

/// `c(A) = max(0, max_θ λ_min(ℜ(e^{iθ}A)))`, the distance from the origin to
/// `W(A)`.
pub fn crawford_number(a: &ComplexMatrix, tol: f64) -> Result<CrawfordResult> {
    crawford_number_with(a, &SweepOptions::with_tol(tol))
}

pub fn crawford_number_with(a: &ComplexMatrix, opts: &SweepOptions) -> Result<CrawfordResult> {
    Support::new(a).crawford(C64::new(0.0, 0.0), opts)
}

/// Boundary samples of `W(A)` at `θ_k = 2πk/n_points`.
pub fn range_boundary(a: &ComplexMatrix, n_points: usize) -> Result<Vec<RangeSample>> {
    if n_points < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 boundary points, got {n_points}")));
    }
    let support = Support::new(a);
    Ok((0..n_points)
        .map(|k| {
            let theta = TAU * k as f64 / n_points as f64;
            let s = support.sample(theta, C64::new(0.0, 0.0));
            RangeSample { theta, boundary_point: s.point, support_value: s.value }
        })
        .collect())
}

/// Writes boundary samples as CSV with columns `theta,re,im,support_value`.
pub fn write_range_csv<W: Write>(samples: &[RangeSample], mut out: W) -> std::io::Result<()> {
    writeln!(out, "theta,re,im,support_value")?;
    for s in samples {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_num(s.theta),
            fmt_num(s.boundary_point.re),
            fmt_num(s.boundary_point.im),
            fmt_num(s.support_value)
        )?;
    }
    Ok(())
}

/// Plain maximum of `λ_max(ℜ(e^{iθ}A))` over `m` uniform angles using the
/// Jacobi solver. Within `‖A‖·π/m` of `w(A)` by the Lipschitz bound.
pub fn radius_grid_oracle(a: &ComplexMatrix, m: usize) -> Result<f64> {
    if m < 8 {
        return Err(Error::InvalidArgument(format!("grid oracle needs at least 8 angles, got {m}")));
    }
    let re = a.re_part();
    let im = a.im_part();
    let mut best = f64::NEG_INFINITY;
    for k in 0..m {
        let (s, c) = (TAU * k as f64 / m as f64).sin_cos();
        let eig = hermitian_eig(&re.lincomb(c, &im, -s), DEFAULT_EIG_TOL)?;
        best = best.max(*eig.eigenvalues.last().expect("non-empty spectrum"));
    }
    Ok(best)
}
