//! Seeded random operator ensembles.
//!
//! Every draw is a pure function of `(ensemble, seed, dim)`. The pseudo-random
//! source is SplitMix64 (Steele, Lea & Flood), chosen because it is a
//! splittable counter-style generator that is trivial to reproduce in any
//! language:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! Uniforms are `(next >> 11) · 2⁻⁵³`. Standard complex Gaussians use
//! Box–Muller on two consecutive uniforms `u₁, u₂`:
//! `r = sqrt(−2 ln(1 − u₁))`, `z = r·(cos 2πu₂ + i sin 2πu₂)/√2`, so that
//! `E|z|² = 1`. Matrix entries are drawn in row-major order.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{inner, vec_norm, ComplexMatrix, C64};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer; a bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix64(self.state)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard complex Gaussian, `E|z|² = 1`.
    pub fn next_complex_gaussian(&mut self) -> C64 {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
        C64::new(r * c, r * s) * std::f64::consts::FRAC_1_SQRT_2
    }
}

/// Child seed for trial `trial_index` of a run seeded with `master_seed`:
/// `mix64(master_seed ^ mix64(trial_index + γ))` with `γ` the SplitMix64
/// increment. Injective in `trial_index` for a fixed master seed, since every
/// step is a bijection on `u64`.
pub fn split_stream(master_seed: u64, trial_index: u64) -> u64 {
    mix64(master_seed ^ mix64(trial_index.wrapping_add(GOLDEN_GAMMA)))
}

/// Seed and dimension for one draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub dim: usize,
}

/// Structural classes of test operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Ensemble {
    Ginibre,
    Normal,
    SelfAdjoint,
    Unitary,
    SquareZero,
    Scaled { base: Box<Ensemble>, factor: f64 },
}

impl Ensemble {
    pub fn scaled(base: Ensemble, factor: f64) -> Self {
        Ensemble::Scaled { base: Box::new(base), factor }
    }

    /// The six ensembles used by the default verification sweep.
    pub fn standard_set() -> Vec<Ensemble> {
        vec![
            Ensemble::Ginibre,
            Ensemble::Normal,
            Ensemble::SelfAdjoint,
            Ensemble::Unitary,
            Ensemble::SquareZero,
            Ensemble::scaled(Ensemble::Ginibre, 4.0),
        ]
    }

    /// Every ordered pair drawn from [`Ensemble::standard_set`].
    pub fn all_pairs() -> Vec<(Ensemble, Ensemble)> {
        let set = Self::standard_set();
        set.iter()
            .flat_map(|a| set.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    }

    fn root(&self) -> &Ensemble {
        match self {
            Ensemble::Scaled { base, .. } => base.root(),
            other => other,
        }
    }

    /// Draws are normal operators (normal, self-adjoint, unitary).
    pub fn is_normal_class(&self) -> bool {
        matches!(self.root(), Ensemble::Normal | Ensemble::SelfAdjoint | Ensemble::Unitary)
    }

    pub fn is_square_zero_class(&self) -> bool {
        matches!(self.root(), Ensemble::SquareZero)
    }

    pub fn min_dim(&self) -> usize {
        if self.is_square_zero_class() {
            2
        } else {
            1
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ensemble::Ginibre => f.write_str("GINIBRE"),
            Ensemble::Normal => f.write_str("NORMAL"),
            Ensemble::SelfAdjoint => f.write_str("SELFADJOINT"),
            Ensemble::Unitary => f.write_str("UNITARY"),
            Ensemble::SquareZero => f.write_str("SQUARE_ZERO"),
            Ensemble::Scaled { base, factor } => write!(f, "{base}*{factor}"),
        }
    }
}

impl FromStr for Ensemble {
    type Err = Error;

    /// Accepts the display names case-insensitively; `BASE*factor` denotes a
    /// scaled ensemble.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((base, factor)) = s.rsplit_once('*') {
            let factor: f64 = factor
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad scale factor in {s:?}")))?;
            if !factor.is_finite() {
                return Err(Error::Parse(format!("bad scale factor in {s:?}")));
            }
            return Ok(Ensemble::scaled(base.parse()?, factor));
        }
        match s.to_ascii_uppercase().as_str() {
            "GINIBRE" => Ok(Ensemble::Ginibre),
            "NORMAL" => Ok(Ensemble::Normal),
            "SELFADJOINT" | "SELF_ADJOINT" => Ok(Ensemble::SelfAdjoint),
            "UNITARY" => Ok(Ensemble::Unitary),
            "SQUARE_ZERO" | "SQUAREZERO" => Ok(Ensemble::SquareZero),
            _ => Err(Error::Parse(format!("unknown ensemble {s:?}"))),
        }
    }
}

impl Serialize for Ensemble {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn ginibre(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| rng.next_complex_gaussian()).collect();
    ComplexMatrix::new(dim, data).expect("finite gaussian entries")
}

/// Modified Gram–Schmidt with one reorthogonalization pass on the columns.
fn orthonormalize(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    for j in 0..n {
        for _pass in 0..2 {
            for k in 0..j {
                let proj = inner(&cols[j], &cols[k]);
                let (done, rest) = cols.split_at_mut(j);
                for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                    *x -= proj * q;
                }
            }
        }
        let norm = vec_norm(&cols[j]);
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut out = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out[(i, j)] = z;
        }
    }
    out
}

fn draw(e: &Ensemble, rng: &mut SplitMix64, dim: usize) -> Result<ComplexMatrix> {
    Ok(match e {
        Ensemble::Ginibre => ginibre(rng, dim),
        Ensemble::Unitary => orthonormalize(&ginibre(rng, dim)),
        Ensemble::Normal => {
            let u = orthonormalize(&ginibre(rng, dim));
            let spectrum: Vec<C64> = (0..dim).map(|_| rng.next_complex_gaussian()).collect();
            let ud = u.matmul(&ComplexMatrix::diag(&spectrum))?;
            ud.matmul(&u.adjoint())?
        }
        Ensemble::SelfAdjoint => ginibre(rng, dim).hermitian_part(),
        Ensemble::SquareZero => {
            if dim < 2 {
                return Err(Error::DimTooSmall { dim, min: 2 });
            }
            let rows = dim.div_ceil(2);
            let mut m = ComplexMatrix::zeros(dim);
            for i in 0..rows {
                for j in rows..dim {
                    m[(i, j)] = rng.next_complex_gaussian();
                }
            }
            m
        }
        Ensemble::Scaled { base, factor } => draw(base, rng, dim)?.scale_real(*factor),
    })
}

/// Draws one operator from `e`.
pub fn generate(e: &Ensemble, cfg: GeneratorConfig) -> Result<ComplexMatrix> {
    if cfg.dim == 0 {
        return Err(Error::DimTooSmall { dim: 0, min: 1 });
    }
    let mut rng = SplitMix64::new(cfg.seed);
    draw(e, &mut rng, cfg.dim)
}
