#![allow(dead_code)]

use numrad::generators::SplitMix64;
use numrad::linalg::vec_norm;
use numrad::{generate, ComplexMatrix, Ensemble, GeneratorConfig, C64};

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn nilpotent() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap()
}

pub fn diag01() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[0.0, 1.0])
}

pub fn draw(e: &Ensemble, seed: u64, dim: usize) -> ComplexMatrix {
    generate(e, GeneratorConfig { seed, dim }).unwrap()
}

pub fn ginibre(seed: u64, dim: usize) -> ComplexMatrix {
    draw(&Ensemble::Ginibre, seed, dim)
}

pub fn unit_vector(rng: &mut SplitMix64, n: usize) -> Vec<C64> {
    let x: Vec<C64> = (0..n).map(|_| rng.next_complex_gaussian()).collect();
    let norm = vec_norm(&x);
    x.into_iter().map(|z| z / norm).collect()
}

/// `G*G` for a Ginibre draw, optionally rank-deficient.
pub fn random_psd(seed: u64, dim: usize) -> ComplexMatrix {
    let g = ginibre(seed, dim);
    g.adjoint().matmul(&g).unwrap().hermitian_part()
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}
