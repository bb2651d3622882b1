mod common;

use std::collections::HashSet;

use common::*;
use numrad::generators::SplitMix64;
use numrad::linalg::{kron, operator_norm};
use numrad::numrange::DEFAULT_TOL;
use numrad::{generate, numerical_radius, split_stream, ComplexMatrix, Ensemble, Error, GeneratorConfig};

#[test]
fn square_zero_is_exact() {
    for seed in 0..20 {
        for dim in 2..8 {
            let a = draw(&Ensemble::SquareZero, seed, dim);
            assert_eq!(a.matmul(&a).unwrap(), ComplexMatrix::zeros(dim));
        }
    }
    assert!(matches!(generate(&Ensemble::SquareZero, GeneratorConfig { seed: 0, dim: 1 }), Err(Error::DimTooSmall { .. })));
}

#[test]
fn structural_classes() {
    for seed in 0..20 {
        let n = draw(&Ensemble::Normal, seed, 5);
        let comm = n.adjoint().matmul(&n).unwrap().sub(&n.matmul(&n.adjoint()).unwrap()).unwrap();
        assert!(comm.frobenius_norm() <= 1e-10 * n.frobenius_norm().powi(2));
        let u = draw(&Ensemble::Unitary, seed, 5);
        assert!(u.adjoint().matmul(&u).unwrap().sub(&ComplexMatrix::identity(5)).unwrap().frobenius_norm() <= 1e-10);
        let h = draw(&Ensemble::SelfAdjoint, seed, 5);
        assert_eq!(h.adjoint(), h);
        let s = draw(&Ensemble::scaled(Ensemble::Ginibre, 4.0), seed, 3);
        assert_eq!(s, ginibre(seed, 3).scale_real(4.0));
    }
}

#[test]
fn deterministic_draws() {
    for e in Ensemble::standard_set() {
        let a = draw(&e, 1234, 4);
        let b = draw(&e, 1234, 4);
        assert!(a.as_slice().iter().zip(b.as_slice()).all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits()));
        assert_ne!(draw(&e, 1235, 4), a, "{e}");
    }
}

#[test]
fn ensemble_names_round_trip() {
    for e in Ensemble::standard_set() {
        assert_eq!(e.to_string().parse::<Ensemble>().unwrap(), e);
    }
    assert!("WIGNER".parse::<Ensemble>().is_err());
}

#[test]
fn split_stream_is_stable() {
    assert_eq!(split_stream(42, 7), split_stream(42, 7));
    assert_ne!(split_stream(42, 7), split_stream(42, 8));
}

#[test]
fn split_stream_collision_scan() {
    let mut rng = SplitMix64::new(2718);
    let mut children = HashSet::with_capacity(2_000_000);
    for _ in 0..1_000_000 {
        let s = rng.next_u64();
        let (c0, c1) = (split_stream(s, 0), split_stream(s, 1));
        assert_ne!(c0, c1, "master {s}");
        children.insert(c0);
        children.insert(c1);
    }
    // birthday bound for 2e6 draws from 2^64 is about 1e-7
    assert_eq!(children.len(), 2_000_000);
}

#[test]
fn tensor_equality_classes() {
    for seed in 0..15 {
        let dim = 2 + seed as usize % 4;
        let sz = draw(&Ensemble::SquareZero, seed, dim);
        let nb = draw(&Ensemble::Normal, seed + 100, 2 + seed as usize % 3);
        let s = operator_norm(&sz).unwrap() * operator_norm(&nb).unwrap();
        let w = numerical_radius(&kron(&sz, &nb).unwrap(), DEFAULT_TOL).unwrap().value;
        assert!((w - s / 2.0).abs() <= 1e-6 * s);

        let g = ginibre(seed + 200, 3);
        let (wa, wg) = (numerical_radius(&nb, DEFAULT_TOL).unwrap().value, numerical_radius(&g, DEFAULT_TOL).unwrap().value);
        let w = numerical_radius(&kron(&nb, &g).unwrap(), DEFAULT_TOL).unwrap().value;
        assert!(rel_close(w, wa * wg, 1e-6));

        let sz2 = draw(&Ensemble::SquareZero, seed + 300, 3);
        let (w1, w2) = (numerical_radius(&sz, DEFAULT_TOL).unwrap().value, numerical_radius(&sz2, DEFAULT_TOL).unwrap().value);
        let w = numerical_radius(&kron(&sz, &sz2).unwrap(), DEFAULT_TOL).unwrap().value;
        assert!(rel_close(w, 2.0 * w1 * w2, 1e-6));
    }
}
