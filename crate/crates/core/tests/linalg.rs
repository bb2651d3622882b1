mod common;

use common::*;
use numrad::generators::SplitMix64;
use numrad::linalg::{
    abs_op, hermitian_eig, inner, kron, kron_with_cap, operator_norm, vec_norm, ComplexMatrix, DEFAULT_EIG_TOL,
};
use numrad::{Error, C64};
use proptest::prelude::*;

#[test]
fn kron_examples() {
    let b = ginibre(7, 2);
    let ib = kron(&ComplexMatrix::identity(2), &b).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expected = if i / 2 == j / 2 { b[(i % 2, j % 2)] } else { c(0.0, 0.0) };
            assert_eq!(ib[(i, j)], expected);
        }
    }
    let nn = kron(&nilpotent(), &nilpotent()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(nn[(i, j)], if (i, j) == (0, 3) { c(1.0, 0.0) } else { c(0.0, 0.0) });
        }
    }
}

#[test]
fn kron_matches_brute_force() {
    for seed in 0..10 {
        let (a, b) = (ginibre(seed, 3), ginibre(seed + 100, 3));
        let t = kron(&a, &b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_eq!(t[(3 * i + k, 3 * j + l)], a[(i, j)] * b[(k, l)]);
                    }
                }
            }
        }
    }
}

#[test]
fn kron_size_cap() {
    let a = ComplexMatrix::zeros(8);
    assert_eq!(kron_with_cap(&a, &a, 63).unwrap_err(), Error::SizeCap { dim: 64, cap: 63 });
    assert_eq!(kron_with_cap(&a, &a, 64).unwrap().dim(), 64);
}

#[test]
fn kron_norm_is_multiplicative() {
    for seed in 0..30 {
        let (a, b) = (ginibre(seed, 2 + seed as usize % 4), ginibre(seed + 500, 2 + seed as usize % 3));
        let (na, nb) = (operator_norm(&a).unwrap(), operator_norm(&b).unwrap());
        let nt = operator_norm(&kron(&a, &b).unwrap()).unwrap();
        assert!((nt - na * nb).abs() <= 1e-8 * (1.0 + na * nb));
    }
}

#[test]
fn adjoint_examples() {
    let n = nilpotent();
    assert_eq!(n.adjoint(), ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[1.0, 0.0]]).unwrap());
    assert_eq!(ComplexMatrix::scalar(c(0.0, 1.0)).adjoint(), ComplexMatrix::scalar(c(0.0, -1.0)));
    let mut rng = SplitMix64::new(3);
    for seed in 0..20 {
        let a = ginibre(seed, 4);
        assert_eq!(a.adjoint().adjoint(), a);
        let (x, y) = (unit_vector(&mut rng, 4), unit_vector(&mut rng, 4));
        let lhs = inner(&a.mul_vec(&x), &y);
        let rhs = inner(&x, &a.adjoint().mul_vec(&y));
        assert!((lhs - rhs).norm() < 1e-12);
    }
}

#[test]
fn eig_examples() {
    let e = hermitian_eig(&ComplexMatrix::diag_real(&[2.0, 1.0]), DEFAULT_EIG_TOL).unwrap();
    assert_eq!(e.eigenvalues, vec![1.0, 2.0]);
    let e = hermitian_eig(&ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap(), DEFAULT_EIG_TOL).unwrap();
    assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
    let h = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, -1.0), c(1.0, 0.0)]]).unwrap();
    let e = hermitian_eig(&h, DEFAULT_EIG_TOL).unwrap();
    assert!(e.eigenvalues[0].abs() < 1e-14 && (e.eigenvalues[1] - 2.0).abs() < 1e-14);
}

#[test]
fn eig_rejects_non_hermitian() {
    assert!(matches!(hermitian_eig(&nilpotent(), DEFAULT_EIG_TOL), Err(Error::NotHermitian { .. })));
    assert!(matches!(hermitian_eig(&ComplexMatrix::identity(2), 0.0), Err(Error::InvalidTol(_))));
}

#[test]
fn eig_residual_and_unitarity() {
    for seed in 0..25 {
        let n = 1 + seed as usize % 12;
        let h = ginibre(seed, n).hermitian_part();
        let e = hermitian_eig(&h, DEFAULT_EIG_TOL).unwrap();
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let scale = h.frobenius_norm();
        for k in 0..n {
            let v = e.eigenvector(k);
            let hv = h.mul_vec(&v);
            let r: Vec<C64> = hv.iter().zip(&v).map(|(a, b)| a - b * e.eigenvalues[k]).collect();
            assert!(vec_norm(&r) <= 10.0 * DEFAULT_EIG_TOL * scale.max(1.0), "n={n} k={k}");
        }
        let v = &e.eigenvectors;
        let gram = v.adjoint().matmul(v).unwrap();
        assert!(gram.sub(&ComplexMatrix::identity(n)).unwrap().frobenius_norm() < 1e-12);
    }
}

#[test]
fn operator_norm_examples() {
    assert_eq!(operator_norm(&ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.0, 0.0]]).unwrap()).unwrap(), 2.0);
    for seed in 0..10 {
        let u = draw(&numrad::Ensemble::Unitary, seed, 5);
        assert!((operator_norm(&u).unwrap() - 1.0).abs() < 1e-10);
    }
    assert_eq!(operator_norm(&ComplexMatrix::zeros(3)).unwrap(), 0.0);
}

/// Power iteration on A*A, an independent tight oracle.
fn power_norm(a: &ComplexMatrix) -> f64 {
    let gram = a.adjoint().matmul(a).unwrap();
    let mut rng = SplitMix64::new(99);
    let mut x = unit_vector(&mut rng, a.dim());
    let mut lam = 0.0;
    for _ in 0..5000 {
        let y = gram.mul_vec(&x);
        lam = vec_norm(&y);
        x = y.into_iter().map(|z| z / lam).collect();
    }
    lam.sqrt()
}

#[test]
fn operator_norm_against_sampling() {
    // Random unit vectors approach the supremum from below only slowly
    // (about 2e-2 below after 1e5 samples on 4×4), so the sampled maximum
    // must never exceed the norm and stays within 5e-2 of it.
    let mut rng = SplitMix64::new(2024);
    for seed in 0..3 {
        let a = ginibre(seed, 4);
        let norm = operator_norm(&a).unwrap();
        let sampled = (0..100_000).map(|_| vec_norm(&a.mul_vec(&unit_vector(&mut rng, 4)))).fold(0.0, f64::max);
        assert!(sampled <= norm + 1e-10, "sampled {sampled} above norm {norm}");
        assert!(sampled >= norm - 5e-2 * norm, "sampled {sampled} far below {norm}");
        assert!((power_norm(&a) - norm).abs() < 1e-8 * norm);
    }
}

#[test]
fn submultiplicative() {
    for seed in 0..20 {
        let (a, b) = (ginibre(seed, 4), ginibre(seed + 77, 4));
        let ab = operator_norm(&a.matmul(&b).unwrap()).unwrap();
        assert!(ab <= operator_norm(&a).unwrap() * operator_norm(&b).unwrap() + 1e-10);
    }
}

#[test]
fn cartesian_parts() {
    let n = nilpotent();
    assert_eq!(n.re_part(), ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.5, 0.0]]).unwrap());
    let im = n.im_part();
    assert_eq!(im[(0, 1)], c(0.0, -0.5));
    assert_eq!(im[(1, 0)], c(0.0, 0.5));
    assert_eq!(im.hermitian_defect(), 0.0);
    let i = c(0.0, 1.0);
    // exact on dyadic entries
    assert_eq!(n.re_part().add(&n.im_part().scale(i)).unwrap(), n);
    let h = ginibre(5, 4).hermitian_part();
    assert_eq!(h.im_part().frobenius_norm(), 0.0);
    for seed in 0..20 {
        let a = ginibre(seed, 5);
        let (re, im) = (a.re_part(), a.im_part());
        assert_eq!(re.hermitian_defect(), 0.0);
        assert_eq!(im.hermitian_defect(), 0.0);
        let back = re.add(&im.scale(i)).unwrap();
        assert!(back.sub(&a).unwrap().frobenius_norm() <= 4.0 * f64::EPSILON * a.frobenius_norm());
    }
}

#[test]
fn abs_examples() {
    let n = nilpotent();
    assert!(abs_op(&n).unwrap().sub(&ComplexMatrix::diag_real(&[0.0, 1.0])).unwrap().frobenius_norm() < 1e-14);
    assert!(abs_op(&n.adjoint()).unwrap().sub(&ComplexMatrix::diag_real(&[1.0, 0.0])).unwrap().frobenius_norm() < 1e-14);
    for seed in 0..10 {
        let p = random_psd(seed, 4);
        assert!(abs_op(&p).unwrap().sub(&p).unwrap().frobenius_norm() < 1e-10 * p.frobenius_norm());
        let a = ginibre(seed + 40, 5);
        let abs = abs_op(&a).unwrap();
        let gram = a.adjoint().matmul(&a).unwrap();
        assert!(abs.matmul(&abs).unwrap().sub(&gram).unwrap().frobenius_norm() < 1e-10 * gram.frobenius_norm());
        let lo = hermitian_eig(&abs, DEFAULT_EIG_TOL).unwrap().eigenvalues[0];
        assert!(lo >= -1e-10 * operator_norm(&a).unwrap());
    }
}

#[test]
fn ring_operations() {
    let a = ginibre(1, 3);
    assert_eq!(a.matmul(&ComplexMatrix::identity(3)).unwrap(), a);
    assert_eq!(ComplexMatrix::identity(2).scale(c(2.0, 0.0)), ComplexMatrix::diag_real(&[2.0, 2.0]));
    let (b, d) = (ginibre(2, 3), ginibre(3, 3));
    let left = a.matmul(&b).unwrap().matmul(&d).unwrap();
    let right = a.matmul(&b.matmul(&d).unwrap()).unwrap();
    assert!(left.sub(&right).unwrap().frobenius_norm() < 1e-12 * left.frobenius_norm().max(1.0));
    assert!(matches!(a.matmul(&ComplexMatrix::identity(2)), Err(Error::DimensionMismatch(_))));
    assert!(a.add(&ComplexMatrix::identity(4)).is_err());
}

#[test]
fn structure_predicates() {
    assert!(ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 1.0)]).is_normal(1e-12));
    let n = nilpotent();
    assert!(n.is_square_zero(1e-12) && !n.is_normal(1e-12));
    let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
    assert!(!j.is_normal(1e-12) && !j.is_square_zero(1e-12));
    let z = ComplexMatrix::zeros(3);
    assert!(z.is_normal(1e-12) && z.is_square_zero(1e-12));
}

#[test]
fn matrix_json() {
    let a = ginibre(11, 3);
    assert_eq!(ComplexMatrix::from_json_str(&a.to_json_string()).unwrap(), a);
    for bad in [
        r#"{"dim":2,"re":[[0,1,2],[0,0,0]],"im":[[0,0],[0,0]]}"#,
        r#"{"dim":3,"re":[[0,1],[0,0]],"im":[[0,0],[0,0]]}"#,
        r#"{"dim":1,"re":[[1]],"im":[[null]]}"#,
    ] {
        assert!(matches!(ComplexMatrix::from_json_str(bad), Err(Error::Parse(_))), "{bad}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eig_reconstructs(seed in any::<u64>(), n in 1usize..8) {
        let h = ginibre(seed, n).hermitian_part();
        let e = hermitian_eig(&h, DEFAULT_EIG_TOL).unwrap();
        let back = e.reconstruct(|x| x);
        prop_assert!(back.sub(&h).unwrap().frobenius_norm() <= 1e-11 * h.frobenius_norm().max(1.0));
    }

    #[test]
    fn norm_bounds_frobenius(seed in any::<u64>(), n in 1usize..7) {
        let a = ginibre(seed, n);
        let norm = operator_norm(&a).unwrap();
        let f = a.frobenius_norm();
        prop_assert!(norm <= f * (1.0 + 1e-12));
        prop_assert!(norm * (n as f64).sqrt() >= f * (1.0 - 1e-12));
    }
}
