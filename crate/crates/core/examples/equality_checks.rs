//! Rotation characterizations of the two tensor equality cases, checked on
//! a 360-angle grid for a pair that attains them and one that does not.

use numrad::bounds::{check_equality_half, check_equality_quarter, EqualityReport};
use numrad::{generate, ComplexMatrix, Ensemble, GeneratorConfig, OperatorPair};

fn show(label: &str, r: &EqualityReport) {
    println!(
        "{label:<28} {:?}: target {:.6}, deviation +{:.2e} / -{:.2e}, consistent {} (continuum tol {:.2e})",
        r.kind, r.target, r.max_deviation_plus, r.max_deviation_minus, r.consistent, r.continuum_tol
    );
}

fn main() -> numrad::Result<()> {
    let sz = generate(&Ensemble::SquareZero, GeneratorConfig { seed: 5, dim: 4 })?;
    let normal = generate(&Ensemble::Normal, GeneratorConfig { seed: 6, dim: 3 })?;
    let d = ComplexMatrix::diag_real(&[0.0, 1.0]);
    let pairs = [
        ("square-zero ⊗ normal", OperatorPair::new(sz.clone(), normal)?),
        ("square-zero ⊗ square-zero", OperatorPair::new(sz.clone(), sz)?),
        ("diag(0,1) ⊗ diag(0,1)", OperatorPair::new(d.clone(), d)?),
    ];
    for (label, p) in &pairs {
        let tol = p.default_tol()?;
        show(label, &check_equality_half(p, 360, tol)?);
        show(label, &check_equality_quarter(p, 360, tol)?);
    }
    Ok(())
}
