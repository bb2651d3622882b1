//! d(A) = inf_λ w(A − λI) and the Crawford-gap function h(λ) from the
//! last tensor bound, evaluated on a small grid.

use numrad::linalg::kron;
use numrad::scalar_distance::distance_grid_oracle;
use numrad::{crawford_gap_rhs, distance_to_scalars, generate, ComplexMatrix, Ensemble, GeneratorConfig};

fn main() -> numrad::Result<()> {
    let n = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])?;
    let d = ComplexMatrix::diag_real(&[0.0, 1.0]);
    let g = generate(&Ensemble::Ginibre, GeneratorConfig { seed: 3, dim: 3 })?;
    for (name, a) in [("identity", ComplexMatrix::identity(3)), ("diag(0,1)", d.clone()), ("nilpotent", n.clone()), ("ginibre 3x3", g.clone())] {
        let r = distance_to_scalars(&a, 1e-9)?;
        println!(
            "{name:>12}: d = {:.10} at λ = {:.6}{:+.6}i  ({} radius solves, disk lower bound {:.10})",
            r.value, r.lambda_star.re, r.lambda_star.im, r.iterations, r.lower_bound
        );
    }
    let (oracle, at) = distance_grid_oracle(&g, 201, 4, 1024)?;
    println!("grid oracle for the ginibre draw: {oracle:.10} at {:.6}{:+.6}i", at.re, at.im);

    for (name, t) in [("N⊗N", kron(&n, &n)?), ("D⊗D", kron(&d, &d)?)] {
        let r = crawford_gap_rhs(&t, 9, 1e-9)?;
        println!(
            "{name}: min h = {:.10} at λ = {:.4}{:+.4}i over {} shifts",
            r.best_value,
            r.lambda_star.re,
            r.lambda_star.im,
            r.grid_values.len()
        );
    }
    Ok(())
}
