//! Numerical radius of a few classic 2×2 matrices, with the certificate
//! vector and a check against the brute-force θ grid.
//!
//! ```text
//! cargo run --example numerical_radius
//! ```

use numrad::linalg::operator_norm;
use numrad::numrange::radius_grid_oracle;
use numrad::{numerical_radius, ComplexMatrix, C64};

fn main() -> numrad::Result<()> {
    let cases = [
        ("nilpotent [[0,1],[0,0]]", ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]])?),
        ("diag(1, i)", ComplexMatrix::diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0)])),
        ("Jordan block [[1,1],[0,1]]", ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]])?),
    ];
    for (name, a) in cases {
        let r = numerical_radius(&a, 1e-10)?;
        let attained = a.quadratic_form(&r.certificate).norm();
        println!("{name}");
        println!("  w(A)       = {:.12}", r.value);
        println!("  ‖A‖        = {:.12}", operator_norm(&a)?);
        println!("  θ*         = {:.6}", r.theta_star);
        println!("  |⟨Ax,x⟩|   = {attained:.12} at the certificate");
        println!("  grid(10⁴)  = {:.12}", radius_grid_oracle(&a, 10_000)?);
        println!("  eigensolves: {}", r.evaluations);
    }
    Ok(())
}
