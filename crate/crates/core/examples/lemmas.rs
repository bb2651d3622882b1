//! Spot checks of the three operator inequalities behind the tensor
//! bounds, printing both sides.

use numrad::bounds::{mixed_schwarz_sides, power_lemma_sides, sum_norm_sides};
use numrad::generators::SplitMix64;
use numrad::linalg::vec_norm;
use numrad::{generate, Ensemble, GeneratorConfig, C64};

fn main() -> numrad::Result<()> {
    let mut rng = SplitMix64::new(17);
    let g = generate(&Ensemble::Ginibre, GeneratorConfig { seed: 2, dim: 4 })?;
    let psd = g.adjoint().matmul(&g)?.hermitian_part();
    let x: Vec<C64> = (0..4).map(|_| rng.next_complex_gaussian()).collect();
    let x: Vec<C64> = x.iter().map(|z| z / vec_norm(&x)).collect();

    for r in [1.0, 1.5, 2.0, 3.0] {
        let (lhs, rhs) = power_lemma_sides(&psd, &x, r)?;
        println!("⟨Ax,x⟩^{r} = {lhs:.6} ≤ ⟨A^{r}x,x⟩ = {rhs:.6}");
    }
    let (lhs, rhs) = mixed_schwarz_sides(&g, &x)?;
    println!("|⟨Gx,x⟩| = {lhs:.6} ≤ ⟨|G|x,x⟩^½⟨|G*|x,x⟩^½ = {rhs:.6}");

    let h = generate(&Ensemble::Ginibre, GeneratorConfig { seed: 3, dim: 4 })?;
    let psd2 = h.adjoint().matmul(&h)?.hermitian_part();
    let (lhs, rhs) = sum_norm_sides(&psd, &psd2)?;
    println!("‖A+B‖ = {lhs:.6} ≤ max(‖A‖,‖B‖) + ‖A^½B^½‖ = {rhs:.6}");
    Ok(())
}
