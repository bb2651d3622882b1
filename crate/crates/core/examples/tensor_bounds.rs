//! Every tensor-product bound on one pair, printed as a chain.
//!
//! ```text
//! cargo run --example tensor_bounds -- [ensemble_a] [ensemble_b] [dim] [seed]
//! ```

use numrad::{eval_all, generate, Ensemble, GeneratorConfig, OperatorPair};

fn main() -> numrad::Result<()> {
    let mut args = std::env::args().skip(1);
    let ea: Ensemble = args.next().unwrap_or_else(|| "SQUARE_ZERO".into()).parse()?;
    let eb: Ensemble = args.next().unwrap_or_else(|| "GINIBRE".into()).parse()?;
    let dim: usize = args.next().map_or(3, |s| s.parse().expect("dim must be an integer"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed must be an integer"));

    let a = generate(&ea, GeneratorConfig { seed, dim })?;
    let b = generate(&eb, GeneratorConfig { seed: seed + 1, dim })?;
    let pair = OperatorPair::new(a, b)?;
    let tol = pair.default_tol()?;
    let set = eval_all(&pair, tol)?;

    println!("{ea} ⊗ {eb}, dim {dim}, tol {tol:.2e}");
    for r in &set.reports {
        let side = |terms: &[numrad::bounds::Term]| terms.iter().map(|t| format!("{}={:.6}", t.name, t.value)).collect::<Vec<_>>().join(" ≤ ");
        println!(
            "{:<20} {} ≤ [{:.6}] ≤ {}   slack {:.2e} {}",
            r.id.as_str(),
            side(&r.lower_terms),
            r.center,
            side(&r.upper_terms),
            r.min_slack,
            if r.holds { "ok" } else { "VIOLATED" }
        );
    }
    let names = |ids: &[numrad::BoundId]| ids.iter().map(|i| i.as_str()).collect::<Vec<_>>().join(", ");
    println!("tightest lower: {}", names(&set.tightest_lower));
    println!("tightest upper: {}", names(&set.tightest_upper));
    Ok(())
}
