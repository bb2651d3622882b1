//! Runs the randomized soundness sweep and prints the per-bound summary.
//!
//! ```text
//! cargo run --release --example verify_harness -- [trials] [seed]
//! ```

use std::time::Instant;

use numrad::harness::{run_verify, VerifyConfig, VerifySummary};

fn main() -> numrad::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map_or(Ok(36), |s| s.parse()).expect("trials must be an integer");
    let seed = args.next().map_or(Ok(42), |s| s.parse()).expect("seed must be an integer");
    let cfg = VerifyConfig { trials, master_seed: seed, ..VerifyConfig::default() };

    let start = Instant::now();
    let records = run_verify(&cfg)?;
    let summary = VerifySummary::from_records(&records);
    print!("{}", summary.to_text());
    println!("elapsed {:.1}s, exit code {}", start.elapsed().as_secs_f64(), summary.exit_code());

    let slowest = records.iter().max_by(|a, b| a.wall_time.total_cmp(&b.wall_time)).expect("at least one trial");
    println!(
        "slowest trial {} ({} x {}, dims {}x{}) took {:.2}s",
        slowest.trial_index, slowest.ensemble_a, slowest.ensemble_b, slowest.dim_a, slowest.dim_b, slowest.wall_time
    );
    Ok(())
}
