//! The averaging protocol: ten runs with consecutive seeds, aggregated.
//! Takes about half a minute for the default scenario.
//!
//!     cargo run --release --example batch_average

use wsn_lifetime::{run_batch, NetworkConfig};

fn main() {
    let config = NetworkConfig::default();
    let batch = run_batch(&config, 10, config.rng_seed);

    println!("seeds: {:?}", batch.seeds);
    for run in &batch.runs {
        println!(
            "  seed {:>2}: lifetime {:>5} ({})",
            run.seed,
            run.lifetime,
            run.termination.label()
        );
    }
    println!(
        "lifetime over {} runs: mean {:.1}, sd {:.1}, min {}, max {}",
        batch.runs.len(),
        batch.stats.mean,
        batch.stats.sd,
        batch.stats.min,
        batch.stats.max
    );
    if let (Some(first), Some(last)) = (batch.per_round_mean.first(), batch.per_round_mean.last()) {
        println!(
            "mean active sensors: {:.1} in round {} -> {:.1} in round {} (truncated to shortest run)",
            first.active_total, first.round, last.active_total, last.round
        );
    }
}
