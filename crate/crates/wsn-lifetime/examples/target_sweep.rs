//! Lifetime as a function of target count: more targets need more monitors
//! per round, draining the network sooner. Uses a reduced scenario so the
//! whole sweep finishes in about a minute; the CLI `sweep` subcommand runs
//! the full-size version.
//!
//!     cargo run --release --example target_sweep

use wsn_lifetime::{run_batch, NetworkConfig};

fn main() {
    let base = NetworkConfig {
        area_side: 300.0,
        n_sensors: 120,
        n_supernodes: 10,
        ..NetworkConfig::default()
    };
    let runs = 3;

    println!("{:>8} {:>14} {:>8} {:>6} {:>6}", "targets", "mean_lifetime", "sd", "min", "max");
    for (index, n_targets) in (5..=40).step_by(5).enumerate() {
        let config = NetworkConfig {
            n_targets,
            ..base.clone()
        };
        let batch = run_batch(&config, runs, base.rng_seed ^ index as u64);
        println!(
            "{:>8} {:>14.1} {:>8.1} {:>6} {:>6}",
            n_targets, batch.stats.mean, batch.stats.sd, batch.stats.min, batch.stats.max
        );
    }
}
