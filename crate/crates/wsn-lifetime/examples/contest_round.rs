//! One round of the distributed waiting-time contest.
//!
//!     cargo run --release --example contest_round

use wsn_lifetime::rng::{substream, Stream};
use wsn_lifetime::{
    build_coverage, contest_select, eligibility, place_uniform, EnergyModel, NetworkConfig,
};

fn main() {
    let config = NetworkConfig::default();
    let network = place_uniform(&config, &mut substream(config.rng_seed, Stream::Placement));
    let coverage = build_coverage(&network, &config);
    let model = EnergyModel::from_config(&config);
    let eligible = eligibility(&network, model.eligibility_threshold(config.r_comm));

    match contest_select(&network, &coverage, &eligible, config.contest_w) {
        Ok(chromosome) => {
            let monitors: Vec<usize> = chromosome.selected().collect();
            println!(
                "contest picked {} monitors out of {} sensors",
                monitors.len(),
                config.n_sensors
            );
            for &n in monitors.iter().take(10) {
                println!(
                    "  sensor {n:>3}: sees {} target(s), energy {:.3} J",
                    coverage.m[n], network.sensors[n].e_remaining
                );
            }
            if monitors.len() > 10 {
                println!("  ... and {} more", monitors.len() - 10);
            }
        }
        Err(uncoverable) => println!("contest failed: {uncoverable}"),
    }
}
