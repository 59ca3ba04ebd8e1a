//! A complete simulation: rounds run until coverage or connectivity fails.
//! Takes a few seconds for the default 300-sensor scenario.
//!
//!     cargo run --release --example lifetime_run

use wsn_lifetime::{run_simulation, NetworkConfig};

fn main() {
    let config = NetworkConfig::default();
    let report = run_simulation(&config);

    println!(
        "lifetime: {} rounds (ended by {})",
        report.lifetime,
        report.termination.label()
    );

    let picks: Vec<usize> = [0usize]
        .into_iter()
        .chain((1..=4).map(|q| report.lifetime as usize * q / 4))
        .collect();
    println!(
        "{:>7} {:>9} {:>7} {:>7} {:>14} {:>16}",
        "round", "monitors", "relays", "active", "round_energy_J", "total_remaining_J"
    );
    for &i in &picks {
        let Some(r) = report.rounds.get(i.saturating_sub(1)) else {
            continue;
        };
        println!(
            "{:>7} {:>9} {:>7} {:>7} {:>14.6e} {:>16.6}",
            r.round, r.monitors, r.relays, r.active_total, r.round_energy_j, r.total_remaining_j
        );
    }
}
