//! Coverage table and relay routing: who sees which target, and how
//! monitors reach a super node.
//!
//!     cargo run --release --example coverage_routing

use wsn_lifetime::rng::{substream, Stream};
use wsn_lifetime::{
    build_comm_graph, build_coverage, eligibility, place_uniform, relay_route, EnergyModel,
    NetworkConfig,
};

fn main() {
    let config = NetworkConfig::default();
    let network = place_uniform(&config, &mut substream(config.rng_seed, Stream::Placement));
    let coverage = build_coverage(&network, &config);
    let graph = build_comm_graph(&network, &config);

    println!(
        "comm graph: {} vertices, {} edges (distance < {} m)",
        graph.vertex_count(),
        graph.edge_count(),
        config.r_comm
    );
    let covered = coverage.coverers.iter().filter(|c| !c.is_empty()).count();
    println!(
        "coverage: {}/{} targets covered by at least one sensor (distance <= {} m)",
        covered,
        coverage.n_targets(),
        config.r_sense
    );
    for k in 0..coverage.n_targets().min(5) {
        println!("  target {k}: {} coverers", coverage.coverers[k].len());
    }

    let model = EnergyModel::from_config(&config);
    let eligible = eligibility(&network, model.eligibility_threshold(config.r_comm));

    // Route the first coverer of each of the first few targets.
    println!();
    for k in 0..coverage.n_targets().min(5) {
        let Some(&monitor) = coverage.coverers[k].first() else {
            continue;
        };
        match relay_route(&graph, monitor, &eligible) {
            Some(route) => println!(
                "  sensor {monitor} -> super {} in {} hop(s), {:.1} m total: {:?}",
                route.terminal_super(),
                route.hop_count(),
                route.hop_lengths.iter().sum::<f64>(),
                route.vertices
            ),
            None => println!("  sensor {monitor}: no route to any super node"),
        }
    }
}
