//! Desk-scale verification: exhaustive minimum active set vs the annealer
//! on a dozen-sensor instance.
//!
//!     cargo run --release --example oracle_gap

use wsn_lifetime::rng::{substream, Stream};
use wsn_lifetime::{
    anneal, build_comm_graph, build_coverage, eligibility, greedy_seed, min_cover_bruteforce,
    place_uniform, EnergyModel, EvalContext, NetworkConfig, OracleOutcome,
};

fn main() {
    let config = NetworkConfig {
        area_side: 200.0,
        n_sensors: 14,
        n_supernodes: 2,
        n_targets: 4,
        r_comm: 80.0,
        r_sense: 55.0,
        ..NetworkConfig::default()
    };

    for seed in 0..8u64 {
        let cfg = NetworkConfig {
            rng_seed: seed,
            ..config.clone()
        };
        let network = place_uniform(&cfg, &mut substream(seed, Stream::Placement));
        let coverage = build_coverage(&network, &cfg);
        let graph = build_comm_graph(&network, &cfg);
        let model = EnergyModel::from_config(&cfg);
        let eligible = eligibility(&network, model.eligibility_threshold(cfg.r_comm));

        let optimum = match min_cover_bruteforce(&network, &coverage, &graph, &eligible).unwrap() {
            OracleOutcome::Infeasible => {
                println!("seed {seed}: infeasible instance");
                continue;
            }
            OracleOutcome::Optimal { active_count, .. } => active_count,
        };

        let ctx =
            EvalContext::new(&network, &coverage, &graph, &eligible, &cfg.weights, &model);
        let seed_chromosome = greedy_seed(&network, &coverage, &eligible).unwrap();
        let mut rng = substream(seed, Stream::Annealing);
        let best = anneal(seed_chromosome, &cfg.sa, &ctx, &mut rng);
        let annealed = ctx
            .plan_for(&best)
            .map(|p| p.active_sensors().len().to_string())
            .unwrap_or_else(|| "infeasible".into());
        println!("seed {seed}: brute-force optimum {optimum}, annealer {annealed}");
    }
}
