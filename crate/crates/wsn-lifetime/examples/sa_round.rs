//! One round of annealing-based selection: greedy seed, annealed result,
//! and the relay plan that would be charged.
//!
//!     cargo run --release --example sa_round

use wsn_lifetime::rng::{substream, Stream};
use wsn_lifetime::{
    anneal, build_comm_graph, build_coverage, eligibility, greedy_seed, objective, place_uniform,
    round_costs, EnergyModel, EvalContext, NetworkConfig,
};

fn main() {
    let config = NetworkConfig::default();
    let network = place_uniform(&config, &mut substream(config.rng_seed, Stream::Placement));
    let coverage = build_coverage(&network, &config);
    let graph = build_comm_graph(&network, &config);
    let model = EnergyModel::from_config(&config);
    let eligible = eligibility(&network, model.eligibility_threshold(config.r_comm));

    let ctx = EvalContext::new(&network, &coverage, &graph, &eligible, &config.weights, &model);
    let seed = greedy_seed(&network, &coverage, &eligible).expect("scenario is coverable");
    println!(
        "greedy seed: {} monitors, score {:.4}",
        seed.ones(),
        objective(&seed, &ctx)
    );

    let mut rng = substream(config.rng_seed, Stream::Annealing);
    let best = anneal(seed, &config.sa, &ctx, &mut rng);
    println!(
        "annealed:    {} monitors, score {:.4}",
        best.ones(),
        objective(&best, &ctx)
    );

    let plan = ctx.plan_for(&best).expect("annealed set is routable");
    let costs = round_costs(&plan, &model);
    let monitors = plan.monitors().len();
    let active = plan.active_sensors().len();
    println!(
        "plan: {} monitors + {} relays = {} active sensors, round energy {:.4e} J",
        monitors,
        active - monitors,
        active,
        costs.total_j()
    );
    for route in plan.routes.iter().take(5) {
        println!(
            "  monitor {:>3} -> super {:>2} ({} hops)",
            route.monitor,
            route.terminal_super(),
            route.hop_count()
        );
    }
}
