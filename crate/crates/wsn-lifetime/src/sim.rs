//! The round loop: eligibility, selection, routing, charging, and lifetime
//! counting, plus multi-run batches.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::contest::contest_select;
use crate::coverage::{
    build_comm_graph_masked, build_coverage, CoverageTable, RelayPlan,
};
use crate::energy::{apply_round, eligibility, round_costs, EnergyModel, RoundCosts};
use crate::model::{place_uniform, Network, NetworkConfig, SeedMode, SelectionMode};
use crate::rng::{substream, Stream};
use crate::sa::{anneal, greedy_seed, objective, random_seed, Chromosome, EvalContext};

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationReason {
    /// Some target had no eligible coverer, or selection left one uncovered.
    NoCoverage,
    /// A selected monitor could not reach any super node.
    NoRoute,
}

impl TerminationReason {
    pub fn label(&self) -> &'static str {
        match self {
            TerminationReason::NoCoverage => "no_coverage",
            TerminationReason::NoRoute => "no_route",
        }
    }
}

/// Everything that happened in one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    /// 1-based round number.
    pub round: u32,
    pub feasible: bool,
    /// Why the round failed; `None` for counted rounds.
    pub failure: Option<TerminationReason>,
    /// Selected monitors (bits), when selection succeeded.
    pub chromosome: Option<Chromosome>,
    /// Routes charged this round, when the round was feasible.
    pub plan: Option<RelayPlan>,
    /// Charges applied this round, when the round was feasible.
    pub costs: Option<RoundCosts>,
    pub monitors: u32,
    /// Distinct forwarding sensors that are not monitors themselves.
    pub relays: u32,
    /// Monitors plus relays.
    pub active_total: u32,
    /// Total energy charged this round, joules.
    pub round_energy_j: f64,
    /// Network-wide remaining energy after the round, joules.
    pub total_remaining_j: f64,
}

/// A finished run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    /// Number of feasible rounds (the last, infeasible round not counted).
    pub lifetime: u32,
    pub termination: TerminationReason,
    /// All rounds, including the final infeasible one.
    pub rounds: Vec<RoundOutcome>,
    /// The fully resolved configuration the run used.
    pub config: NetworkConfig,
    /// The seed the run used (echoed from the config).
    pub seed: u64,
}

fn infeasible_outcome(
    round: u32,
    reason: TerminationReason,
    network: &Network,
    chromosome: Option<Chromosome>,
) -> RoundOutcome {
    RoundOutcome {
        round,
        feasible: false,
        failure: Some(reason),
        chromosome,
        plan: None,
        costs: None,
        monitors: 0,
        relays: 0,
        active_total: 0,
        round_energy_j: 0.0,
        total_remaining_j: network.total_remaining(),
    }
}

/// Every target must keep at least one eligible coverer, else the round
/// (and the network's lifetime) is over before selection starts.
fn first_uncoverable_target(coverage: &CoverageTable, eligible: &[bool]) -> Option<usize> {
    coverage
        .coverers
        .iter()
        .position(|coverers| !coverers.iter().any(|&n| eligible[n]))
}

/// Plays one round: recompute eligibility, coverage and the communication
/// graph, select the monitor set, route it, and charge the plan's energy.
///
/// A plan is only charged when every charge is payable. If a node would be
/// overdrawn (a relay forwarding many packets, or a nearly-drained super
/// node), it is withdrawn from this round's eligible set and selection
/// reruns; the loop always terminates because each retry shrinks the pool.
/// When selection or routing fails the outcome is infeasible and nothing
/// is charged.
pub fn run_round(
    network: &mut Network,
    config: &NetworkConfig,
    rng: &mut ChaCha8Rng,
    round: u32,
) -> RoundOutcome {
    let model = EnergyModel::from_config(config);
    let threshold = model.eligibility_threshold(config.r_comm);
    let coverage = build_coverage(network, config);
    let mut eligible = eligibility(network, threshold);
    let mut super_ok: Vec<bool> = network
        .supernodes
        .iter()
        .map(|s| s.e_remaining >= model.rx_energy(model.packet_bits))
        .collect();

    loop {
        if let Some(_target) = first_uncoverable_target(&coverage, &eligible) {
            return infeasible_outcome(round, TerminationReason::NoCoverage, network, None);
        }
        let graph = build_comm_graph_masked(network, config, &super_ok);

        let (chromosome, plan) = match config.selection_mode {
            SelectionMode::Sa => {
                let ctx = EvalContext::new(
                    network,
                    &coverage,
                    &graph,
                    &eligible,
                    &config.weights,
                    &model,
                );
                let seed = match config.seed_mode {
                    SeedMode::Greedy => greedy_seed(network, &coverage, &eligible)
                        .expect("coverability was just checked"),
                    SeedMode::Random => random_seed(rng, network.sensors.len(), &eligible),
                };
                let best = anneal(seed, &config.sa, &ctx, rng);
                // Penalty dominance keeps feasible sets above infeasible
                // ones, so a best below the penalty line means none exists.
                if objective(&best, &ctx) <= -config.weights.penalty_infeasible {
                    let reason = if best.selected().any(|n| ctx.route(n).is_none()) {
                        TerminationReason::NoRoute
                    } else {
                        TerminationReason::NoCoverage
                    };
                    return infeasible_outcome(round, reason, network, Some(best));
                }
                let plan = ctx
                    .plan_for(&best)
                    .expect("feasible chromosomes have routes for every monitor");
                (best, plan)
            }
            SelectionMode::Contest => {
                let chromosome = match contest_select(network, &coverage, &eligible, config.contest_w)
                {
                    Ok(c) => c,
                    Err(_uncoverable) => {
                        return infeasible_outcome(
                            round,
                            TerminationReason::NoCoverage,
                            network,
                            None,
                        );
                    }
                };
                let mut routes = Vec::with_capacity(chromosome.ones());
                let mut unroutable = false;
                for monitor in chromosome.selected() {
                    match crate::coverage::relay_route(&graph, monitor, &eligible) {
                        Some(r) => routes.push(r),
                        None => {
                            unroutable = true;
                            break;
                        }
                    }
                }
                if unroutable {
                    return infeasible_outcome(
                        round,
                        TerminationReason::NoRoute,
                        network,
                        Some(chromosome),
                    );
                }
                (chromosome, RelayPlan { routes })
            }
        };

        let costs = round_costs(&plan, &model);
        let overdrawn_sensors: Vec<usize> = costs
            .sensors
            .iter()
            .filter(|c| c.total() > network.sensors[c.sensor].e_remaining)
            .map(|c| c.sensor)
            .collect();
        let overdrawn_supers: Vec<usize> = costs
            .supernodes
            .iter()
            .filter(|c| c.rx_j > network.supernodes[c.supernode].e_remaining)
            .map(|c| c.supernode)
            .collect();
        if !overdrawn_sensors.is_empty() || !overdrawn_supers.is_empty() {
            for s in overdrawn_sensors {
                eligible[s] = false;
            }
            for m in overdrawn_supers {
                super_ok[m] = false;
            }
            continue;
        }

        apply_round(network, &costs)
            .expect("plan was checked against remaining energies");
        let monitors = plan.routes.len() as u32;
        let active_total = plan.active_sensors().len() as u32;
        return RoundOutcome {
            round,
            feasible: true,
            failure: None,
            monitors,
            relays: active_total - monitors,
            active_total,
            round_energy_j: costs.total_j(),
            total_remaining_j: network.total_remaining(),
            chromosome: Some(chromosome),
            plan: Some(plan),
            costs: Some(costs),
        };
    }
}

/// Runs rounds on an already placed network until the first infeasible one.
pub fn run_simulation_on(mut network: Network, config: &NetworkConfig) -> SimReport {
    let mut rng = substream(config.rng_seed, Stream::Annealing);
    let mut rounds = Vec::new();
    let mut round = 1u32;
    loop {
        let outcome = run_round(&mut network, config, &mut rng, round);
        let failure = outcome.failure;
        rounds.push(outcome);
        if let Some(termination) = failure {
            let lifetime = rounds.len() as u32 - 1;
            return SimReport {
                lifetime,
                termination,
                rounds,
                config: config.clone(),
                seed: config.rng_seed,
            };
        }
        round += 1;
    }
}

/// Places the network from the config's seed and runs it to exhaustion.
pub fn run_simulation(config: &NetworkConfig) -> SimReport {
    config.validate().expect("config must be valid");
    let network = place_uniform(config, &mut substream(config.rng_seed, Stream::Placement));
    run_simulation_on(network, config)
}

/// Lifetime statistics over a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct LifetimeStats {
    pub mean: f64,
    /// Sample standard deviation (zero for a single run).
    pub sd: f64,
    pub min: u32,
    pub max: u32,
}

/// Per-round-index averages across runs, truncated to the shortest run.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundMean {
    pub round: u32,
    pub monitors: f64,
    pub relays: f64,
    pub active_total: f64,
    pub round_energy_j: f64,
    pub total_remaining_j: f64,
}

/// A batch of independent runs with aggregate statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchReport {
    pub seeds: Vec<u64>,
    pub stats: LifetimeStats,
    pub per_round_mean: Vec<RoundMean>,
    /// The full per-run reports, in seed order.
    pub runs: Vec<SimReport>,
}

pub fn lifetime_stats(lifetimes: &[u32]) -> LifetimeStats {
    let n = lifetimes.len();
    assert!(n > 0, "stats need at least one run");
    let mean = lifetimes.iter().map(|&l| l as f64).sum::<f64>() / n as f64;
    let sd = if n > 1 {
        let var = lifetimes
            .iter()
            .map(|&l| (l as f64 - mean).powi(2))
            .sum::<f64>()
            / (n - 1) as f64;
        var.sqrt()
    } else {
        0.0
    };
    LifetimeStats {
        mean,
        sd,
        min: *lifetimes.iter().min().unwrap(),
        max: *lifetimes.iter().max().unwrap(),
    }
}

/// Runs `n_runs` simulations with seeds `base_seed..base_seed + n_runs`,
/// possibly in parallel; results are aggregated in seed order and do not
/// depend on scheduling.
pub fn run_batch(config: &NetworkConfig, n_runs: usize, base_seed: u64) -> BatchReport {
    assert!(n_runs >= 1, "a batch needs at least one run");
    let seeds: Vec<u64> = (0..n_runs as u64).map(|i| base_seed + i).collect();
    let runs: Vec<SimReport> = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = NetworkConfig {
                rng_seed: seed,
                ..config.clone()
            };
            run_simulation(&cfg)
        })
        .collect();

    let lifetimes: Vec<u32> = runs.iter().map(|r| r.lifetime).collect();
    let shortest = *lifetimes.iter().min().unwrap() as usize;
    let per_round_mean = (0..shortest)
        .map(|i| {
            let k = runs.len() as f64;
            let sum = |f: &dyn Fn(&RoundOutcome) -> f64| {
                runs.iter().map(|r| f(&r.rounds[i])).sum::<f64>() / k
            };
            RoundMean {
                round: i as u32 + 1,
                monitors: sum(&|o| o.monitors as f64),
                relays: sum(&|o| o.relays as f64),
                active_total: sum(&|o| o.active_total as f64),
                round_energy_j: sum(&|o| o.round_energy_j),
                total_remaining_j: sum(&|o| o.total_remaining_j),
            }
        })
        .collect();

    BatchReport {
        seeds,
        stats: lifetime_stats(&lifetimes),
        per_round_mean,
        runs,
    }
}
