//! Round-based lifetime simulation of a heterogeneous wireless sensor
//! network with point coverage.
//!
//! A square area holds common sensors, a few high-energy super nodes and a
//! set of targets. Time runs in rounds. Each round an active set of
//! monitors is selected - by simulated annealing over binary chromosomes,
//! or by a distributed waiting-time contest - such that every target lies
//! in some monitor's sensing range and every monitor reaches a super node
//! through a chain of eligible relay sensors. Monitors, relays and super
//! nodes then pay first-order radio energy for the round's traffic. The
//! network's lifetime is the number of rounds until coverage or
//! connectivity fails.
//!
//! Everything is deterministic given the master seed: placement, annealing
//! and the contest draw from separate named ChaCha8 streams.
//!
//! See the `examples/` directory for one runnable program per capability,
//! and the `wsn-lifetime` binary for the `run` / `batch` / `sweep` drivers.

pub mod cli;
pub mod contest;
pub mod coverage;
pub mod energy;
pub mod model;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod sa;
pub mod sim;

#[cfg(test)]
mod testutil;

pub use contest::contest_select;
pub use coverage::{
    build_comm_graph, build_coverage, is_feasible, relay_route, CommGraph, CoverageTable,
    Feasibility, MonitorRoute, RelayPlan, Vertex,
};
pub use energy::{
    apply_round, eligibility, eligible, round_costs, EnergyModel, NegativeEnergy, RoundCosts,
};
pub use model::{
    place_uniform, InvalidConfig, Network, NetworkConfig, ObjectiveWeights, Position, SaParams,
    SeedMode, SelectionMode, SensorNode, SuperNode, Target,
};
pub use oracle::{hop_oracle, min_cover_bruteforce, OracleOutcome, TooLarge};
pub use report::{parse_config, parse_config_str, ConfigError, RunManifest};
pub use sa::{
    anneal, greedy_seed, metropolis_accept, neighbor, objective, random_seed, Chromosome,
    EvalContext, Uncoverable,
};
pub use sim::{
    run_batch, run_round, run_simulation, run_simulation_on, BatchReport, LifetimeStats,
    RoundOutcome, SimReport, TerminationReason,
};
