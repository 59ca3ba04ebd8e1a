//! Per-round active-set selection by simulated annealing.
//!
//! A candidate solution is a binary chromosome over the sensors: bit `n`
//! set means sensor `n` monitors this round. The annealer walks the
//! neighborhood defined by swapping two positions (flipping one when the
//! swap would be a no-op), scoring candidates with a weighted objective
//! that puts every infeasible set below every feasible one, and keeps the
//! best chromosome it ever visited.

use rand::Rng;
use thiserror::Error;

use crate::coverage::{relay_route, CommGraph, CoverageTable, MonitorRoute, RelayPlan};
use crate::energy::EnergyModel;
use crate::model::{Network, ObjectiveWeights, SaParams};

/// Binary active/inactive vector over the sensors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chromosome {
    bits: Vec<bool>,
}

impl Chromosome {
    pub fn zeros(n: usize) -> Self {
        Self {
            bits: vec![false; n],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_set(&self, n: usize) -> bool {
        self.bits[n]
    }

    pub fn set(&mut self, n: usize, value: bool) {
        self.bits[n] = value;
    }

    /// Number of selected sensors.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Selected sensor ids, ascending.
    pub fn selected(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

/// Some target has no eligible covering sensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("target {target} has no eligible covering sensor")]
pub struct Uncoverable {
    pub target: usize,
}

/// Greedy cover: walk targets in ascending id order and, for each yet
/// uncovered one, select the eligible coverer seeing the most targets
/// (ties: more remaining energy, then lower id).
pub fn greedy_seed(
    network: &Network,
    coverage: &CoverageTable,
    eligible: &[bool],
) -> Result<Chromosome, Uncoverable> {
    let mut chromosome = Chromosome::zeros(coverage.n_sensors());
    let mut covered = vec![false; coverage.n_targets()];
    for k in 0..coverage.n_targets() {
        if covered[k] {
            continue;
        }
        let winner = coverage.coverers[k]
            .iter()
            .copied()
            .filter(|&n| eligible[n])
            .max_by(|&a, &b| {
                coverage.m[a]
                    .cmp(&coverage.m[b])
                    .then_with(|| {
                        network.sensors[a]
                            .e_remaining
                            .total_cmp(&network.sensors[b].e_remaining)
                    })
                    .then_with(|| b.cmp(&a)) // lower id wins
            })
            .ok_or(Uncoverable { target: k })?;
        chromosome.set(winner, true);
        for &t in &coverage.targets_of[winner] {
            covered[t] = true;
        }
    }
    Ok(chromosome)
}

/// Random chromosome: every eligible bit is set with probability 1/2,
/// ineligible bits stay clear.
pub fn random_seed<R: Rng>(rng: &mut R, n: usize, eligible: &[bool]) -> Chromosome {
    let mut chromosome = Chromosome::zeros(n);
    for (i, &ok) in eligible.iter().enumerate().take(n) {
        if ok {
            chromosome.set(i, rng.random());
        }
    }
    chromosome
}

/// A neighbor move: which bits to flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Proposal {
    Unchanged,
    Flip(usize),
    Swap(usize, usize),
}

impl Proposal {
    fn toggles(self) -> impl Iterator<Item = usize> {
        match self {
            Proposal::Unchanged => [None, None],
            Proposal::Flip(i) => [Some(i), None],
            Proposal::Swap(i, j) => [Some(i), Some(j)],
        }
        .into_iter()
        .flatten()
    }
}

/// Decides the move for one drawn index pair, or `None` when the pair must
/// be redrawn because it would activate an ineligible sensor.
fn classify_pair(bits: &[bool], eligible: &[bool], i: usize, j: usize) -> Option<Proposal> {
    if bits[i] != bits[j] {
        // Swapping moves the set bit; the receiving position must be eligible.
        let receiver = if bits[i] { j } else { i };
        eligible[receiver].then_some(Proposal::Swap(i, j))
    } else if bits[i] || eligible[i] {
        // Equal bits make the swap a no-op: flip the first index instead.
        Some(Proposal::Flip(i))
    } else {
        None
    }
}

fn propose<R: Rng>(bits: &[bool], eligible: &[bool], rng: &mut R) -> Proposal {
    let n = bits.len();
    if n < 2 {
        return Proposal::Unchanged;
    }
    for _ in 0..n {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if let Some(p) = classify_pair(bits, eligible, i, j) {
            return p;
        }
    }
    Proposal::Unchanged
}

/// Draws two distinct indices and swaps their bit values; when the bits are
/// equal the first index is flipped instead. Pairs that would set a bit for
/// an ineligible sensor are redrawn, up to `n` attempts, after which the
/// input is returned unchanged.
pub fn neighbor<R: Rng>(c: &Chromosome, eligible: &[bool], rng: &mut R) -> Chromosome {
    let mut out = c.clone();
    for i in propose(c.bits(), eligible, rng).toggles() {
        let v = out.is_set(i);
        out.set(i, !v);
    }
    out
}

/// Metropolis acceptance: improvements always, deteriorations with
/// probability `exp(delta / t)`.
pub fn metropolis_accept<R: Rng>(delta: f64, t: f64, rng: &mut R) -> bool {
    delta > 0.0 || rng.random::<f64>() < (delta / t).exp()
}

/// The geometric temperature sequence `t_init, t_init*cooling, ...`,
/// stopping before it falls below `t_min`.
pub fn cooling_schedule(params: &SaParams) -> impl Iterator<Item = f64> + '_ {
    std::iter::successors(Some(params.t_init), move |t| Some(t * params.cooling))
        .take_while(move |&t| t >= params.t_min)
}

/// Everything a chromosome is scored against in one round: the network
/// state, coverage, the communication graph, eligibility, weights, and the
/// precomputed relay route of every eligible sensor.
pub struct EvalContext<'a> {
    pub network: &'a Network,
    pub coverage: &'a CoverageTable,
    pub graph: &'a CommGraph,
    pub eligible: &'a [bool],
    pub weights: &'a ObjectiveWeights,
    pub model: &'a EnergyModel,
    routes: Vec<Option<MonitorRoute>>,
    /// Total energy a monitor adds to the round through its route
    /// (first hop + relay forwards + terminal reception), joules.
    contrib_j: Vec<f64>,
    /// Remaining energy normalized by initial energy, per sensor.
    e_norm: Vec<f64>,
}

impl<'a> EvalContext<'a> {
    pub fn new(
        network: &'a Network,
        coverage: &'a CoverageTable,
        graph: &'a CommGraph,
        eligible: &'a [bool],
        weights: &'a ObjectiveWeights,
        model: &'a EnergyModel,
    ) -> Self {
        let n = network.sensors.len();
        let l = model.packet_bits;
        let mut routes = Vec::with_capacity(n);
        let mut contrib_j = Vec::with_capacity(n);
        for s in 0..n {
            let route = if eligible[s] {
                relay_route(graph, s, eligible)
            } else {
                None
            };
            let contrib = route.as_ref().map_or(0.0, |r| {
                let mut j = model.tx_energy(l, r.hop_lengths[0]) + model.sensing_cost;
                for hop in &r.hop_lengths[1..] {
                    j += model.rx_energy(l) + model.tx_energy(l, *hop);
                }
                j += model.rx_energy(l); // terminal super node
                j
            });
            routes.push(route);
            contrib_j.push(contrib);
        }
        let e_norm = network
            .sensors
            .iter()
            .map(|s| s.e_remaining / s.e_init)
            .collect();
        Self {
            network,
            coverage,
            graph,
            eligible,
            weights,
            model,
            routes,
            contrib_j,
            e_norm,
        }
    }

    /// Precomputed route of sensor `n` (None when ineligible or cut off).
    pub fn route(&self, n: usize) -> Option<&MonitorRoute> {
        self.routes[n].as_ref()
    }

    /// Assembles the relay plan implied by a chromosome, if every selected
    /// monitor has a route.
    pub fn plan_for(&self, c: &Chromosome) -> Option<RelayPlan> {
        let mut routes = Vec::with_capacity(c.ones());
        for n in c.selected() {
            routes.push(self.routes[n].clone()?);
        }
        Some(RelayPlan { routes })
    }
}

/// Incremental score bookkeeping for the annealer. Toggling one bit costs
/// time proportional to that sensor's route length and covered targets
/// rather than a full re-evaluation.
pub(crate) struct Evaluator<'c, 'a> {
    ctx: &'c EvalContext<'a>,
    bits: Vec<bool>,
    monitor_count: usize,
    unroutable: usize,
    cover_count: Vec<u32>,
    uncovered: usize,
    /// How many selected monitors route through each sensor.
    usage: Vec<u32>,
    /// Sensors with usage > 0 that are not monitors themselves.
    relay_only: usize,
    reserve_sum: f64,
    energy_j: f64,
}

impl<'c, 'a> Evaluator<'c, 'a> {
    pub(crate) fn new(ctx: &'c EvalContext<'a>, c: &Chromosome) -> Self {
        let n = ctx.network.sensors.len();
        let mut ev = Self {
            ctx,
            bits: vec![false; n],
            monitor_count: 0,
            unroutable: 0,
            cover_count: vec![0; ctx.coverage.n_targets()],
            uncovered: ctx.coverage.n_targets(),
            usage: vec![0; n],
            relay_only: 0,
            reserve_sum: 0.0,
            energy_j: 0.0,
        };
        for i in c.selected() {
            ev.toggle(i);
        }
        ev
    }

    pub(crate) fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub(crate) fn chromosome(&self) -> Chromosome {
        Chromosome::from_bits(self.bits.clone())
    }

    fn usage_inc(&mut self, v: usize) {
        self.usage[v] += 1;
        if self.usage[v] == 1 && !self.bits[v] {
            self.relay_only += 1;
            self.reserve_sum += self.ctx.e_norm[v];
        }
    }

    fn usage_dec(&mut self, v: usize) {
        self.usage[v] -= 1;
        if self.usage[v] == 0 && !self.bits[v] {
            self.relay_only -= 1;
            self.reserve_sum -= self.ctx.e_norm[v];
        }
    }

    pub(crate) fn toggle(&mut self, n: usize) {
        if !self.bits[n] {
            // select n
            if self.usage[n] > 0 {
                self.relay_only -= 1; // already active as a relay
            } else {
                self.reserve_sum += self.ctx.e_norm[n];
            }
            self.bits[n] = true;
            self.monitor_count += 1;
            for &k in &self.ctx.coverage.targets_of[n] {
                if self.cover_count[k] == 0 {
                    self.uncovered -= 1;
                }
                self.cover_count[k] += 1;
            }
            match self.ctx.route(n) {
                Some(route) => {
                    self.energy_j += self.ctx.contrib_j[n];
                    let interior: Vec<usize> = route.interior_sensors().collect();
                    for v in interior {
                        self.usage_inc(v);
                    }
                }
                None => self.unroutable += 1,
            }
        } else {
            // deselect n
            match self.ctx.route(n) {
                Some(route) => {
                    self.energy_j -= self.ctx.contrib_j[n];
                    let interior: Vec<usize> = route.interior_sensors().collect();
                    for v in interior {
                        self.usage_dec(v);
                    }
                }
                None => self.unroutable -= 1,
            }
            for &k in &self.ctx.coverage.targets_of[n] {
                self.cover_count[k] -= 1;
                if self.cover_count[k] == 0 {
                    self.uncovered += 1;
                }
            }
            self.bits[n] = false;
            self.monitor_count -= 1;
            if self.usage[n] > 0 {
                self.relay_only += 1;
            } else {
                self.reserve_sum -= self.ctx.e_norm[n];
            }
        }
    }

    pub(crate) fn score(&self) -> f64 {
        let w = self.ctx.weights;
        if self.uncovered > 0 || self.unroutable > 0 {
            return -w.penalty_infeasible - self.uncovered as f64;
        }
        let active = self.monitor_count + self.relay_only;
        let reserve = if active > 0 {
            self.reserve_sum / active as f64
        } else {
            0.0
        };
        -w.w_count * active as f64 - w.w_energy * (self.energy_j * 1e3) + w.w_reserve * reserve
    }
}

/// Scores a chromosome: infeasible sets get `-penalty - uncovered_targets`;
/// feasible sets get `-w_count*active - w_energy*energy_mJ +
/// w_reserve*mean_normalized_reserve`, where `active` counts monitors plus
/// distinct relays and the reserve averages over that same active set.
/// Higher is better.
pub fn objective(c: &Chromosome, ctx: &EvalContext) -> f64 {
    Evaluator::new(ctx, c).score()
}

/// Anneals from `seed`: at each temperature `inner_iters` neighbors are
/// proposed and accepted by the Metropolis rule; the temperature then cools
/// geometrically. Stops when the temperature drops below `t_min` or after
/// `max_stall` consecutive outer steps without improving the best score.
/// Returns the best chromosome ever visited.
pub fn anneal<R: Rng>(
    seed: Chromosome,
    params: &SaParams,
    ctx: &EvalContext,
    rng: &mut R,
) -> Chromosome {
    let mut ev = Evaluator::new(ctx, &seed);
    let mut current_score = ev.score();
    let mut best = seed;
    let mut best_score = current_score;

    let mut stall = 0u32;
    for t in cooling_schedule(params) {
        if stall >= params.max_stall {
            break;
        }
        let mut improved = false;
        for _ in 0..params.inner_iters {
            let proposal = propose(ev.bits(), ctx.eligible, rng);
            for i in proposal.toggles() {
                ev.toggle(i);
            }
            let candidate_score = ev.score();
            let delta = candidate_score - current_score;
            if metropolis_accept(delta, t, rng) {
                current_score = candidate_score;
                if current_score > best_score {
                    best_score = current_score;
                    best = ev.chromosome();
                    improved = true;
                }
            } else {
                for i in proposal.toggles() {
                    ev.toggle(i);
                }
            }
        }
        stall = if improved { 0 } else { stall + 1 };
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coverage::{build_comm_graph, build_coverage, is_feasible};
    use crate::model::{Network, NetworkConfig};
    use crate::rng::{substream, Stream};
    use crate::testutil::{sensor, supernode, target};
    use approx::assert_relative_eq;

    fn small_config() -> NetworkConfig {
        NetworkConfig {
            area_side: 200.0,
            n_sensors: 4,
            n_supernodes: 1,
            n_targets: 2,
            r_comm: 90.0,
            r_sense: 60.0,
            ..NetworkConfig::default()
        }
    }

    /// Four sensors around a super node, two targets. Sensor 0 covers both
    /// targets, sensors 1 and 2 cover one each, sensor 3 covers none.
    fn small_network() -> Network {
        Network {
            sensors: vec![
                sensor(0, 100.0, 100.0, 0.1),
                sensor(1, 60.0, 100.0, 0.1),
                sensor(2, 140.0, 100.0, 0.1),
                sensor(3, 100.0, 180.0, 0.1),
            ],
            supernodes: vec![supernode(0, 100.0, 60.0)],
            targets: vec![target(0, 70.0, 100.0), target(1, 130.0, 100.0)],
        }
    }

    fn ctx_parts(
        net: &Network,
        cfg: &NetworkConfig,
    ) -> (crate::coverage::CoverageTable, crate::coverage::CommGraph, EnergyModel) {
        (
            build_coverage(net, cfg),
            build_comm_graph(net, cfg),
            EnergyModel::from_config(cfg),
        )
    }

    #[test]
    fn greedy_prefers_sensor_seeing_more_targets() {
        let net = small_network();
        let cfg = small_config();
        let coverage = build_coverage(&net, &cfg);
        let eligible = vec![true; 4];
        let c = greedy_seed(&net, &coverage, &eligible).unwrap();
        // Sensor 0 sees both targets, so it alone is selected.
        assert_eq!(c.selected().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn greedy_selects_sole_coverer() {
        let net = Network {
            sensors: vec![sensor(0, 0.0, 0.0, 0.1), sensor(1, 150.0, 0.0, 0.1)],
            supernodes: vec![supernode(0, 30.0, 0.0)],
            targets: vec![target(0, 10.0, 0.0)],
        };
        let cfg = small_config();
        let coverage = build_coverage(&net, &cfg);
        let c = greedy_seed(&net, &coverage, &[true, true]).unwrap();
        assert_eq!(c.selected().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn greedy_names_uncoverable_target() {
        let net = small_network();
        let cfg = small_config();
        let coverage = build_coverage(&net, &cfg);
        // Only sensor 2 eligible: target 0 (covered by 0 and 1) is uncoverable.
        let eligible = vec![false, false, true, true];
        let err = greedy_seed(&net, &coverage, &eligible).unwrap_err();
        assert_eq!(err.target, 0);
    }

    #[test]
    fn greedy_breaks_ties_by_energy_then_id() {
        let mut net = Network {
            sensors: vec![
                sensor(0, 0.0, 0.0, 0.1),
                sensor(1, 0.0, 20.0, 0.1),
                sensor(2, 0.0, 40.0, 0.1),
            ],
            supernodes: vec![supernode(0, 30.0, 0.0)],
            targets: vec![target(0, 0.0, 20.0)],
        };
        let cfg = small_config();
        // All three cover the single target with equal m; sensor 1 has more
        // energy left.
        net.sensors[0].e_remaining = 0.05;
        net.sensors[2].e_remaining = 0.05;
        let coverage = build_coverage(&net, &cfg);
        let c = greedy_seed(&net, &coverage, &[true, true, true]).unwrap();
        assert_eq!(c.selected().collect::<Vec<_>>(), vec![1]);

        net.sensors[0].e_remaining = 0.1;
        net.sensors[2].e_remaining = 0.1;
        let c = greedy_seed(&net, &coverage, &[true, true, true]).unwrap();
        assert_eq!(c.selected().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn random_seed_respects_eligibility_and_seeding() {
        let mut rng = substream(9, Stream::Annealing);
        let eligible = vec![false; 8];
        let c = random_seed(&mut rng, 8, &eligible);
        assert_eq!(c.ones(), 0);

        let eligible = vec![true; 8];
        let a = random_seed(&mut substream(5, Stream::Annealing), 8, &eligible);
        let b = random_seed(&mut substream(5, Stream::Annealing), 8, &eligible);
        assert_eq!(a, b);
    }

    #[test]
    fn random_seed_sets_about_half_the_bits() {
        let n = 100;
        let eligible = vec![true; n];
        let mut rng = substream(17, Stream::Annealing);
        let draws = 10_000;
        let total: usize = (0..draws)
            .map(|_| random_seed(&mut rng, n, &eligible).ones())
            .sum();
        let mean = total as f64 / draws as f64;
        // Binomial mean n/2 with tolerance 3*sqrt(n)/2.
        assert!((mean - 50.0).abs() < 15.0, "mean ones {mean}");
    }

    #[test]
    fn swap_moves_the_set_bit() {
        let bits = [true, false, true];
        let eligible = [true, true, true];
        assert_eq!(
            classify_pair(&bits, &eligible, 1, 2),
            Some(Proposal::Swap(1, 2))
        );
        let mut c = Chromosome::from_bits(bits.to_vec());
        for i in Proposal::Swap(1, 2).toggles() {
            let v = c.is_set(i);
            c.set(i, !v);
        }
        assert_eq!(c.bits(), &[true, true, false]);
    }

    #[test]
    fn equal_bits_flip_the_first_index() {
        let bits = [true, false, true];
        let eligible = [true, true, true];
        assert_eq!(
            classify_pair(&bits, &eligible, 0, 2),
            Some(Proposal::Flip(0))
        );
        // Clearing a bit needs no eligibility; setting one does.
        let bits = [false, false];
        assert_eq!(classify_pair(&bits, &[false, true], 0, 1), None);
        assert_eq!(
            classify_pair(&bits, &[true, true], 0, 1),
            Some(Proposal::Flip(0))
        );
    }

    #[test]
    fn neighbor_preserves_length_and_eligibility() {
        let mut rng = substream(21, Stream::Annealing);
        let eligible = vec![true, true, false, true, false, true];
        let mut c = random_seed(&mut rng, 6, &eligible);
        for _ in 0..500 {
            c = neighbor(&c, &eligible, &mut rng);
            assert_eq!(c.len(), 6);
            for n in c.selected() {
                assert!(eligible[n], "ineligible sensor {n} selected");
            }
        }
    }

    #[test]
    fn neighbor_with_all_ineligible_zeros_is_identity() {
        let mut rng = substream(3, Stream::Annealing);
        let c = Chromosome::zeros(5);
        let out = neighbor(&c, &[false; 5], &mut rng);
        assert_eq!(out, c);
    }

    #[test]
    fn objective_is_deterministic_and_prefers_smaller_sets() {
        let net = small_network();
        let cfg = small_config();
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 4];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);

        let minimal = Chromosome::from_bits(vec![true, false, false, false]);
        let padded = Chromosome::from_bits(vec![true, false, false, true]);
        assert_eq!(objective(&minimal, &ctx), objective(&minimal, &ctx));
        assert!(objective(&minimal, &ctx) > objective(&padded, &ctx));
    }

    #[test]
    fn infeasible_scores_below_every_feasible() {
        let net = small_network();
        let cfg = small_config();
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 4];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);

        let feasible = Chromosome::from_bits(vec![false, true, true, false]);
        let uncovered = Chromosome::from_bits(vec![false, true, false, false]);
        let empty = Chromosome::zeros(4);
        assert!(is_feasible(&feasible, &coverage, &graph, &eligible).is_feasible());
        assert!(objective(&uncovered, &ctx) < objective(&feasible, &ctx));
        assert!(objective(&empty, &ctx) < objective(&uncovered, &ctx));
        assert!(objective(&empty, &ctx) <= -cfg.weights.penalty_infeasible - 2.0);
    }

    #[test]
    fn evaluator_matches_fresh_objective_under_random_walks() {
        let cfg = NetworkConfig {
            area_side: 300.0,
            n_sensors: 30,
            n_supernodes: 3,
            n_targets: 6,
            ..NetworkConfig::default()
        };
        let net = crate::model::place_uniform(&cfg, &mut substream(31, Stream::Placement));
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 30];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);

        let mut rng = substream(32, Stream::Annealing);
        let seed = random_seed(&mut rng, 30, &eligible);
        let mut ev = Evaluator::new(&ctx, &seed);
        for step in 0..2000 {
            let proposal = propose(ev.bits(), &eligible, &mut rng);
            for i in proposal.toggles() {
                ev.toggle(i);
            }
            if step % 37 == 0 {
                let fresh = objective(&ev.chromosome(), &ctx);
                assert_relative_eq!(ev.score(), fresh, max_relative = 1e-9, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn metropolis_accepts_improvements_and_zero_delta() {
        let mut rng = substream(41, Stream::Annealing);
        for _ in 0..1000 {
            assert!(metropolis_accept(1.0, 5.0, &mut rng));
            assert!(metropolis_accept(0.0, 5.0, &mut rng));
        }
    }

    #[test]
    fn metropolis_accepts_minus_t_at_rate_one_over_e() {
        let mut rng = substream(42, Stream::Annealing);
        let trials = 10_000;
        let accepted = (0..trials)
            .filter(|_| metropolis_accept(-2.5, 2.5, &mut rng))
            .count();
        let rate = accepted as f64 / trials as f64;
        assert!((rate - 0.3679).abs() < 0.015, "acceptance rate {rate}");
    }

    #[test]
    fn cooling_schedule_is_geometric_and_decreasing() {
        let params = SaParams {
            t_init: 10.0,
            cooling: 0.998,
            t_min: 1.0,
            ..SaParams::default()
        };
        let temps: Vec<f64> = cooling_schedule(&params).collect();
        assert_eq!(temps[0], 10.0);
        assert!(temps.windows(2).all(|w| w[1] < w[0]));
        for w in temps.windows(2) {
            assert_relative_eq!(w[1] / w[0], 0.998, max_relative = 1e-12);
        }
        assert!(*temps.last().unwrap() >= 1.0);
        assert!(temps.last().unwrap() * 0.998 < 1.0);
    }

    #[test]
    fn anneal_never_returns_worse_than_seed() {
        let net = small_network();
        let cfg = small_config();
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 4];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);
        for seed_id in 0..20u64 {
            let mut rng = substream(seed_id, Stream::Annealing);
            let seed = random_seed(&mut rng, 4, &eligible);
            let seed_score = objective(&seed, &ctx);
            let best = anneal(seed, &cfg.sa, &ctx, &mut rng);
            assert!(objective(&best, &ctx) >= seed_score);
        }
    }

    #[test]
    fn anneal_from_greedy_stays_feasible_and_finds_the_minimum() {
        let net = small_network();
        let cfg = small_config();
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 4];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);
        let seed = greedy_seed(&net, &coverage, &eligible).unwrap();
        let mut rng = substream(77, Stream::Annealing);
        let best = anneal(seed, &cfg.sa, &ctx, &mut rng);
        assert!(is_feasible(&best, &coverage, &graph, &eligible).is_feasible());
        // Sensor 0 covers both targets and sits next to the super node.
        assert_eq!(best.selected().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn anneal_is_deterministic_given_the_stream() {
        let net = small_network();
        let cfg = small_config();
        let (coverage, graph, model) = ctx_parts(&net, &cfg);
        let eligible = vec![true; 4];
        let ctx = EvalContext::new(&net, &coverage, &graph, &eligible, &cfg.weights, &model);
        let run = |seed: u64| {
            let mut rng = substream(seed, Stream::Annealing);
            let c = random_seed(&mut rng, 4, &eligible);
            anneal(c, &cfg.sa, &ctx, &mut rng)
        };
        assert_eq!(run(4), run(4));
    }
}
