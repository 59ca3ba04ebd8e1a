//! Scenario configuration, uniform placement and basic geometry.

use rand::Rng;
use thiserror::Error;

/// A point in the deployment area, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// How the active monitor set is chosen each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Simulated annealing over binary chromosomes.
    Sa,
    /// Distributed waiting-time contest.
    Contest,
}

/// How the annealer's starting chromosome is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedMode {
    /// Most-targets-first greedy cover.
    Greedy,
    /// Each eligible bit set with probability 1/2.
    Random,
}

/// Annealing schedule parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SaParams {
    /// Starting temperature, on the same scale as the objective.
    pub t_init: f64,
    /// Geometric cooling factor per outer step, strictly inside (0, 1).
    pub cooling: f64,
    /// Neighbor proposals evaluated at each temperature.
    pub inner_iters: u32,
    /// Stop once the temperature falls below this.
    pub t_min: f64,
    /// Stop after this many outer steps without a best-score improvement.
    pub max_stall: u32,
}

impl Default for SaParams {
    fn default() -> Self {
        Self {
            t_init: 10.0,
            cooling: 0.998,
            inner_iters: 50,
            t_min: 1e-3,
            max_stall: 200,
        }
    }
}

/// Weights of the selection objective (higher score is better).
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveWeights {
    /// Weight on the number of active sensors (monitors plus relays).
    pub w_count: f64,
    /// Weight on the round's total radio energy, in millijoules.
    pub w_energy: f64,
    /// Weight on the mean normalized remaining energy of the active set.
    pub w_reserve: f64,
    /// Penalty constant that puts every infeasible set below every feasible one.
    pub penalty_infeasible: f64,
}

impl Default for ObjectiveWeights {
    fn default() -> Self {
        Self {
            w_count: 1.0,
            w_energy: 0.1,
            w_reserve: 0.5,
            penalty_infeasible: 1e6,
        }
    }
}

/// All scenario parameters plus the master RNG seed.
///
/// Defaults ([`NetworkConfig::default`]) are the simulation values of the
/// reference scenario: a 500 m x 500 m area with 300 sensors, 25 super nodes
/// and 20 targets, communication range 90 m, sensing range 60 m, 0.1 J
/// sensors and 0.5 J super nodes, 50 nJ/bit electronics. Radio amplifier
/// constants and packet length are the standard first-order values
/// (eps_fs = 10 pJ/bit/m^2, eps_mp = 0.0013 pJ/bit/m^4, 4000-bit packets).
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// Side of the square deployment area, meters.
    pub area_side: f64,
    /// Number of common sensors (N).
    pub n_sensors: usize,
    /// Number of super nodes (M), strictly fewer than sensors.
    pub n_supernodes: usize,
    /// Number of targets (K).
    pub n_targets: usize,
    /// Communication range R_c, meters (exclusive boundary).
    pub r_comm: f64,
    /// Sensing range R_s, meters (inclusive boundary).
    pub r_sense: f64,
    /// Initial sensor energy, joules.
    pub e_init_sensor: f64,
    /// Initial super-node energy, joules.
    pub e_init_super: f64,
    /// Electronics energy per bit, joules.
    pub e_elec: f64,
    /// Open-space amplifier energy, joules/bit/m^2.
    pub eps_fs: f64,
    /// Multi-path amplifier energy, joules/bit/m^4.
    pub eps_mp: f64,
    /// Packet length, bits.
    pub packet_bits: f64,
    /// Optional per-round sensing cost charged to each monitor, joules.
    pub sensing_cost: f64,
    /// Annealing schedule.
    pub sa: SaParams,
    /// Objective weights.
    pub weights: ObjectiveWeights,
    /// Active-set selection algorithm.
    pub selection_mode: SelectionMode,
    /// Annealer seeding strategy.
    pub seed_mode: SeedMode,
    /// Length of the contest window w, in round-time units.
    pub contest_w: f64,
    /// Master RNG seed.
    pub rng_seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        Self {
            area_side: 500.0,
            n_sensors: 300,
            n_supernodes: 25,
            n_targets: 20,
            r_comm: 90.0,
            r_sense: 60.0,
            e_init_sensor: 0.1,
            e_init_super: 0.5,
            e_elec: 50e-9,
            eps_fs: 10e-12,
            eps_mp: 0.0013e-12,
            packet_bits: 4000.0,
            sensing_cost: 0.0,
            sa: SaParams::default(),
            weights: ObjectiveWeights::default(),
            selection_mode: SelectionMode::Sa,
            seed_mode: SeedMode::Greedy,
            contest_w: 1.0,
            rng_seed: 1,
        }
    }
}

/// A configuration rejected at validation.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid config: {0}")]
pub struct InvalidConfig(pub String);

impl NetworkConfig {
    /// Distance at which the amplifier model switches from open-space to
    /// multi-path, `sqrt(eps_fs / eps_mp)`. Derived, so the transmit energy
    /// is continuous there by construction.
    pub fn d0(&self) -> f64 {
        (self.eps_fs / self.eps_mp).sqrt()
    }

    /// Checks every structural invariant of the scenario.
    pub fn validate(&self) -> Result<(), InvalidConfig> {
        fn positive(name: &str, v: f64) -> Result<(), InvalidConfig> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(InvalidConfig(format!("{name} must be strictly positive")))
            }
        }
        positive("area_side", self.area_side)?;
        positive("r_comm", self.r_comm)?;
        positive("r_sense", self.r_sense)?;
        positive("e_init_sensor", self.e_init_sensor)?;
        positive("e_init_super", self.e_init_super)?;
        positive("e_elec", self.e_elec)?;
        positive("eps_fs", self.eps_fs)?;
        positive("eps_mp", self.eps_mp)?;
        positive("packet_bits", self.packet_bits)?;
        positive("contest_w", self.contest_w)?;
        if self.sensing_cost < 0.0 {
            return Err(InvalidConfig("sensing_cost must be non-negative".into()));
        }
        if self.n_sensors == 0 || self.n_supernodes == 0 || self.n_targets == 0 {
            return Err(InvalidConfig("all counts must be strictly positive".into()));
        }
        if self.n_supernodes >= self.n_sensors {
            return Err(InvalidConfig(format!(
                "n_supernodes ({}) must be less than n_sensors ({})",
                self.n_supernodes, self.n_sensors
            )));
        }
        if self.r_comm < self.r_sense {
            return Err(InvalidConfig(format!(
                "r_comm ({}) must be at least r_sense ({})",
                self.r_comm, self.r_sense
            )));
        }
        if !(self.sa.cooling > 0.0 && self.sa.cooling < 1.0) {
            return Err(InvalidConfig("sa_cooling must lie strictly in (0, 1)".into()));
        }
        if !(self.sa.t_init > self.sa.t_min && self.sa.t_min > 0.0) {
            return Err(InvalidConfig("need sa_t_init > sa_t_min > 0".into()));
        }
        if self.sa.inner_iters == 0 {
            return Err(InvalidConfig("sa_inner_iters must be at least 1".into()));
        }
        let w = &self.weights;
        if w.w_count < 0.0 || w.w_energy < 0.0 || w.w_reserve < 0.0 {
            return Err(InvalidConfig("objective weights must be non-negative".into()));
        }
        if w.penalty_infeasible <= 0.0 {
            return Err(InvalidConfig("penalty_infeasible must be strictly positive".into()));
        }
        Ok(())
    }
}

/// A common sensor with its live energy state.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorNode {
    pub id: usize,
    pub position: Position,
    pub e_init: f64,
    pub e_remaining: f64,
}

/// A high-energy sink node. Super nodes receive data but never sense.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperNode {
    pub id: usize,
    pub position: Position,
    pub e_remaining: f64,
}

/// A point that must stay covered.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub id: usize,
    pub position: Position,
}

/// The placed network: sensors, super nodes and targets with dense ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub sensors: Vec<SensorNode>,
    pub supernodes: Vec<SuperNode>,
    pub targets: Vec<Target>,
}

impl Network {
    /// Total remaining energy over sensors and super nodes, joules.
    pub fn total_remaining(&self) -> f64 {
        self.sensors.iter().map(|s| s.e_remaining).sum::<f64>()
            + self.supernodes.iter().map(|s| s.e_remaining).sum::<f64>()
    }
}

/// Places sensors, super nodes and targets independently and uniformly in
/// the square area, in that fixed order, and charges initial energies.
///
/// The draw order is part of the reproducibility contract: for each entity,
/// x then y.
pub fn place_uniform<R: Rng>(config: &NetworkConfig, rng: &mut R) -> Network {
    let side = config.area_side;
    let point = |rng: &mut R| Position::new(rng.random_range(0.0..=side), rng.random_range(0.0..=side));

    let sensors = (0..config.n_sensors)
        .map(|id| SensorNode {
            id,
            position: point(rng),
            e_init: config.e_init_sensor,
            e_remaining: config.e_init_sensor,
        })
        .collect();
    let supernodes = (0..config.n_supernodes)
        .map(|id| SuperNode {
            id,
            position: point(rng),
            e_remaining: config.e_init_super,
        })
        .collect();
    let targets = (0..config.n_targets)
        .map(|id| Target {
            id,
            position: point(rng),
        })
        .collect();

    Network {
        sensors,
        supernodes,
        targets,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{substream, Stream};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn distance_three_four_five() {
        let a = Position::new(0.0, 0.0);
        let b = Position::new(3.0, 4.0);
        assert_eq!(a.distance(&b), 5.0);
    }

    #[test]
    fn distance_identity_is_zero() {
        let p = Position::new(12.5, -3.0);
        assert_eq!(p.distance(&p), 0.0);
    }

    #[test]
    fn distance_across_area_diagonal() {
        let a = Position::new(0.0, 0.0);
        let b = Position::new(500.0, 500.0);
        assert_relative_eq!(a.distance(&b), 500.0 * 2f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn default_config_is_valid() {
        NetworkConfig::default().validate().unwrap();
    }

    #[test]
    fn zero_sensor_count_rejected() {
        let cfg = NetworkConfig {
            n_sensors: 0,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn supernode_count_must_stay_below_sensor_count() {
        let cfg = NetworkConfig {
            n_sensors: 25,
            n_supernodes: 25,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn comm_range_below_sensing_range_rejected() {
        let cfg = NetworkConfig {
            r_comm: 50.0,
            r_sense: 60.0,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn placement_is_reproducible() {
        let cfg = NetworkConfig::default();
        let a = place_uniform(&cfg, &mut substream(42, Stream::Placement));
        let b = place_uniform(&cfg, &mut substream(42, Stream::Placement));
        assert_eq!(a, b);
        let c = place_uniform(&cfg, &mut substream(43, Stream::Placement));
        assert_ne!(a, c);
    }

    #[test]
    fn placement_stays_inside_area_and_charges_energy() {
        let cfg = NetworkConfig::default();
        for seed in [1u64, 2, 99] {
            let net = place_uniform(&cfg, &mut substream(seed, Stream::Placement));
            assert_eq!(net.sensors.len(), 300);
            assert_eq!(net.supernodes.len(), 25);
            assert_eq!(net.targets.len(), 20);
            let all = net
                .sensors
                .iter()
                .map(|s| s.position)
                .chain(net.supernodes.iter().map(|s| s.position))
                .chain(net.targets.iter().map(|t| t.position));
            for p in all {
                assert!((0.0..=500.0).contains(&p.x) && (0.0..=500.0).contains(&p.y));
            }
            assert!(net.sensors.iter().all(|s| s.e_remaining == 0.1));
            assert!(net.supernodes.iter().all(|s| s.e_remaining == 0.5));
        }
    }

    #[test]
    fn placement_ids_are_dense() {
        let cfg = NetworkConfig::default();
        let net = place_uniform(&cfg, &mut substream(5, Stream::Placement));
        assert!(net.sensors.iter().enumerate().all(|(i, s)| s.id == i));
        assert!(net.supernodes.iter().enumerate().all(|(i, s)| s.id == i));
        assert!(net.targets.iter().enumerate().all(|(i, t)| t.id == i));
    }

    #[test]
    fn placement_quadrants_are_balanced() {
        // 10^5 sensors; each quadrant should get 25% +/- 1% (the binomial
        // noise floor is about 0.14%, so this never flakes).
        let cfg = NetworkConfig {
            n_sensors: 100_000,
            n_supernodes: 1,
            n_targets: 1,
            ..NetworkConfig::default()
        };
        let net = place_uniform(&cfg, &mut substream(7, Stream::Placement));
        let half = cfg.area_side / 2.0;
        let mut quads = [0usize; 4];
        for s in &net.sensors {
            let q = (s.position.x >= half) as usize * 2 + (s.position.y >= half) as usize;
            quads[q] += 1;
        }
        for q in quads {
            let frac = q as f64 / 100_000.0;
            assert!((0.24..=0.26).contains(&frac), "quadrant fraction {frac}");
        }
    }

    proptest! {
        #[test]
        fn distance_symmetry_and_triangle(
            ax in -1e3f64..1e3, ay in -1e3f64..1e3,
            bx in -1e3f64..1e3, by in -1e3f64..1e3,
            cx in -1e3f64..1e3, cy in -1e3f64..1e3,
        ) {
            let a = Position::new(ax, ay);
            let b = Position::new(bx, by);
            let c = Position::new(cx, cy);
            prop_assert_eq!(a.distance(&b), b.distance(&a));
            prop_assert!(a.distance(&c) <= a.distance(&b) + b.distance(&c) + 1e-9);
            prop_assert!(a.distance(&b) >= 0.0);
        }
    }
}
