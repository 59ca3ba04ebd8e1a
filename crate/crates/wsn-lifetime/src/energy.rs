//! First-order radio energy model, per-round cost accounting, and the
//! energy eligibility rule.
//!
//! Transmitting `l` bits over distance `d` costs `l*e_elec + l*eps_fs*d^2`
//! below the branch distance `d0` and `l*e_elec + l*eps_mp*d^4` at or above
//! it; receiving costs `l*e_elec`. Because `d0 = sqrt(eps_fs/eps_mp)`, the
//! transmit cost is continuous at the branch point.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coverage::RelayPlan;
use crate::model::{Network, NetworkConfig, SensorNode};

/// Radio constants plus packet length and the optional sensing cost.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyModel {
    /// Electronics energy, joules per bit.
    pub e_elec: f64,
    /// Open-space amplifier, joules per bit per m^2.
    pub eps_fs: f64,
    /// Multi-path amplifier, joules per bit per m^4.
    pub eps_mp: f64,
    /// Amplifier branch distance, meters.
    pub d0: f64,
    /// Packet length, bits.
    pub packet_bits: f64,
    /// Extra per-round cost charged to each monitor, joules.
    pub sensing_cost: f64,
}

impl EnergyModel {
    pub fn from_config(config: &NetworkConfig) -> Self {
        Self {
            e_elec: config.e_elec,
            eps_fs: config.eps_fs,
            eps_mp: config.eps_mp,
            d0: config.d0(),
            packet_bits: config.packet_bits,
            sensing_cost: config.sensing_cost,
        }
    }

    /// Energy to transmit `l` bits over `d` meters.
    pub fn tx_energy(&self, l: f64, d: f64) -> f64 {
        if d < self.d0 {
            l * self.e_elec + l * self.eps_fs * d * d
        } else {
            l * self.e_elec + l * self.eps_mp * d * d * d * d
        }
    }

    /// Energy to receive `l` bits.
    pub fn rx_energy(&self, l: f64) -> f64 {
        l * self.e_elec
    }

    /// Worst-case energy a sensor may spend in one round: one monitor
    /// transmission plus one relayed packet, both over a full-range hop.
    ///
    /// A sensor below this bound cannot safely serve and is ineligible.
    pub fn eligibility_threshold(&self, r_comm: f64) -> f64 {
        let e_s1_max = self.tx_energy(self.packet_bits, r_comm) + self.sensing_cost;
        let e_c1_max = self.rx_energy(self.packet_bits) + self.tx_energy(self.packet_bits, r_comm);
        e_s1_max + e_c1_max
    }
}

/// A sensor remains eligible while it holds at least the worst-case
/// per-round energy (equality counts as eligible).
pub fn eligible(node: &SensorNode, threshold: f64) -> bool {
    node.e_remaining >= threshold
}

/// Per-sensor eligibility vector.
pub fn eligibility(network: &Network, threshold: f64) -> Vec<bool> {
    network
        .sensors
        .iter()
        .map(|s| eligible(s, threshold))
        .collect()
}

/// Charge to one sensor this round, split by role.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorCharge {
    pub sensor: usize,
    /// Monitor share: first-hop transmission plus sensing cost.
    pub monitor_j: f64,
    /// Relay share: receive plus forward, summed over forwarded packets.
    pub relay_j: f64,
}

impl SensorCharge {
    pub fn total(&self) -> f64 {
        self.monitor_j + self.relay_j
    }
}

/// Receive charge to one super node this round.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperCharge {
    pub supernode: usize,
    pub rx_j: f64,
}

/// All charges of one round, sparse over the nodes actually used.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RoundCosts {
    pub sensors: Vec<SensorCharge>,
    pub supernodes: Vec<SuperCharge>,
}

impl RoundCosts {
    pub fn total_j(&self) -> f64 {
        self.sensors.iter().map(SensorCharge::total).sum::<f64>()
            + self.supernodes.iter().map(|s| s.rx_j).sum::<f64>()
    }

    pub fn sensor_charge(&self, sensor: usize) -> f64 {
        self.sensors
            .iter()
            .find(|c| c.sensor == sensor)
            .map(SensorCharge::total)
            .unwrap_or(0.0)
    }

    pub fn super_charge(&self, supernode: usize) -> f64 {
        self.supernodes
            .iter()
            .find(|c| c.supernode == supernode)
            .map(|c| c.rx_j)
            .unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty() && self.supernodes.is_empty()
    }
}

/// Prices a relay plan: each monitor pays its first hop, each relay pays
/// receive-plus-forward per packet passing through it, and each terminal
/// super node pays one reception per packet delivered to it.
pub fn round_costs(plan: &RelayPlan, model: &EnergyModel) -> RoundCosts {
    let l = model.packet_bits;
    let mut sensors: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    let mut supers: BTreeMap<usize, f64> = BTreeMap::new();

    for route in &plan.routes {
        let charge = sensors.entry(route.monitor).or_insert((0.0, 0.0));
        charge.0 += model.tx_energy(l, route.hop_lengths[0]) + model.sensing_cost;

        for (slot, relay) in route.interior_sensors().enumerate() {
            let forward_hop = route.hop_lengths[slot + 1];
            let charge = sensors.entry(relay).or_insert((0.0, 0.0));
            charge.1 += model.rx_energy(l) + model.tx_energy(l, forward_hop);
        }

        *supers.entry(route.terminal_super()).or_insert(0.0) += model.rx_energy(l);
    }

    RoundCosts {
        sensors: sensors
            .into_iter()
            .map(|(sensor, (monitor_j, relay_j))| SensorCharge {
                sensor,
                monitor_j,
                relay_j,
            })
            .collect(),
        supernodes: supers
            .into_iter()
            .map(|(supernode, rx_j)| SuperCharge { supernode, rx_j })
            .collect(),
    }
}

/// A charge exceeded a node's remaining energy. This indicates a planner
/// bug: plans must be built so that every charge is payable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NegativeEnergy {
    #[error("sensor {id}: charge {charge} J exceeds remaining {remaining} J")]
    Sensor { id: usize, charge: f64, remaining: f64 },
    #[error("super node {id}: charge {charge} J exceeds remaining {remaining} J")]
    Super { id: usize, charge: f64, remaining: f64 },
}

/// Subtracts the round's charges from the network. Nodes without a charge
/// (sleeping sensors) are untouched; no charge may exceed the node's
/// remaining energy.
pub fn apply_round(network: &mut Network, costs: &RoundCosts) -> Result<(), NegativeEnergy> {
    for c in &costs.sensors {
        let remaining = network.sensors[c.sensor].e_remaining;
        if c.total() > remaining {
            return Err(NegativeEnergy::Sensor {
                id: c.sensor,
                charge: c.total(),
                remaining,
            });
        }
    }
    for c in &costs.supernodes {
        let remaining = network.supernodes[c.supernode].e_remaining;
        if c.rx_j > remaining {
            return Err(NegativeEnergy::Super {
                id: c.supernode,
                charge: c.rx_j,
                remaining,
            });
        }
    }
    for c in &costs.sensors {
        network.sensors[c.sensor].e_remaining -= c.total();
    }
    for c in &costs.supernodes {
        network.supernodes[c.supernode].e_remaining -= c.rx_j;
    }
    Ok(())
}
