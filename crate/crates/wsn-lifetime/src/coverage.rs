//! Sensor-to-target coverage, the communication graph, feasibility and
//! relay routing.
//!
//! Boundary semantics follow the network definitions exactly and are
//! asymmetric on purpose: a target at distance exactly `r_sense` is covered,
//! while two nodes at distance exactly `r_comm` cannot communicate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::model::{Network, NetworkConfig};
use crate::sa::Chromosome;

/// A vertex of the communication graph.
///
/// The derived ordering (sensors before super nodes, then by id) is the one
/// used for lexicographic path tie-breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Sensor(usize),
    Super(usize),
}

impl Vertex {
    pub fn is_super(&self) -> bool {
        matches!(self, Vertex::Super(_))
    }
}

/// Which sensor covers which target.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageTable {
    covers: Vec<Vec<bool>>,
    /// Targets inside each sensor's sensing disk (`Tars_n`).
    pub targets_of: Vec<Vec<usize>>,
    /// Number of targets each sensor covers (`m_n`).
    pub m: Vec<usize>,
    /// Sensors covering each target (the transpose of `targets_of`).
    pub coverers: Vec<Vec<usize>>,
}

impl CoverageTable {
    pub fn covered(&self, sensor: usize, target: usize) -> bool {
        self.covers[sensor][target]
    }

    pub fn n_sensors(&self) -> usize {
        self.covers.len()
    }

    pub fn n_targets(&self) -> usize {
        self.coverers.len()
    }
}

/// Builds the coverage relation: sensor `n` covers target `k` iff their
/// distance is at most `r_sense`.
pub fn build_coverage(network: &Network, config: &NetworkConfig) -> CoverageTable {
    let n = network.sensors.len();
    let k = network.targets.len();
    let mut covers = vec![vec![false; k]; n];
    let mut targets_of = vec![Vec::new(); n];
    let mut m = vec![0usize; n];
    let mut coverers = vec![Vec::new(); k];
    for s in &network.sensors {
        for t in &network.targets {
            if s.position.distance(&t.position) <= config.r_sense {
                covers[s.id][t.id] = true;
                targets_of[s.id].push(t.id);
                coverers[t.id].push(s.id);
                m[s.id] += 1;
            }
        }
    }
    CoverageTable {
        covers,
        targets_of,
        m,
        coverers,
    }
}

/// Undirected communication graph over sensors and super nodes.
///
/// Vertices are indexed flat: sensors `0..N`, super nodes `N..N+M`. An edge
/// exists iff the Euclidean distance is strictly below `r_comm`. Super nodes
/// that can no longer receive a packet are kept as vertices but lose all
/// their edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CommGraph {
    n_sensors: usize,
    n_supers: usize,
    adj: Vec<Vec<(usize, f64)>>,
}

impl CommGraph {
    pub fn n_sensors(&self) -> usize {
        self.n_sensors
    }

    pub fn n_supers(&self) -> usize {
        self.n_supers
    }

    pub fn vertex_count(&self) -> usize {
        self.n_sensors + self.n_supers
    }

    pub fn flat(&self, v: Vertex) -> usize {
        match v {
            Vertex::Sensor(i) => i,
            Vertex::Super(i) => self.n_sensors + i,
        }
    }

    pub fn unflat(&self, i: usize) -> Vertex {
        if i < self.n_sensors {
            Vertex::Sensor(i)
        } else {
            Vertex::Super(i - self.n_sensors)
        }
    }

    pub fn edge_len(&self, a: Vertex, b: Vertex) -> Option<f64> {
        let (a, b) = (self.flat(a), self.flat(b));
        self.adj[a].iter().find(|(v, _)| *v == b).map(|(_, w)| *w)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.edge_len(a, b).is_some()
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = (Vertex, f64)> + '_ {
        self.adj[self.flat(v)]
            .iter()
            .map(|&(u, w)| (self.unflat(u), w))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Builds the communication graph. Super nodes whose remaining energy is
/// below one packet reception are disconnected (they have left the network).
pub fn build_comm_graph(network: &Network, config: &NetworkConfig) -> CommGraph {
    let alive: Vec<bool> = network
        .supernodes
        .iter()
        .map(|s| s.e_remaining >= config.packet_bits * config.e_elec)
        .collect();
    build_comm_graph_masked(network, config, &alive)
}

/// As [`build_comm_graph`], but with an explicit super-node availability
/// mask (used when a super node must be excluded mid-round).
pub fn build_comm_graph_masked(
    network: &Network,
    config: &NetworkConfig,
    super_available: &[bool],
) -> CommGraph {
    let n = network.sensors.len();
    let m = network.supernodes.len();
    let mut adj = vec![Vec::new(); n + m];
    let pos = |i: usize| {
        if i < n {
            network.sensors[i].position
        } else {
            network.supernodes[i - n].position
        }
    };
    let usable = |i: usize| i < n || super_available[i - n];
    for a in 0..n + m {
        if !usable(a) {
            continue;
        }
        for b in a + 1..n + m {
            if !usable(b) {
                continue;
            }
            let d = pos(a).distance(&pos(b));
            if d < config.r_comm {
                adj[a].push((b, d));
                adj[b].push((a, d));
            }
        }
    }
    CommGraph {
        n_sensors: n,
        n_supers: m,
        adj,
    }
}

/// One monitor's path to a super node, with per-hop Euclidean lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct MonitorRoute {
    pub monitor: usize,
    /// `vertices[0]` is the monitor; the last vertex is the only super node.
    pub vertices: Vec<Vertex>,
    /// `hop_lengths[i]` is the length of edge `vertices[i] -> vertices[i+1]`.
    pub hop_lengths: Vec<f64>,
}

impl MonitorRoute {
    pub fn hop_count(&self) -> usize {
        self.hop_lengths.len()
    }

    pub fn terminal_super(&self) -> usize {
        match *self.vertices.last().expect("route is never empty") {
            Vertex::Super(i) => i,
            Vertex::Sensor(_) => unreachable!("route must end at a super node"),
        }
    }

    /// Sensors strictly between the monitor and the super node.
    pub fn interior_sensors(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices[1..self.vertices.len() - 1]
            .iter()
            .map(|v| match v {
                Vertex::Sensor(i) => *i,
                Vertex::Super(_) => unreachable!("super node before the end of a route"),
            })
    }
}

/// Routes for every monitor of a round.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RelayPlan {
    pub routes: Vec<MonitorRoute>,
}

impl RelayPlan {
    /// Monitor ids, ascending.
    pub fn monitors(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.routes.iter().map(|r| r.monitor).collect();
        ids.sort_unstable();
        ids
    }

    /// Distinct sensors that forward at least one packet, ascending. A
    /// monitor appearing inside another monitor's path is included here too.
    pub fn relay_sensors(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .routes
            .iter()
            .flat_map(|r| r.interior_sensors())
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Distinct active sensors: monitors plus relays, ascending.
    pub fn active_sensors(&self) -> Vec<usize> {
        let mut ids = self.monitors();
        ids.extend(self.relay_sensors());
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn reached_super(&self, monitor: usize) -> Option<usize> {
        self.routes
            .iter()
            .find(|r| r.monitor == monitor)
            .map(|r| r.terminal_super())
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Cost {
    hops: u32,
    len: f64,
}

impl Cost {
    fn cmp(&self, other: &Cost) -> Ordering {
        self.hops
            .cmp(&other.hops)
            .then_with(|| self.len.total_cmp(&other.len))
    }
}

struct HeapEntry {
    cost: Cost,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    // Reversed: BinaryHeap is a max-heap and we want the cheapest entry.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .cmp(&self.cost)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Minimum-hop route from `monitor` to any super node, passing only through
/// eligible sensors.
///
/// Ties are broken in order: smallest total Euclidean length, smallest
/// terminal super-node id, lexicographically smallest vertex sequence.
/// Returns `None` when no super node is reachable.
pub fn relay_route(graph: &CommGraph, monitor: usize, eligible: &[bool]) -> Option<MonitorRoute> {
    if monitor >= graph.n_sensors || !eligible[monitor] {
        return None;
    }
    let nv = graph.vertex_count();
    let mut best: Vec<Option<Cost>> = vec![None; nv];
    let mut parent: Vec<usize> = vec![usize::MAX; nv];
    let mut heap = BinaryHeap::new();

    let path_of = |parent: &[usize], mut v: usize| -> Vec<usize> {
        let mut p = Vec::new();
        while v != usize::MAX {
            p.push(v);
            v = parent[v];
        }
        p.reverse();
        p
    };

    best[monitor] = Some(Cost { hops: 0, len: 0.0 });
    heap.push(HeapEntry {
        cost: Cost { hops: 0, len: 0.0 },
        vertex: monitor,
    });
    // Cheapest super found so far; popping past it cannot improve anything.
    let mut super_bound: Option<Cost> = None;

    while let Some(HeapEntry { cost, vertex }) = heap.pop() {
        match best[vertex] {
            Some(b) if b.cmp(&cost) == Ordering::Less => continue, // stale entry
            _ => {}
        }
        if let Some(bound) = super_bound {
            if cost.cmp(&bound) == Ordering::Greater {
                break;
            }
        }
        if vertex >= graph.n_sensors {
            continue; // super nodes terminate routes, never forward
        }
        // Interior vertices must be eligible sensors; the monitor itself is
        // always expandable.
        if vertex != monitor && !eligible[vertex] {
            continue;
        }
        for &(next, w) in &graph.adj[vertex] {
            if next < graph.n_sensors && !eligible[next] {
                continue;
            }
            let cand = Cost {
                hops: cost.hops + 1,
                len: cost.len + w,
            };
            let replace = match best[next] {
                None => true,
                Some(old) => match cand.cmp(&old) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => {
                        // Exact cost tie: keep the lexicographically smaller
                        // path. Ties are rare, so rebuilding both is cheap.
                        let mut via = path_of(&parent, vertex);
                        via.push(next);
                        via < path_of(&parent, next)
                    }
                },
            };
            if replace {
                best[next] = Some(cand);
                parent[next] = vertex;
                heap.push(HeapEntry {
                    cost: cand,
                    vertex: next,
                });
                if next >= graph.n_sensors {
                    super_bound = Some(match super_bound {
                        Some(b) if b.cmp(&cand) != Ordering::Greater => b,
                        _ => cand,
                    });
                }
            }
        }
    }

    // Smallest-cost super, then smallest super id (flat order preserves it).
    let terminal = (graph.n_sensors..nv)
        .filter_map(|s| best[s].map(|c| (c, s)))
        .min_by(|(ca, sa), (cb, sb)| ca.cmp(cb).then_with(|| sa.cmp(sb)))?
        .1;

    let flat_path = path_of(&parent, terminal);
    let vertices: Vec<Vertex> = flat_path.iter().map(|&v| graph.unflat(v)).collect();
    let hop_lengths: Vec<f64> = flat_path
        .windows(2)
        .map(|w| {
            graph.adj[w[0]]
                .iter()
                .find(|(v, _)| *v == w[1])
                .map(|(_, len)| *len)
                .expect("consecutive path vertices share an edge")
        })
        .collect();
    Some(MonitorRoute {
        monitor,
        vertices,
        hop_lengths,
    })
}

/// Why a candidate active set is not feasible, if it isn't.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    /// Named target is covered by no active sensor (smallest id first).
    UncoveredTarget(usize),
    /// Named monitor has no relay route to a super node (smallest id first).
    UnroutableMonitor(usize),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// A set is feasible iff every target is covered by an active sensor and
/// every active sensor can reach a super node through eligible relays.
pub fn is_feasible(
    active: &Chromosome,
    coverage: &CoverageTable,
    graph: &CommGraph,
    eligible: &[bool],
) -> Feasibility {
    for (k, coverers) in coverage.coverers.iter().enumerate() {
        if !coverers.iter().any(|&n| active.is_set(n)) {
            return Feasibility::UncoveredTarget(k);
        }
    }
    for n in active.selected() {
        if relay_route(graph, n, eligible).is_none() {
            return Feasibility::UnroutableMonitor(n);
        }
    }
    Feasibility::Feasible
}
