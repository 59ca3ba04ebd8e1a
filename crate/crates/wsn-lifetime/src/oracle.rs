//! Independent brute-force references for desk-scale verification.
//!
//! `hop_oracle` is a plain breadth-first search used to cross-check the
//! relay router's hop counts; `min_cover_bruteforce` exhausts every subset
//! of eligible sensors to find the smallest feasible active set. Both stay
//! deliberately simple and share no search logic with the optimizer.

use std::collections::VecDeque;

use thiserror::Error;

use crate::coverage::{relay_route, CommGraph, CoverageTable, RelayPlan};
use crate::model::Network;
use crate::sa::Chromosome;

/// Exhaustive search is capped here; beyond it the subset space explodes.
pub const BRUTEFORCE_MAX_SENSORS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{n_sensors} sensors exceed the brute-force cap of {BRUTEFORCE_MAX_SENSORS}")]
pub struct TooLarge {
    pub n_sensors: usize,
}

/// Result of the exhaustive search.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    /// The smallest feasible active set (monitors plus distinct relays).
    Optimal {
        active_count: usize,
        chromosome: Chromosome,
        plan: RelayPlan,
    },
    /// No subset of eligible sensors covers all targets with routes.
    Infeasible,
}

/// Minimum-hop count from `src` to any super node through eligible sensors,
/// by breadth-first search.
pub fn hop_oracle(graph: &CommGraph, src: usize, eligible: &[bool]) -> Option<u32> {
    if src >= graph.n_sensors() || !eligible[src] {
        return None;
    }
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    seen[src] = true;
    queue.push_back((src, 0u32));
    while let Some((v, hops)) = queue.pop_front() {
        for (u, _) in graph.neighbors(graph.unflat(v)) {
            let uf = graph.flat(u);
            if seen[uf] {
                continue;
            }
            if u.is_super() {
                return Some(hops + 1);
            }
            if eligible[uf] {
                seen[uf] = true;
                queue.push_back((uf, hops + 1));
            }
        }
    }
    None
}

/// Exhausts all monitor subsets of the eligible sensors and returns the
/// smallest total active count among feasible ones, with a deterministic
/// tie-break on the lexicographically smallest chromosome.
pub fn min_cover_bruteforce(
    network: &Network,
    coverage: &CoverageTable,
    graph: &CommGraph,
    eligible: &[bool],
) -> Result<OracleOutcome, TooLarge> {
    let n = network.sensors.len();
    if n > BRUTEFORCE_MAX_SENSORS {
        return Err(TooLarge { n_sensors: n });
    }
    let k = coverage.n_targets();
    assert!(k <= 64, "oracle instances keep at most 64 targets");

    // Routes do not depend on the monitor set, so price each sensor once.
    let routes: Vec<_> = (0..n)
        .map(|s| {
            if eligible[s] {
                relay_route(graph, s, eligible)
            } else {
                None
            }
        })
        .collect();
    let target_mask: Vec<u64> = (0..n)
        .map(|s| {
            coverage.targets_of[s]
                .iter()
                .fold(0u64, |mask, &t| mask | 1 << t)
        })
        .collect();
    let relay_mask: Vec<u32> = routes
        .iter()
        .map(|r| {
            r.as_ref().map_or(0, |r| {
                r.interior_sensors().fold(0u32, |mask, v| mask | 1 << v)
            })
        })
        .collect();
    let full_cover = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };

    let mut best: Option<(usize, u32)> = None; // (active count, subset bits)
    for subset in 0u32..1 << n {
        let mut covered = 0u64;
        let mut relays = 0u32;
        let mut routable = true;
        for s in 0..n {
            if subset & (1 << s) != 0 {
                if !eligible[s] || routes[s].is_none() {
                    routable = false;
                    break;
                }
                covered |= target_mask[s];
                relays |= relay_mask[s];
            }
        }
        if !routable || covered != full_cover {
            continue;
        }
        let active = (subset | relays).count_ones() as usize;
        let better = match best {
            None => true,
            Some((count, incumbent)) => {
                active < count || (active == count && lex_smaller(subset, incumbent, n))
            }
        };
        if better {
            best = Some((active, subset));
        }
    }

    Ok(match best {
        None => OracleOutcome::Infeasible,
        Some((active_count, subset)) => {
            let bits: Vec<bool> = (0..n).map(|s| subset & (1 << s) != 0).collect();
            let chromosome = Chromosome::from_bits(bits);
            let plan = RelayPlan {
                routes: chromosome
                    .selected()
                    .map(|s| routes[s].clone().expect("selected sensors are routable"))
                    .collect(),
            };
            OracleOutcome::Optimal {
                active_count,
                chromosome,
                plan,
            }
        }
    })
}

/// Chromosome lexicographic order on bit sequences (false before true).
fn lex_smaller(a: u32, b: u32, n: usize) -> bool {
    for s in 0..n {
        let (ba, bb) = (a & (1 << s) != 0, b & (1 << s) != 0);
        if ba != bb {
            return !ba;
        }
    }
    false
}
