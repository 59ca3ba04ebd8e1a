//! Distributed waiting-time contest, the alternative to annealing.
//!
//! Every node waits a time derived from its own state before announcing
//! itself. Ineligible nodes wait the whole window `w` and never announce.
//! Eligible nodes wait a fraction of `w` that shrinks with remaining energy
//! and with the number of targets they see, blended half and half, so
//! well-charged sensors seeing many targets fire first. A node that fires
//! while it still sees an uncovered target becomes a monitor.

use crate::coverage::CoverageTable;
use crate::model::Network;
use crate::sa::{Chromosome, Uncoverable};

/// Blend between the energy deficit and the target-count deficit in the
/// waiting time.
const ENERGY_WEIGHT: f64 = 0.5;

/// Waiting time of one node. Ineligible nodes wait the full window.
fn waiting_time(
    network: &Network,
    coverage: &CoverageTable,
    eligible: &[bool],
    w: f64,
    m_max: usize,
    n: usize,
) -> f64 {
    if !eligible[n] {
        return w;
    }
    let s = &network.sensors[n];
    let energy_deficit = 1.0 - s.e_remaining / s.e_init;
    let target_deficit = if m_max > 0 {
        1.0 - coverage.m[n] as f64 / m_max as f64
    } else {
        1.0
    };
    w * (ENERGY_WEIGHT * energy_deficit + (1.0 - ENERGY_WEIGHT) * target_deficit)
}

/// Runs the contest: nodes fire in ascending waiting-time order (ties by
/// id); a firing eligible node that still sees an uncovered target becomes
/// a monitor and covers its targets. Fails when the window closes with a
/// target still uncovered.
pub fn contest_select(
    network: &Network,
    coverage: &CoverageTable,
    eligible: &[bool],
    w: f64,
) -> Result<Chromosome, Uncoverable> {
    assert!(w > 0.0, "contest window must be positive");
    let n = network.sensors.len();
    let m_max = (0..n)
        .filter(|&i| eligible[i])
        .map(|i| coverage.m[i])
        .max()
        .unwrap_or(0);

    let mut order: Vec<(f64, usize)> = (0..n)
        .map(|i| (waiting_time(network, coverage, eligible, w, m_max, i), i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

    let mut chromosome = Chromosome::zeros(n);
    let mut covered = vec![false; coverage.n_targets()];
    for (_, i) in order {
        if !eligible[i] {
            continue; // waited the whole window; never a monitor
        }
        if coverage.targets_of[i].iter().any(|&k| !covered[k]) {
            chromosome.set(i, true);
            for &k in &coverage.targets_of[i] {
                covered[k] = true;
            }
        }
    }

    match covered.iter().position(|&c| !c) {
        Some(target) => Err(Uncoverable { target }),
        None => Ok(chromosome),
    }
}
