//! Greedy assignment of per-level work to a fixed pool of workers.
//!
//! Work estimates come from candidate counts, which are known exactly
//! before a level runs: a first-level item leads one join per
//! higher-ordered item, and a deeper group of g siblings yields g·(g−1)/2
//! joins. Units are placed, in order, on the least-loaded worker.

use serde::Serialize;

/// Deterministic assignment of work units to workers.
#[derive(Clone, Debug, Serialize)]
pub struct WorkPlan {
    /// Unit indices per worker, in placement order.
    pub assignments: Vec<Vec<usize>>,
    /// Estimated load per worker.
    pub load: Vec<u64>,
}

/// Joins led by the first-level item at `rank` of `total` items: one per
/// strictly higher-ordered item.
pub fn estimate_singleton_work(rank: usize, total: usize) -> u64 {
    debug_assert!(rank < total);
    (total - 1 - rank) as u64
}

/// Joins inside a deeper-level group: all sibling pairs.
pub fn estimate_group_work(group_size: usize) -> u64 {
    let g = group_size as u64;
    g * g.saturating_sub(1) / 2
}

/// Places each unit, in index order, on the worker with the smallest load
/// so far; ties go to the lowest worker index.
pub fn plan(unit_loads: &[u64], workers: usize) -> WorkPlan {
    assert!(workers >= 1, "need at least one worker");
    let mut assignments = vec![Vec::new(); workers];
    let mut load = vec![0u64; workers];
    for (unit, &cost) in unit_loads.iter().enumerate() {
        let w = load
            .iter()
            .enumerate()
            .min_by_key(|&(i, &l)| (l, i))
            .map(|(i, _)| i)
            .unwrap();
        assignments[w].push(unit);
        load[w] += cost;
    }
    WorkPlan { assignments, load }
}
