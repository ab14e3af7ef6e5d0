//! Shared fixtures and helpers for the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use miim::miner::{mine, MinerConfig, MiningResult};
use miim::model::{Dataset, Finding, ItemRef};
use miim::oracle;
use miim::preprocess::{alternative_orderings, decompose, extract_items, ItemUniverse, OrderingMode};

/// 4x4 table: three overlapping frequent values, one uniform column, three
/// one-row values. The only minimal infrequent pair-or-larger set at
/// `tau = 1` is the triple of frequent values, isolating row 0.
pub fn example_small() -> Dataset {
    Dataset::from_rows(&[&[1, 2, 3, 4], &[1, 2, 7, 4], &[1, 6, 3, 4], &[5, 2, 3, 4]])
}

/// `example_small` plus a fifth column whose value 8 matches value 1 of
/// column 0 on exactly the same rows, making it a duplicate-row-set item.
pub fn example_shadow() -> Dataset {
    Dataset::from_rows(&[
        &[1, 2, 3, 4, 8],
        &[1, 2, 7, 4, 8],
        &[1, 6, 3, 4, 8],
        &[5, 2, 3, 4, 9],
    ])
}

/// 7x5 table with five frequent values (one per column, each on four rows)
/// and fifteen one-row values. Exercises every prune at the last level.
pub fn example_seven() -> Dataset {
    Dataset::from_rows(&[
        &[101, 102, 103, 4, 104],
        &[1, 2, 105, 4, 106],
        &[1, 2, 3, 4, 107],
        &[1, 2, 3, 4, 5],
        &[1, 108, 3, 109, 5],
        &[110, 2, 3, 111, 5],
        &[112, 113, 114, 115, 5],
    ])
}

pub fn universe_of(d: &Dataset, tau: u32) -> ItemUniverse {
    decompose(extract_items(d), tau, d.rows() as u32).expect("valid tau")
}

/// Mines with explicit knobs; ascending order unless told otherwise.
pub fn mine_with(
    d: &Dataset,
    tau: u32,
    k_max: usize,
    ordering: OrderingMode,
    lemma_pruning: bool,
    threads: usize,
) -> MiningResult {
    let u = universe_of(d, tau);
    let order = alternative_orderings(&u, ordering);
    let cfg = MinerConfig { tau, k_max, ordering, lemma_pruning, threads };
    mine(&u, &order, &cfg).expect("mining succeeds")
}

/// Single-threaded ascending mine with all prunes on.
pub fn mine_simple(d: &Dataset, tau: u32, k_max: usize) -> MiningResult {
    mine_with(d, tau, k_max, OrderingMode::Ascending, true, 1)
}

/// Builds a finding from `(col, value)` pairs for golden comparisons.
pub fn finding(pairs: &[(u32, u32)], freq: u32) -> Finding {
    Finding {
        itemset: miim::model::Itemset::new(
            pairs.iter().map(|&(col, value)| ItemRef { col, value }).collect(),
        ),
        freq,
    }
}

/// Brute-force findings restricted to the miner's emission convention:
/// at most one duplicate-row-set item per set (the miner reports the
/// representative set plus each single swap, never multi-swaps).
pub fn oracle_filtered(d: &Dataset, tau: u32, k_max: usize) -> Vec<Finding> {
    let u = universe_of(d, tau);
    let shadows: HashSet<ItemRef> = u
        .shadow_map()
        .values()
        .flatten()
        .map(|&id| u.item(id).item_ref())
        .collect();
    oracle::oracle_mine_with_limit(d, tau, k_max, usize::MAX)
        .expect("oracle succeeds")
        .into_iter()
        .filter(|f| f.itemset.items().iter().filter(|r| shadows.contains(r)).count() <= 1)
        .collect()
}

/// Asserts two finding lists are identical, printing the first divergence.
pub fn assert_same_findings(actual: &[Finding], expected: &[Finding], context: &str) {
    if actual == expected {
        return;
    }
    let a: HashSet<&Finding> = actual.iter().collect();
    let e: HashSet<&Finding> = expected.iter().collect();
    let missing: Vec<_> = expected.iter().filter(|f| !a.contains(f)).collect();
    let extra: Vec<_> = actual.iter().filter(|f| !e.contains(f)).collect();
    panic!(
        "{context}: findings diverge\n  missing ({}): {:?}\n  extra ({}): {:?}",
        missing.len(),
        missing.iter().take(5).collect::<Vec<_>>(),
        extra.len(),
        extra.iter().take(5).collect::<Vec<_>>(),
    );
}
