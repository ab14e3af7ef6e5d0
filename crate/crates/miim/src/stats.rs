//! Candidate accounting and timing for a mining run.
//!
//! Every candidate visited at a level lands in exactly one bucket:
//! type A (emitted as a minimal infrequent itemset), type B (pruned before
//! any row intersection) or type C (intersected but not emitted — stored,
//! discarded as absent/uniform, or dropped as frequent at the last level).

use serde::{Deserialize, Serialize};

/// Counters for one level; `k` is the candidate itemset size.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct LevelStats {
    pub k: usize,
    /// Candidate pairs joined at this level.
    pub visited: u64,
    /// Type A: emitted minimal infrequent itemsets (lead items only).
    pub emitted: u64,
    /// Shadow-swap variants emitted alongside type-A sets.
    pub expanded_shadows: u64,
    /// Type B: pruned by the subset-support lookup.
    pub pruned_support: u64,
    /// Type B: pruned by the cardinality sum bound.
    pub pruned_lemma: u64,
    /// Type B: pruned by the sibling cardinality-gap bound.
    pub pruned_corollary: u64,
    /// Type C: intersected, then discarded as absent or uniform.
    pub skipped_absent_uniform: u64,
    /// Type C: intersected at the last level and frequent, so never stored.
    pub dropped_frequent_last: u64,
    /// Type C: stored for the next level.
    pub stored: u64,
    /// Time spent inside row-set intersections, summed over workers.
    pub intersection_nanos: u64,
    /// Wall time each worker spent on this level.
    pub worker_micros: Vec<u64>,
}

impl LevelStats {
    pub fn new(k: usize) -> Self {
        LevelStats { k, ..Default::default() }
    }

    pub fn type_a(&self) -> u64 {
        self.emitted
    }

    pub fn type_b(&self) -> u64 {
        self.pruned_support + self.pruned_lemma + self.pruned_corollary
    }

    pub fn type_c(&self) -> u64 {
        self.skipped_absent_uniform + self.dropped_frequent_last + self.stored
    }

    /// Sums another stat block's counters into this one (timings included,
    /// worker wall times excluded).
    pub fn absorb(&mut self, other: &LevelStats) {
        self.visited += other.visited;
        self.emitted += other.emitted;
        self.expanded_shadows += other.expanded_shadows;
        self.pruned_support += other.pruned_support;
        self.pruned_lemma += other.pruned_lemma;
        self.pruned_corollary += other.pruned_corollary;
        self.skipped_absent_uniform += other.skipped_absent_uniform;
        self.dropped_frequent_last += other.dropped_frequent_last;
        self.stored += other.stored;
        self.intersection_nanos += other.intersection_nanos;
    }

    /// Every visited candidate is in exactly one bucket.
    pub fn assert_consistent(&self) {
        assert_eq!(
            self.visited,
            self.type_a() + self.type_b() + self.type_c(),
            "level {} candidate accounting out of balance",
            self.k
        );
    }
}

/// Statistics of a whole run.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MiningStats {
    /// One entry per level actually walked, `k = 2` first.
    pub levels: Vec<LevelStats>,
    /// Infrequent singletons emitted before any level walk.
    pub singletons_emitted: u64,
    /// High-water mark of levels resident at once; the walk keeps at most
    /// the level being read and the level being built.
    pub max_resident_levels: u32,
    pub wall_nanos: u64,
}

impl MiningStats {
    pub fn total_visited(&self) -> u64 {
        self.levels.iter().map(|l| l.visited).sum()
    }

    pub fn total_emitted_sets(&self) -> u64 {
        self.levels.iter().map(|l| l.emitted).sum()
    }

    pub fn total_expanded_shadows(&self) -> u64 {
        self.levels.iter().map(|l| l.expanded_shadows).sum()
    }

    pub fn total_intersection_nanos(&self) -> u64 {
        self.levels.iter().map(|l| l.intersection_nanos).sum()
    }

    /// Largest stored level.
    pub fn peak_level_nodes(&self) -> u64 {
        self.levels.iter().map(|l| l.stored).max().unwrap_or(0)
    }

    pub fn assert_consistent(&self) {
        for level in &self.levels {
            level.assert_consistent();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn buckets_partition_visited() {
        let mut l = LevelStats::new(3);
        l.visited = 10;
        l.emitted = 1;
        l.pruned_support = 3;
        l.pruned_lemma = 4;
        l.pruned_corollary = 2;
        l.assert_consistent();
        assert_eq!(l.type_b(), 9);
        assert_eq!(l.type_c(), 0);
    }

    #[test]
    #[should_panic(expected = "out of balance")]
    fn inconsistent_accounting_panics() {
        let mut l = LevelStats::new(2);
        l.visited = 5;
        l.stored = 1;
        l.assert_consistent();
    }

    #[test]
    fn absorb_sums_counters() {
        let mut a = LevelStats::new(2);
        a.visited = 2;
        a.stored = 2;
        let mut b = LevelStats::new(2);
        b.visited = 3;
        b.stored = 1;
        b.emitted = 2;
        a.absorb(&b);
        assert_eq!(a.visited, 5);
        assert_eq!(a.stored, 3);
        a.assert_consistent();
    }
}
