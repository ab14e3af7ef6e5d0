//! Machine-readable run reports and their human-readable rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::miner::MiningResult;
use crate::stats::MiningStats;

/// Echo of the configuration a report was produced under.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub input: String,
    pub tau: u32,
    pub k_max: usize,
    pub ordering: String,
    pub seed: Option<u64>,
    pub lemma_pruning: bool,
    pub threads: usize,
}

/// Everything a run reports besides the findings themselves.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    /// Findings per itemset size.
    pub counts_by_size: BTreeMap<usize, u64>,
    pub wall_ms: u64,
    pub peak_level_nodes: u64,
    pub stats: MiningStats,
}

impl RunReport {
    pub fn new(config: ConfigEcho, result: &MiningResult, wall_ms: u64) -> Self {
        let mut counts_by_size = BTreeMap::new();
        for f in &result.findings {
            *counts_by_size.entry(f.itemset.size()).or_insert(0u64) += 1;
        }
        RunReport {
            config,
            counts_by_size,
            wall_ms,
            peak_level_nodes: result.stats.peak_level_nodes(),
            stats: result.stats.clone(),
        }
    }

    /// Plain-text table: one row per level plus run totals.
    pub fn render_table(&self) -> String {
        let c = &self.config;
        let mut out = String::new();
        out.push_str(&format!(
            "input={} tau={} k_max={} order={}{} lemma={} threads={}\n",
            c.input,
            c.tau,
            c.k_max,
            c.ordering,
            c.seed.map_or(String::new(), |s| format!(" seed={s}")),
            if c.lemma_pruning { "on" } else { "off" },
            c.threads,
        ));
        let total: u64 = self.counts_by_size.values().sum();
        let by_size: Vec<String> =
            self.counts_by_size.iter().map(|(k, n)| format!("size {k}: {n}")).collect();
        out.push_str(&format!("findings: {total} ({})\n", by_size.join(", ")));
        out.push_str(&format!(
            "wall: {} ms   intersection: {:.1} ms   peak level nodes: {}   singletons: {}\n",
            self.wall_ms,
            self.stats.total_intersection_nanos() as f64 / 1e6,
            self.peak_level_nodes,
            self.stats.singletons_emitted,
        ));
        out.push_str(
            "level   visited         A         B         C   support     lemma  corollary      skip      drop    stored  workers(ms)\n",
        );
        for l in &self.stats.levels {
            let workers: Vec<String> =
                l.worker_micros.iter().map(|&us| format!("{:.1}", us as f64 / 1e3)).collect();
            out.push_str(&format!(
                "{:>5} {:>9} {:>9} {:>9} {:>9} {:>9} {:>9} {:>10} {:>9} {:>9} {:>9}  {}\n",
                l.k,
                l.visited,
                l.type_a(),
                l.type_b(),
                l.type_c(),
                l.pruned_support,
                l.pruned_lemma,
                l.pruned_corollary,
                l.skipped_absent_uniform,
                l.dropped_frequent_last,
                l.stored,
                workers.join("/"),
            ));
        }
        out
    }
}
