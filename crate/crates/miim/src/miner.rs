//! Level-wise search for minimal infrequent itemsets over ordered leads.
//!
//! Candidates of size k are formed by joining two stored (k−1)-sets that
//! differ only in their last item, so the walk is a breadth-first pass over
//! a prefix tree of the item order. At most two levels are alive at once:
//! the one being read and the one being built. Emitted sets are expanded
//! with single shadow swaps; infrequent singletons are emitted up front.
//!
//! Three prunes avoid row intersections entirely: a subset-support lookup
//! (some (k−1)-subset was not stored, so it cannot be frequent), and — on
//! the final level only, where nothing is stored for later — two
//! cardinality bounds computed from counts cached on the nodes.

use std::collections::HashMap;
use std::thread;
use std::time::Instant;

use thiserror::Error;

use crate::model::{Finding, ItemId, Itemset, RowSet};
use crate::preprocess::{ItemUniverse, OrderedItemList, OrderingMode};
use crate::scheduler;
use crate::stats::{LevelStats, MiningStats};

/// Configuration of one mining run.
#[derive(Clone, Debug)]
pub struct MinerConfig {
    /// Frequency threshold: report itemsets occurring on 1..=tau rows.
    pub tau: u32,
    /// Largest itemset size to consider.
    pub k_max: usize,
    /// Lead-item order to walk; echoed into reports.
    pub ordering: OrderingMode,
    /// Enables the two last-level cardinality bounds.
    pub lemma_pruning: bool,
    /// Worker threads; results are identical for any count.
    pub threads: usize,
}

impl MinerConfig {
    pub fn new(tau: u32, k_max: usize) -> Self {
        MinerConfig {
            tau,
            k_max,
            ordering: OrderingMode::Ascending,
            lemma_pruning: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum MineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("out of memory while assembling level {level}")]
    Resource { level: usize },
}

/// One stored candidate: its itemset as ranks into the run's item order,
/// its row set, and two cached cardinalities of generating subsets.
#[derive(Clone, Debug)]
pub struct LevelNode {
    /// Ranks, strictly ascending; the last entry is the max item.
    pub itemset: Box<[u32]>,
    pub rows: RowSet,
    /// Row count of (itemset minus its max item) — the node's parent.
    pub prefix_card: u32,
    /// Row count of (itemset minus its second-to-last item).
    pub alt_card: u32,
}

impl LevelNode {
    pub fn card(&self) -> u32 {
        self.rows.card()
    }
}

/// All stored itemsets of one size, grouped by shared prefix, plus an
/// exact-membership index used by subset lookups.
#[derive(Debug)]
pub struct Level {
    k: usize,
    groups: Vec<Vec<LevelNode>>,
    index: HashMap<Box<[u32]>, u32>,
}

impl Level {
    /// Level 1: one node per lead, in walk order. The cached cardinalities
    /// of a singleton refer to the empty itemset, whose row set is the
    /// whole table.
    pub fn build_singleton_level(u: &ItemUniverse, order: &OrderedItemList) -> Level {
        let n = u.n();
        let nodes: Vec<LevelNode> = order
            .ids()
            .iter()
            .enumerate()
            .map(|(rank, &id)| LevelNode {
                itemset: vec![rank as u32].into_boxed_slice(),
                rows: u.item(id).rows.clone(),
                prefix_card: n,
                alt_card: n,
            })
            .collect();
        Level::from_groups(1, vec![nodes]).expect("singleton level allocation")
    }

    fn from_groups(
        k: usize,
        groups: Vec<Vec<LevelNode>>,
    ) -> Result<Level, std::collections::TryReserveError> {
        let count = groups.iter().map(Vec::len).sum();
        let mut index = HashMap::new();
        index.try_reserve(count)?;
        for group in &groups {
            for node in group {
                index.insert(node.itemset.clone(), node.card());
            }
        }
        Ok(Level { k, groups, index })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn groups(&self) -> &[Vec<LevelNode>] {
        &self.groups
    }

    pub fn node_count(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    /// Cardinality of a stored itemset, if stored.
    pub fn card_of(&self, itemset: &[u32]) -> Option<u32> {
        self.index.get(itemset).copied()
    }

    /// Checks that every (|w|−1)-subset of `w` is stored here. The two
    /// subsets dropping one of the last two items are the joined nodes
    /// themselves, so only prefix positions are looked up. A miss means
    /// some subset was already infrequent, absent or uniform — `w` cannot
    /// be minimal.
    pub fn support_test(&self, w: &[u32], scratch: &mut Vec<u32>) -> bool {
        debug_assert_eq!(w.len(), self.k + 1);
        for skip in 0..w.len() - 2 {
            scratch.clear();
            scratch.extend_from_slice(&w[..skip]);
            scratch.extend_from_slice(&w[skip + 1..]);
            if !self.index.contains_key(scratch.as_slice()) {
                return false;
            }
        }
        true
    }

    /// All joinable pairs: ordered sibling pairs within each group.
    pub fn join_candidates(&self) -> impl Iterator<Item = (&LevelNode, &LevelNode)> {
        self.groups.iter().flat_map(|g| {
            (0..g.len()).flat_map(move |i| (i + 1..g.len()).map(move |j| (&g[i], &g[j])))
        })
    }
}

/// Final-level bound from cached cardinalities: if
/// |rows(I)| + |rows(J)| exceeds |rows(I minus its max)| + tau, the join of
/// I and J is guaranteed to stay above the threshold.
pub fn lemma_prune(i: &LevelNode, j: &LevelNode, tau: u32) -> bool {
    u64::from(i.card()) + u64::from(j.card()) > u64::from(i.prefix_card) + u64::from(tau)
}

/// Final-level sibling bound. With c the last shared prefix item, compares
/// the stored cardinality of (I minus c) plus J's max item against how
/// much removing c can gain on either side; a large sibling cardinality
/// certifies the join stays frequent.
pub fn corollary_prune(i: &LevelNode, j: &LevelNode, prev: &Level, tau: u32) -> bool {
    let len = i.itemset.len();
    debug_assert!(len >= 2, "needs a shared prefix item");
    let mut key = Vec::with_capacity(len);
    key.extend_from_slice(&i.itemset[..len - 2]);
    key.push(i.itemset[len - 1]);
    key.push(*j.itemset.last().unwrap());
    let gamma0 = match prev.card_of(&key) {
        Some(card) => u64::from(card),
        // Sibling not stored (possible when called standalone); no bound.
        None => return false,
    };
    let gamma1 = u64::from(i.alt_card) - u64::from(i.card());
    let gamma2 = u64::from(j.alt_card) - u64::from(j.card());
    gamma0 > gamma1.min(gamma2) + u64::from(tau)
}

/// A found itemset still in item-id form.
#[derive(Clone, Debug)]
struct RawFinding {
    ids: Vec<ItemId>,
    freq: u32,
}

/// Result of a run: canonically sorted findings plus statistics.
#[derive(Clone, Debug)]
pub struct MiningResult {
    pub findings: Vec<Finding>,
    pub stats: MiningStats,
}

/// Work unit of one level: a whole group, or one first-level item with
/// every higher-ordered partner.
#[derive(Clone, Copy, Debug)]
struct Task {
    group: usize,
    outer: Option<usize>,
    load: u64,
}

fn build_tasks(level: &Level) -> Vec<Task> {
    let mut tasks = Vec::new();
    if level.k == 1 {
        let total = level.groups.first().map_or(0, Vec::len);
        for i in 0..total.saturating_sub(1) {
            tasks.push(Task {
                group: 0,
                outer: Some(i),
                load: scheduler::estimate_singleton_work(i, total),
            });
        }
    } else {
        for (g, nodes) in level.groups.iter().enumerate() {
            if nodes.len() >= 2 {
                tasks.push(Task {
                    group: g,
                    outer: None,
                    load: scheduler::estimate_group_work(nodes.len()),
                });
            }
        }
    }
    tasks
}

/// Shared read-only state while one level runs.
struct LevelCtx<'a> {
    prev: &'a Level,
    u: &'a ItemUniverse,
    order: &'a OrderedItemList,
    tau: u32,
    k_max: usize,
    lemma: bool,
    target_k: usize,
}

#[derive(Default)]
struct TaskOutput {
    emissions: Vec<RawFinding>,
    subgroups: Vec<Vec<LevelNode>>,
    delta: LevelStats,
}

fn run_task(ctx: &LevelCtx<'_>, task: &Task) -> TaskOutput {
    let group = &ctx.prev.groups()[task.group];
    let mut out = TaskOutput::default();
    match task.outer {
        Some(i) => process_outer(ctx, group, i, &mut out),
        None => {
            for i in 0..group.len().saturating_sub(1) {
                process_outer(ctx, group, i, &mut out);
            }
        }
    }
    out
}

/// Joins `group[i]` with every later sibling, emitting, pruning or storing
/// each candidate. New nodes cache the cardinalities of their two
/// generating subsets: dropping the new max item leaves I, dropping the
/// second-to-last leaves J.
fn process_outer(ctx: &LevelCtx<'_>, group: &[LevelNode], i: usize, out: &mut TaskOutput) {
    let node_i = &group[i];
    let k = ctx.target_k;
    let store_allowed = k < ctx.k_max;
    let mut subgroup = Vec::new();
    let mut w: Vec<u32> = Vec::with_capacity(k);
    let mut scratch: Vec<u32> = Vec::with_capacity(k - 1);

    for node_j in &group[i + 1..] {
        debug_assert_eq!(node_i.itemset[..k - 2], node_j.itemset[..k - 2]);
        out.delta.visited += 1;
        w.clear();
        w.extend_from_slice(&node_i.itemset);
        w.push(*node_j.itemset.last().unwrap());

        if k > 2 {
            if !ctx.prev.support_test(&w, &mut scratch) {
                out.delta.pruned_support += 1;
                continue;
            }
            if k == ctx.k_max && ctx.lemma {
                if lemma_prune(node_i, node_j, ctx.tau) {
                    debug_assert!(node_i.rows.intersect(&node_j.rows).card() > ctx.tau);
                    out.delta.pruned_lemma += 1;
                    continue;
                }
                if corollary_prune(node_i, node_j, ctx.prev, ctx.tau) {
                    debug_assert!(node_i.rows.intersect(&node_j.rows).card() > ctx.tau);
                    out.delta.pruned_corollary += 1;
                    continue;
                }
            }
        }

        let t0 = Instant::now();
        let rows = node_i.rows.intersect(&node_j.rows);
        out.delta.intersection_nanos += t0.elapsed().as_nanos() as u64;
        let card = rows.card();

        // Absent combinations occur nowhere; uniform ones add no rows over
        // the smaller side, so neither they nor any superset can be a
        // minimal infrequent set.
        if card == 0 || card == node_i.card().min(node_j.card()) {
            out.delta.skipped_absent_uniform += 1;
            continue;
        }
        if card <= ctx.tau {
            out.delta.emitted += 1;
            emit(ctx, &w, card, out);
        } else if store_allowed {
            out.delta.stored += 1;
            subgroup.push(LevelNode {
                itemset: w.as_slice().into(),
                rows,
                prefix_card: node_i.card(),
                alt_card: node_j.card(),
            });
        } else {
            out.delta.dropped_frequent_last += 1;
        }
    }
    if !subgroup.is_empty() {
        out.subgroups.push(subgroup);
    }
}

/// Emits a found lead itemset plus every single-shadow swap of it.
fn emit(ctx: &LevelCtx<'_>, w: &[u32], freq: u32, out: &mut TaskOutput) {
    let ids: Vec<ItemId> = w.iter().map(|&r| ctx.order.id_at(r as usize)).collect();
    for (pos, &id) in ids.iter().enumerate() {
        for &shadow in ctx.u.shadows_of(id) {
            let mut variant = ids.clone();
            variant[pos] = shadow;
            out.delta.expanded_shadows += 1;
            out.emissions.push(RawFinding { ids: variant, freq });
        }
    }
    out.emissions.push(RawFinding { ids, freq });
}

/// One worker's yield: its index, outputs keyed by task index, and wall
/// time in microseconds.
type WorkerResult = (usize, Vec<(usize, TaskOutput)>, u64);

/// Runs one level under the given plan; outputs come back in task order so
/// the merge is independent of worker count and timing.
fn run_level(
    ctx: &LevelCtx<'_>,
    tasks: &[Task],
    plan: &scheduler::WorkPlan,
) -> (Vec<TaskOutput>, Vec<u64>) {
    let workers = plan.assignments.len();
    let mut slots: Vec<Option<TaskOutput>> = Vec::new();
    slots.resize_with(tasks.len(), || None);
    let mut micros = vec![0u64; workers];

    if workers == 1 {
        let t0 = Instant::now();
        for &ti in &plan.assignments[0] {
            slots[ti] = Some(run_task(ctx, &tasks[ti]));
        }
        micros[0] = t0.elapsed().as_micros() as u64;
    } else {
        let results: Vec<WorkerResult> = thread::scope(|s| {
            let handles: Vec<_> = plan
                .assignments
                .iter()
                .enumerate()
                .filter(|(_, assigned)| !assigned.is_empty())
                .map(|(worker, assigned)| {
                    s.spawn(move || {
                        let t0 = Instant::now();
                        let outs: Vec<(usize, TaskOutput)> = assigned
                            .iter()
                            .map(|&ti| (ti, run_task(ctx, &tasks[ti])))
                            .collect();
                        (worker, outs, t0.elapsed().as_micros() as u64)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        for (worker, outs, us) in results {
            micros[worker] = us;
            for (ti, out) in outs {
                slots[ti] = Some(out);
            }
        }
    }
    (slots.into_iter().map(|s| s.expect("task not executed")).collect(), micros)
}

/// Mines all minimal itemsets with frequency in `1..=cfg.tau` and size up
/// to `cfg.k_max`. Output is canonically sorted and byte-identical for any
/// worker count.
pub fn mine(
    u: &ItemUniverse,
    order: &OrderedItemList,
    cfg: &MinerConfig,
) -> Result<MiningResult, MineError> {
    if cfg.threads < 1 {
        return Err(MineError::Config("threads must be at least 1".into()));
    }
    if cfg.k_max < 1 {
        return Err(MineError::Config("k_max must be at least 1".into()));
    }
    if cfg.tau != u.tau() {
        return Err(MineError::Config(format!(
            "threshold {} does not match the universe's {}",
            cfg.tau,
            u.tau()
        )));
    }

    let start = Instant::now();
    let mut raw: Vec<RawFinding> = u
        .infrequent_singletons()
        .iter()
        .map(|&id| RawFinding { ids: vec![id], freq: u.item(id).card() })
        .collect();
    let singletons_emitted = raw.len() as u64;

    let mut stats = MiningStats { singletons_emitted, ..Default::default() };
    let mut resident = 0u32;

    if cfg.k_max >= 2 && !order.is_empty() {
        let mut current = Level::build_singleton_level(u, order);
        resident = 1;
        stats.max_resident_levels = 1;

        for k in 2..=cfg.k_max {
            let tasks = build_tasks(&current);
            if tasks.is_empty() {
                break;
            }
            let loads: Vec<u64> = tasks.iter().map(|t| t.load).collect();
            let workers = cfg.threads.min(tasks.len()).max(1);
            let plan = scheduler::plan(&loads, workers);

            // The next level is materialized while the current one is
            // still read: the high-water mark of resident levels is two.
            resident += 1;
            assert!(resident <= 2, "more than two levels resident");
            stats.max_resident_levels = stats.max_resident_levels.max(resident);

            let ctx = LevelCtx {
                prev: &current,
                u,
                order,
                tau: cfg.tau,
                k_max: cfg.k_max,
                lemma: cfg.lemma_pruning,
                target_k: k,
            };
            let (outputs, worker_micros) = run_level(&ctx, &tasks, &plan);

            let mut level_stats = LevelStats::new(k);
            level_stats.worker_micros = worker_micros;
            let mut groups: Vec<Vec<LevelNode>> = Vec::new();
            for out in outputs {
                level_stats.absorb(&out.delta);
                raw.extend(out.emissions);
                groups.extend(out.subgroups);
            }
            level_stats.assert_consistent();
            stats.levels.push(level_stats);

            if k == cfg.k_max || groups.is_empty() {
                resident -= 1;
                break;
            }
            current = Level::from_groups(k, groups)
                .map_err(|_| MineError::Resource { level: k })?;
            resident -= 1;
        }
    }
    let _ = resident;

    stats.wall_nanos = start.elapsed().as_nanos() as u64;
    stats.assert_consistent();
    Ok(finalize(u, raw, cfg, stats))
}

fn finalize(
    u: &ItemUniverse,
    raw: Vec<RawFinding>,
    cfg: &MinerConfig,
    stats: MiningStats,
) -> MiningResult {
    let mut findings: Vec<Finding> = raw
        .into_iter()
        .map(|rf| Finding {
            itemset: Itemset::new(rf.ids.iter().map(|&id| u.item(id).item_ref()).collect()),
            freq: rf.freq,
        })
        .collect();
    findings.sort_unstable();
    debug_assert!(findings.windows(2).all(|w| w[0].itemset != w[1].itemset));
    debug_assert!(findings.iter().all(|f| f.freq >= 1 && f.freq <= cfg.tau));
    debug_assert!(findings.iter().all(|f| f.itemset.size() <= cfg.k_max));
    MiningResult { findings, stats }
}
