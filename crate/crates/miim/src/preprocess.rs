//! Item extraction, universe decomposition and item orderings.
//!
//! Decomposition strips everything the level-wise search need not touch:
//! uniform items (present on every row) can never appear in a minimal
//! infrequent itemset, already-infrequent singletons are answers on their
//! own, and items duplicating another item's exact row set ("shadows") are
//! reconstructed from their representative ("lead") afterwards by single
//! swaps. Mining runs over the lead items only.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Dataset, Item, ItemId};

#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("threshold {tau} out of range: must satisfy 1 <= tau < rows ({n})")]
    TauOutOfRange { tau: u32, n: u32 },
}

/// The decomposed item universe a mining run works from.
#[derive(Debug)]
pub struct ItemUniverse {
    items: Vec<Item>,
    n: u32,
    tau: u32,
    uniform: Vec<ItemId>,
    infrequent: Vec<ItemId>,
    leads: Vec<ItemId>,
    shadow_map: HashMap<ItemId, Vec<ItemId>>,
}

impl ItemUniverse {
    pub fn item(&self, id: ItemId) -> &Item {
        &self.items[id.0 as usize]
    }

    /// All items, sorted by (column, value).
    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    /// Items present on every row; never part of a minimal infrequent set.
    pub fn uniform(&self) -> &[ItemId] {
        &self.uniform
    }

    /// Items already at or below the threshold: emitted as singletons.
    pub fn infrequent_singletons(&self) -> &[ItemId] {
        &self.infrequent
    }

    /// One representative per distinct row set; the mining universe.
    pub fn leads(&self) -> &[ItemId] {
        &self.leads
    }

    /// Items sharing their lead's exact row set, by lead.
    pub fn shadow_map(&self) -> &HashMap<ItemId, Vec<ItemId>> {
        &self.shadow_map
    }

    pub fn shadows_of(&self, lead: ItemId) -> &[ItemId] {
        self.shadow_map.get(&lead).map_or(&[], Vec::as_slice)
    }

    pub fn has_shadows(&self) -> bool {
        !self.shadow_map.is_empty()
    }
}

/// Collects one item per distinct (value, column) pair with its row set,
/// sorted by (column, value). Absent cells contribute nothing.
pub fn extract_items(d: &Dataset) -> Vec<Item> {
    let mut items = Vec::new();
    for col in 0..d.cols() {
        let mut by_value: HashMap<u32, Vec<u32>> = HashMap::new();
        for row in 0..d.rows() {
            if let Some(value) = d.cell(row, col) {
                by_value.entry(value).or_default().push(row as u32);
            }
        }
        let mut values: Vec<_> = by_value.into_iter().collect();
        values.sort_unstable_by_key(|(value, _)| *value);
        for (value, rows) in values {
            items.push(Item {
                value,
                col: col as u32,
                rows: crate::model::RowSet::from_sorted(rows),
            });
        }
    }
    items
}

/// Splits items into uniform / infrequent-singleton / lead / shadow
/// classes for a run at threshold `tau` over `n` rows.
///
/// Every item lands in exactly one class. Among items sharing a row set
/// the one with the smallest (column, value) becomes the lead.
pub fn decompose(items: Vec<Item>, tau: u32, n: u32) -> Result<ItemUniverse, DecomposeError> {
    if tau < 1 || tau >= n {
        return Err(DecomposeError::TauOutOfRange { tau, n });
    }
    let mut items = items;
    items.sort_unstable_by_key(|it| (it.col, it.value));

    let mut uniform = Vec::new();
    let mut infrequent = Vec::new();
    let mut leads = Vec::new();
    let mut shadow_map: HashMap<ItemId, Vec<ItemId>> = HashMap::new();
    // Row-set -> lead seen first; ids ascend in (column, value) order, so
    // the first member of each class is its (column, value)-minimal item.
    let mut class_lead: HashMap<&[u32], ItemId> = HashMap::new();

    for (idx, item) in items.iter().enumerate() {
        let id = ItemId(idx as u32);
        if item.card() == n {
            uniform.push(id);
        } else if item.card() <= tau {
            infrequent.push(id);
        } else {
            match class_lead.get(item.rows.as_slice()) {
                Some(&lead) => shadow_map.entry(lead).or_default().push(id),
                None => {
                    class_lead.insert(item.rows.as_slice(), id);
                    leads.push(id);
                }
            }
        }
    }
    drop(class_lead);

    Ok(ItemUniverse { items, n, tau, uniform, infrequent, leads, shadow_map })
}

/// Item orderings available to a mining run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderingMode {
    /// Frequency ascending, then column, then smallest row. The default;
    /// low-frequency items first shrinks intersections early.
    Ascending,
    /// Reverse of ascending; the worst case, kept for comparison runs.
    Descending,
    /// Seeded uniform permutation, reproducible per seed.
    Random { seed: u64 },
}

/// Lead items arranged in the order a mining run walks them.
#[derive(Clone, Debug)]
pub struct OrderedItemList {
    ids: Vec<ItemId>,
    rank: HashMap<ItemId, u32>,
}

impl OrderedItemList {
    fn new(ids: Vec<ItemId>) -> Self {
        let rank = ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect();
        OrderedItemList { ids, rank }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[ItemId] {
        &self.ids
    }

    pub fn id_at(&self, rank: usize) -> ItemId {
        self.ids[rank]
    }

    pub fn rank_of(&self, id: ItemId) -> Option<usize> {
        self.rank.get(&id).map(|&r| r as usize)
    }
}

/// Leads sorted ascending: frequency, then column, then smallest row.
pub fn sort_ascending(u: &ItemUniverse) -> OrderedItemList {
    let mut ids = u.leads().to_vec();
    ids.sort_unstable_by_key(|&id| u.item(id).ascending_key());
    OrderedItemList::new(ids)
}

/// The lead ordering for any [`OrderingMode`].
pub fn alternative_orderings(u: &ItemUniverse, mode: OrderingMode) -> OrderedItemList {
    match mode {
        OrderingMode::Ascending => sort_ascending(u),
        OrderingMode::Descending => {
            let mut ids = sort_ascending(u).ids;
            ids.reverse();
            OrderedItemList::new(ids)
        }
        OrderingMode::Random { seed } => {
            let mut ids = sort_ascending(u).ids;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ids.shuffle(&mut rng);
            OrderedItemList::new(ids)
        }
    }
}
