//! Core domain types: datasets, items, row sets and itemsets.

use std::cmp::Ordering;
use std::fmt;

/// A table of categorical values. Cells are dictionary codes; `None` marks
/// an absent (empty) cell, which simply belongs to no item.
#[derive(Clone, Debug)]
pub struct Dataset {
    rows: usize,
    cols: usize,
    /// Row-major, `rows * cols` entries.
    cells: Vec<Option<u32>>,
}

impl Dataset {
    /// Builds a dataset from row-major cells. Panics on shape mismatch.
    pub fn new(rows: usize, cols: usize, cells: Vec<Option<u32>>) -> Self {
        assert!(rows >= 1 && cols >= 1, "dataset must have at least one row and column");
        assert_eq!(cells.len(), rows * cols, "cell count must be rows * cols");
        Dataset { rows, cols, cells }
    }

    /// Convenience constructor for fully populated test tables.
    pub fn from_rows(rows: &[&[u32]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let cells = rows.iter().flat_map(|r| r.iter().map(|&v| Some(v))).collect();
        Dataset::new(rows.len(), cols, cells)
    }

    /// Like [`Dataset::from_rows`] but with absent cells spelled `None`.
    pub fn from_rows_opt(rows: &[&[Option<u32>]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let cells = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Dataset::new(rows.len(), cols, cells)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The value at (row, col), or `None` for an absent cell.
    pub fn cell(&self, row: usize, col: usize) -> Option<u32> {
        debug_assert!(row < self.rows && col < self.cols);
        self.cells[row * self.cols + col]
    }
}

/// A strictly ascending set of row indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RowSet(Vec<u32>);

impl RowSet {
    /// Wraps a sorted, duplicate-free index list.
    pub fn from_sorted(rows: Vec<u32>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] < w[1]), "row sets must be strictly ascending");
        RowSet(rows)
    }

    pub fn card(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    /// Smallest row index; used by the item ordering tie-break.
    pub fn min_row(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Sorted-merge intersection of two row sets.
    pub fn intersect(&self, other: &RowSet) -> RowSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len().min(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        RowSet(out)
    }
}

/// Intersection of two row sets; `|intersect(x, y)|` is the frequency of
/// the itemset holding both underlying items.
pub fn intersect(x: &RowSet, y: &RowSet) -> RowSet {
    x.intersect(y)
}

/// An item: a value, the column it occurs in, and the rows it occupies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub value: u32,
    pub col: u32,
    pub rows: RowSet,
}

impl Item {
    /// Identity key within a table of `cols` columns: `cols * value + col`.
    /// Two items are equal iff value and column are equal.
    pub fn identity_key(&self, cols: u32) -> u64 {
        u64::from(self.value) * u64::from(cols) + u64::from(self.col)
    }

    pub fn card(&self) -> u32 {
        self.rows.card()
    }

    /// Key realizing the default item order: frequency first, then column,
    /// then smallest row. Total over the items of any one dataset (two
    /// items of one column sharing a row would share a cell).
    pub fn ascending_key(&self) -> (u32, u32, u32) {
        (self.card(), self.col, self.rows.min_row().unwrap_or(0))
    }

    pub fn item_ref(&self) -> ItemRef {
        ItemRef { value: self.value, col: self.col }
    }
}

/// Index of an item in an [`crate::preprocess::ItemUniverse`] table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemId(pub u32);

/// Item identity without its row set: a (value, column) pair.
/// Ordered by (column, value), the order used for reported itemsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ItemRef {
    pub col: u32,
    pub value: u32,
}

/// A set of item identities, canonically sorted by (column, value).
///
/// Reported itemsets never repeat a column (two items of one column never
/// co-occur on a row), so the column-first order is total within a set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itemset {
    items: Vec<ItemRef>,
}

impl Itemset {
    /// Sorts and wraps the given items. Panics on duplicate entries.
    pub fn new(mut items: Vec<ItemRef>) -> Self {
        items.sort_unstable();
        assert!(items.windows(2).all(|w| w[0] != w[1]), "duplicate item in itemset");
        Itemset { items }
    }

    pub fn size(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[ItemRef] {
        &self.items
    }
}

impl fmt::Display for Itemset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}={}", item.col, item.value)?;
        }
        Ok(())
    }
}

/// Canonical itemset order: smaller sets first, equal sizes compared
/// lexicographically item by item. Equal only for the same itemset.
pub fn canonical_compare(p: &Itemset, q: &Itemset) -> Ordering {
    p.size().cmp(&q.size()).then_with(|| p.items.cmp(&q.items))
}

impl PartialOrd for Itemset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Itemset {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_compare(self, other)
    }
}

/// A reported minimal infrequent itemset together with its frequency.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Finding {
    pub itemset: Itemset,
    pub freq: u32,
}
