//! Brute-force reference miner: direct enumeration with row scanning.
//!
//! Shares nothing with [`crate::miner`] beyond the model types, so the two
//! can check each other. Frequencies come from scanning the dataset, not
//! from item row sets.

use std::collections::HashSet;

use thiserror::Error;

use crate::model::{Dataset, Finding, ItemRef, Itemset};

/// Item-count guard: enumeration is exponential, refuse big inputs unless
/// the caller raises the limit explicitly.
pub const DEFAULT_ITEM_LIMIT: usize = 64;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("{items} distinct items exceed the enumeration guard of {limit}")]
    TooManyItems { items: usize, limit: usize },
}

/// Enumerates every minimal itemset of frequency in `1..=tau` with at most
/// `k_max` items, canonically sorted. Guarded by [`DEFAULT_ITEM_LIMIT`].
pub fn oracle_mine(d: &Dataset, tau: u32, k_max: usize) -> Result<Vec<Finding>, OracleError> {
    oracle_mine_with_limit(d, tau, k_max, DEFAULT_ITEM_LIMIT)
}

/// [`oracle_mine`] with an explicit item-count guard.
pub fn oracle_mine_with_limit(
    d: &Dataset,
    tau: u32,
    k_max: usize,
    limit: usize,
) -> Result<Vec<Finding>, OracleError> {
    let items = distinct_items(d);
    if items.len() > limit {
        return Err(OracleError::TooManyItems { items: items.len(), limit });
    }

    let mut findings = Vec::new();
    if k_max == 0 {
        return Ok(findings);
    }

    // Level 1: every item occurs at least once by construction.
    let mut frequent: Vec<Vec<ItemRef>> = Vec::new();
    for &item in &items {
        let f = frequency(d, &[item]);
        debug_assert!(f >= 1);
        if f <= tau {
            findings.push(Finding { itemset: Itemset::new(vec![item]), freq: f });
        } else {
            frequent.push(vec![item]);
        }
    }

    // Level k: join frequent (k-1)-sets sharing a prefix; a candidate is
    // minimal-so-far only if all its (k-1)-subsets stayed frequent.
    // Zero-frequency candidates are combinations that never occur in the
    // table; they are not reported and nothing above them can occur either.
    for _k in 2..=k_max {
        let known: HashSet<&[ItemRef]> = frequent.iter().map(|s| s.as_slice()).collect();
        let mut next = Vec::new();
        for i in 0..frequent.len() {
            for j in i + 1..frequent.len() {
                let (p, q) = (&frequent[i], &frequent[j]);
                if p[..p.len() - 1] != q[..q.len() - 1] {
                    continue;
                }
                let mut cand = p.clone();
                cand.push(*q.last().unwrap());
                cand.sort_unstable();
                if !all_subsets_frequent(&cand, &known) {
                    continue;
                }
                let f = frequency(d, &cand);
                if f == 0 {
                    continue;
                }
                if f <= tau {
                    findings.push(Finding { itemset: Itemset::new(cand), freq: f });
                } else {
                    next.push(cand);
                }
            }
        }
        next.sort_unstable();
        frequent = next;
    }

    findings.sort_unstable();
    Ok(findings)
}

/// Distinct (value, column) pairs of the table, sorted by (column, value).
pub fn distinct_items(d: &Dataset) -> Vec<ItemRef> {
    let mut set = HashSet::new();
    for row in 0..d.rows() {
        for col in 0..d.cols() {
            if let Some(value) = d.cell(row, col) {
                set.insert(ItemRef { col: col as u32, value });
            }
        }
    }
    let mut items: Vec<_> = set.into_iter().collect();
    items.sort_unstable();
    items
}

/// Number of rows matching every (value, column) pair of `items`.
pub fn frequency(d: &Dataset, items: &[ItemRef]) -> u32 {
    (0..d.rows())
        .filter(|&r| items.iter().all(|it| d.cell(r, it.col as usize) == Some(it.value)))
        .count() as u32
}

fn all_subsets_frequent(cand: &[ItemRef], known: &HashSet<&[ItemRef]>) -> bool {
    let mut sub = Vec::with_capacity(cand.len() - 1);
    for skip in 0..cand.len() {
        sub.clear();
        sub.extend(cand.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x));
        if !known.contains(sub.as_slice()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn refs(pairs: &[(u32, u32)]) -> Vec<ItemRef> {
        pairs.iter().map(|&(col, value)| ItemRef { col, value }).collect()
    }

    #[test]
    fn frequency_scans_rows_directly() {
        let d = Dataset::from_rows(&[&[1, 2], &[1, 3], &[4, 2]]);
        assert_eq!(frequency(&d, &refs(&[(0, 1)])), 2);
        assert_eq!(frequency(&d, &refs(&[(0, 1), (1, 2)])), 1);
        assert_eq!(frequency(&d, &refs(&[(0, 4), (1, 3)])), 0);
    }

    #[test]
    fn singletons_at_or_below_tau_are_minimal() {
        let d = Dataset::from_rows(&[&[1], &[1], &[2]]);
        let got = oracle_mine(&d, 1, 1).unwrap();
        assert_eq!(got, vec![Finding { itemset: Itemset::new(refs(&[(0, 2)])), freq: 1 }]);
    }

    #[test]
    fn zero_frequency_combinations_are_not_reported() {
        // Both values of the single column are frequent; their pair never
        // occurs on any row and must not surface as a finding.
        let d = Dataset::from_rows(&[&[1, 5], &[1, 6], &[2, 5], &[2, 6]]);
        let got = oracle_mine(&d, 1, 2).unwrap();
        assert!(got.iter().all(|f| f.freq >= 1));
        assert!(got.iter().all(|f| {
            let cols: Vec<_> = f.itemset.items().iter().map(|i| i.col).collect();
            cols.windows(2).all(|w| w[0] != w[1])
        }));
    }

    #[test]
    fn minimality_excludes_supersets_of_infrequent_sets() {
        // (0,2) is unique, so {(0,2),(1,x)} is never minimal.
        let d = Dataset::from_rows(&[&[1, 7], &[1, 7], &[2, 7]]);
        let got = oracle_mine(&d, 1, 2).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].itemset.size(), 1);
    }

    #[test]
    fn absent_cells_join_no_item() {
        let d = Dataset::from_rows_opt(&[&[Some(1), None], &[Some(1), Some(3)], &[None, Some(3)]]);
        assert_eq!(distinct_items(&d).len(), 2);
        assert_eq!(frequency(&d, &refs(&[(0, 1), (1, 3)])), 1);
    }

    #[test]
    fn guard_rejects_wide_tables() {
        let row: Vec<u32> = (0..70).collect();
        let d = Dataset::from_rows(&[&row, &row]);
        assert!(matches!(oracle_mine(&d, 1, 2), Err(OracleError::TooManyItems { items: 70, .. })));
        assert!(oracle_mine_with_limit(&d, 1, 1, 70).is_ok());
    }

    #[test]
    fn respects_k_max() {
        let d = Dataset::from_rows(&[&[1, 2, 3], &[1, 2, 4], &[1, 5, 3], &[6, 2, 3]]);
        let shallow = oracle_mine(&d, 1, 1).unwrap();
        assert!(shallow.iter().all(|f| f.itemset.size() == 1));
        let deep = oracle_mine(&d, 1, 3).unwrap();
        assert!(deep.len() > shallow.len());
    }
}
