//! Frozen end-to-end values for the worked examples: decomposition
//! classes, emitted findings, and per-level candidate accounting.

mod common;

use common::*;
use miim::model::ItemRef;
use miim::oracle::oracle_mine;
use miim::preprocess::{decompose, extract_items};

#[test]
fn small_decomposition_tau_one() {
    let d = example_small();
    let u = universe_of(&d, 1);
    let refs = |ids: &[miim::model::ItemId]| -> Vec<ItemRef> {
        ids.iter().map(|&id| u.item(id).item_ref()).collect()
    };
    assert_eq!(refs(u.uniform()), vec![ItemRef { col: 3, value: 4 }]);
    assert_eq!(
        refs(u.infrequent_singletons()),
        vec![
            ItemRef { col: 0, value: 5 },
            ItemRef { col: 1, value: 6 },
            ItemRef { col: 2, value: 7 },
        ]
    );
    assert_eq!(
        refs(u.leads()),
        vec![
            ItemRef { col: 0, value: 1 },
            ItemRef { col: 1, value: 2 },
            ItemRef { col: 2, value: 3 },
        ]
    );
    assert!(!u.has_shadows());
}

#[test]
fn small_decomposition_tau_three_drains_the_leads() {
    let d = example_small();
    let u = universe_of(&d, 3);
    assert_eq!(u.uniform().len(), 1);
    assert_eq!(u.infrequent_singletons().len(), 6);
    assert!(u.leads().is_empty());
}

#[test]
fn tau_zero_and_tau_at_row_count_are_rejected() {
    let d = example_small();
    assert!(decompose(extract_items(&d), 0, 4).is_err());
    assert!(decompose(extract_items(&d), 4, 4).is_err());
    assert!(decompose(extract_items(&d), 3, 4).is_ok());
}

#[test]
fn shadow_decomposition_maps_duplicate_to_its_lead() {
    let d = example_shadow();
    let u = universe_of(&d, 1);
    assert_eq!(u.leads().len(), 3);
    let map = u.shadow_map();
    assert_eq!(map.len(), 1);
    let (&lead, dups) = map.iter().next().unwrap();
    assert_eq!(u.item(lead).item_ref(), ItemRef { col: 0, value: 1 });
    let dup_refs: Vec<ItemRef> = dups.iter().map(|&id| u.item(id).item_ref()).collect();
    assert_eq!(dup_refs, vec![ItemRef { col: 4, value: 8 }]);
}

#[test]
fn small_mining_golden() {
    let d = example_small();
    let result = mine_simple(&d, 1, 3);
    let expected = vec![
        finding(&[(0, 5)], 1),
        finding(&[(1, 6)], 1),
        finding(&[(2, 7)], 1),
        finding(&[(0, 1), (1, 2), (2, 3)], 1),
    ];
    assert_same_findings(&result.findings, &expected, "4x4 table, tau 1, depth 3");
    assert_eq!(result.stats.singletons_emitted, 3);
    assert_eq!(result.stats.total_expanded_shadows(), 0);
}

#[test]
fn shadow_mining_emits_the_single_swap_variant() {
    let d = example_shadow();
    let result = mine_simple(&d, 1, 3);
    let expected = vec![
        finding(&[(0, 5)], 1),
        finding(&[(1, 6)], 1),
        finding(&[(2, 7)], 1),
        finding(&[(4, 9)], 1),
        finding(&[(0, 1), (1, 2), (2, 3)], 1),
        finding(&[(1, 2), (2, 3), (4, 8)], 1),
    ];
    assert_same_findings(&result.findings, &expected, "shadow table, tau 1, depth 3");
    assert_eq!(result.stats.total_expanded_shadows(), 1);
    assert_eq!(result.stats.total_emitted_sets(), 1);
}

#[test]
fn seven_row_mining_golden_with_level_accounting() {
    let d = example_seven();
    let result = mine_simple(&d, 1, 3);

    assert_eq!(result.findings.len(), 17);
    assert_eq!(result.stats.singletons_emitted, 15);
    let sizes: Vec<usize> = result.findings.iter().map(|f| f.itemset.size()).collect();
    assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), 15);
    assert_eq!(sizes.iter().filter(|&&s| s == 2).count(), 1);
    assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 1);
    assert!(result
        .findings
        .contains(&finding(&[(3, 4), (4, 5)], 1)));
    assert!(result
        .findings
        .contains(&finding(&[(0, 1), (1, 2), (4, 5)], 1)));

    let l2 = &result.stats.levels[0];
    assert_eq!((l2.k, l2.visited, l2.emitted, l2.stored), (2, 10, 1, 9));
    assert_eq!(l2.pruned_support + l2.pruned_lemma + l2.pruned_corollary, 0);

    let l3 = &result.stats.levels[1];
    assert_eq!(l3.k, 3);
    assert_eq!(l3.visited, 10);
    assert_eq!(l3.pruned_support, 3);
    assert_eq!(l3.pruned_lemma, 4);
    assert_eq!(l3.pruned_corollary, 2);
    assert_eq!(l3.emitted, 1);
    assert_eq!(l3.stored, 0);
}

#[test]
fn seven_row_miner_matches_oracle_exactly() {
    let d = example_seven();
    let result = mine_simple(&d, 1, 3);
    let expected = oracle_mine(&d, 1, 3).unwrap();
    assert_same_findings(&result.findings, &expected, "7x5 table vs oracle");
}

#[test]
fn shadow_miner_matches_filtered_oracle() {
    let d = example_shadow();
    for tau in 1..=3 {
        for k_max in 1..=5 {
            let result = mine_simple(&d, tau, k_max);
            let expected = oracle_filtered(&d, tau, k_max);
            assert_same_findings(
                &result.findings,
                &expected,
                &format!("shadow table, tau {tau}, depth {k_max}"),
            );
        }
    }
}

#[test]
fn oracle_golden_for_the_small_table() {
    let d = example_small();
    let expected = vec![
        finding(&[(0, 5)], 1),
        finding(&[(1, 6)], 1),
        finding(&[(2, 7)], 1),
        finding(&[(0, 1), (1, 2), (2, 3)], 1),
    ];
    assert_eq!(oracle_mine(&d, 1, 4).unwrap(), expected);
}
