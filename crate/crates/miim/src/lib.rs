//! Minimal infrequent itemset mining.
//!
//! Given a table of categorical values, an itemset is a set of
//! (value, column) pairs and its frequency is the number of rows on which
//! every pair matches. This crate finds all *minimal* itemsets with
//! frequency at most a threshold `tau` — combinations that isolate `tau`
//! or fewer records while every proper subset is still frequent. Such
//! combinations are the quasi-identifiers of disclosure-control work.
//!
//! The pipeline is: [`ingest`] a file into a [`model::Dataset`],
//! [`preprocess`] it into an [`preprocess::ItemUniverse`] (uniform,
//! already-infrequent and duplicate-column items are split off before any
//! search), then [`miner::mine`] walks candidate itemsets level by level,
//! pruning with cached cardinality bounds. [`oracle`] re-derives the same
//! answer by direct enumeration for verification, and [`synth`] produces
//! reproducible random tables for benchmarks and tests.

pub mod cli;
pub mod ingest;
pub mod miner;
pub mod model;
pub mod oracle;
pub mod preprocess;
pub mod report;
pub mod scheduler;
pub mod stats;
pub mod synth;

pub use miner::{mine, MinerConfig, MiningResult};
pub use model::{Dataset, Finding, ItemRef, Itemset, RowSet};
pub use preprocess::{decompose, extract_items, ItemUniverse, OrderingMode};
