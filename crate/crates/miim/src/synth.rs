//! Reproducible random table generation for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Dataset;

/// Shape of a synthetic table. Each column first draws a domain size D
/// uniformly from `domain_min..=domain_max`, then every cell of the column
/// draws uniformly from `1..=D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthSpec {
    pub rows: usize,
    pub cols: usize,
    pub domain_min: u32,
    pub domain_max: u32,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("table shape must be at least 1x1, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },
    #[error("domain range [{domain_min}, {domain_max}] is empty or starts below 1")]
    BadDomain { domain_min: u32, domain_max: u32 },
}

impl SynthSpec {
    pub fn new(
        rows: usize,
        cols: usize,
        domain_min: u32,
        domain_max: u32,
        seed: u64,
    ) -> Result<Self, SynthError> {
        if rows < 1 || cols < 1 {
            return Err(SynthError::EmptyShape { rows, cols });
        }
        if domain_min < 1 || domain_min > domain_max {
            return Err(SynthError::BadDomain { domain_min, domain_max });
        }
        Ok(SynthSpec { rows, cols, domain_min, domain_max, seed })
    }
}

/// Generates the table for a parameter set. One ChaCha8 stream seeded with
/// `spec.seed` drives everything: first the per-column domain sizes, then
/// the cells column by column — so the domains (and hence the item
/// structure) only depend on the seed and the column count, not the row
/// count.
pub fn generate(spec: &SynthSpec) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let domains: Vec<u32> =
        (0..spec.cols).map(|_| rng.gen_range(spec.domain_min..=spec.domain_max)).collect();
    let mut cells = vec![None; spec.rows * spec.cols];
    for (col, &domain) in domains.iter().enumerate() {
        for row in 0..spec.rows {
            cells[row * spec.cols + col] = Some(rng.gen_range(1..=domain));
        }
    }
    Dataset::new(spec.rows, spec.cols, cells)
}
