use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Counts for one level of a search, where every space has dimension `dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCount {
    pub dim: usize,
    /// Distinct spaces generated at this level.
    pub spaces: u64,
    /// Equivalence classes (or orbit representatives) among them.
    pub classes: Option<u64>,
    /// Spaces kept by the pruning rule of this level.
    pub survivors: Option<u64>,
    /// Classes of spread sets found inside the kept spaces.
    pub spread_sets: Option<u64>,
}

impl LevelCount {
    pub fn new(dim: usize) -> LevelCount {
        LevelCount { dim, ..LevelCount::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Every candidate was examined and none qualified.
    Exhausted,
    /// Encodings of rank-one matrices whose span contains the input.
    Witness(Vec<u64>),
    /// The run stopped early at the requested level.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: u32,
    pub n: usize,
    pub target: usize,
    /// Whether the code-based pruning rule was active.
    pub pruned: bool,
    pub levels: Vec<LevelCount>,
    pub outcome: Outcome,
}
