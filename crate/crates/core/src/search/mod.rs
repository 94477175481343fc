//! Searches for spread sets and rank-one decompositions.

mod byrank;
mod disprove;
mod extend;
mod quotient;
mod rankone;
mod report;
mod spreads;
mod tensor_rank;

pub use byrank::{spread_sets_by_rank, spread_sets_by_rank_with, ByRankResult, PruningSchedule};
pub use disprove::{disprove_rank, disprove_rank_with, DisproveOptions, SearchState};
pub use quotient::{canonical, induced_maps, Quotient, QuotientMap};
pub use rankone::{rank_one_elements, verify_decomposition, Verification};
pub use report::{LevelCount, Outcome, SearchReport};
pub use spreads::{all_partial_spreads, contains_partial_spread, find_spread_sets};
pub use tensor_rank::{tensor_rank, tensor_rank_with, RankResult};
