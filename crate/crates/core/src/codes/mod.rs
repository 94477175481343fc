//! Linear codes attached to tensor decompositions and the lower bounds on
//! tensor rank they give.

mod bounds;
mod decomposition;
mod genmatrix;
mod rank;

pub use bounds::{code_exists, genbound, min_rank_in_space, nq_lookup, BoundTable, Existence, GenBound};
pub use decomposition::{decomposition_from_rank_ones, PureDecomposition};
pub use genmatrix::{code_equivalent, GenMatrix};
pub use rank::{brute_force_tensor_rank, codeword_support_check, SupportCheck};
