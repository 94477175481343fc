//! Exact computations on finite semifields viewed as spread sets of matrices
//! over small prime fields: multiplication tensors, isotopism testing, the
//! tensor rank and its lower bounds from linear codes, and the searches that
//! establish the rank of every semifield of order 16 and 81.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, threads and the
//! command-line front end live in the companion `semirank` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod atlas;
pub mod codec;
pub mod codes;
pub mod equivalence;
mod error;
pub mod exec;
pub mod gf;
pub mod search;
pub mod space;

pub use error::{Error, Result};
pub use gf::{Fq, Mat, PVec, Span, Vector};
pub use space::{MatSpace, SpreadSet};
