//! File formats, a thread-pool executor, search checkpoints and the
//! command-line front end for [`semirank_core`].

pub mod checkpoint;
pub mod cli;
pub mod format;
pub mod pool;

pub use semirank_core;
