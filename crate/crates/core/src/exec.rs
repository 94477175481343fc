//! Pluggable execution of independent jobs. The core crate only runs them
//! in order; the `semirank` crate provides a thread-pool executor.

use alloc::vec::Vec;

/// Runs `job(i)` for every `i` in `0..count` and returns the results in
/// index order. Implementations may run jobs concurrently but must return
/// the same vector as [`Sequential`].
pub trait Executor: Sync {
    fn map_indexed<T: Send>(&self, count: usize, job: &(dyn Fn(usize) -> T + Sync)) -> Vec<T>;

    /// Number of jobs worth creating per unit of work; a hint for chunking.
    fn parallelism(&self) -> usize {
        1
    }
}

/// Runs every job on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indexed<T: Send>(&self, count: usize, job: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        (0..count).map(job).collect()
    }
}

/// A progress sink for long searches; messages are free-form text.
pub type Progress<'a> = Option<&'a mut dyn FnMut(&str)>;

