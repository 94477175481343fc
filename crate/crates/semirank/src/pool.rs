//! A rayon-backed [`Executor`].

use rayon::prelude::*;
use semirank_core::exec::Executor;

/// Runs jobs on a dedicated thread pool. Results come back in index order,
/// so reports match the sequential executor exactly.
pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    pub fn new(workers: usize) -> Result<Pool, rayon::ThreadPoolBuildError> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?;
        Ok(Pool { pool })
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Pool {
    fn map_indexed<T: Send>(&self, count: usize, job: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        self.pool.install(|| (0..count).into_par_iter().map(job).collect())
    }

    fn parallelism(&self) -> usize {
        self.workers()
    }
}
