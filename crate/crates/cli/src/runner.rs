//! Trial fan-out across a worker pool.
//!
//! Trial `i` always runs on stream `(master_seed, i)` and results are
//! gathered in trial order before any reduction, so every statistic is
//! bit-identical for any number of workers.

use monopath_core::gap::EstimateWithError;
use monopath_core::rng::RngStream;
use monopath_core::Result;
use rayon::prelude::*;
use rayon::ThreadPool;

use crate::CliError;

pub struct Runner {
    pool: ThreadPool,
    master_seed: u64,
}

impl Runner {
    pub fn new(threads: usize, master_seed: u64) -> Result<Self, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| CliError::BadArguments(format!("cannot start {threads} workers: {e}")))?;
        Ok(Runner { pool, master_seed })
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Per-trial outputs in trial order.
    pub fn run<T, F>(&self, trials: u64, kernel: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&mut RngStream) -> Result<T> + Sync,
    {
        let seed = self.master_seed;
        self.pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|i| kernel(&mut RngStream::new(seed, i)))
                .collect()
        })
    }

    /// Mean and standard error of `kernel`.
    pub fn estimate<F>(&self, trials: u64, kernel: F) -> Result<EstimateWithError>
    where
        F: Fn(&mut RngStream) -> Result<f64> + Sync,
    {
        let values = self.run(trials, kernel)?;
        EstimateWithError::from_values(&values, self.master_seed)
    }
}
