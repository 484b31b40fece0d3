//! Worker pool for verification instances.

use moulde_core::mould::Executor;
use rayon::prelude::*;

pub struct Pool {
    pool: rayon::ThreadPool,
}

impl Pool {
    /// `jobs = None` lets rayon pick the number of threads.
    pub fn new(jobs: Option<usize>) -> Result<Self, rayon::ThreadPoolBuildError> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = jobs {
            builder = builder.num_threads(n.max(1));
        }
        Ok(Pool { pool: builder.build()? })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }
}

impl Executor for Pool {
    fn run<T, F>(&self, n: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        self.pool.install(|| (0..n).into_par_iter().map(job).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_keep_job_order() {
        let pool = Pool::new(Some(3)).unwrap();
        assert_eq!(pool.threads(), 3);
        assert_eq!(pool.run(100, |k| k * k), (0..100).map(|k| k * k).collect::<Vec<_>>());
    }
}
