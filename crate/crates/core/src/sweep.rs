//! Exhaustive sweeps over tuples of carrier elements.
//!
//! Every check in the crate reports the lexicographically first failing
//! tuple. A parallel sweep splits the work by first coordinate; each worker
//! returns its local first failure and the reducer keeps the minimum, so the
//! answer does not depend on the number of workers.

use std::sync::Arc;

use rayon::prelude::*;

/// Execution strategy for exhaustive sweeps and the brace search.
#[derive(Clone, Default)]
pub struct Sweep {
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Sweep {
    pub fn sequential() -> Self {
        Sweep { pool: None }
    }

    /// Uses a dedicated pool of `jobs` threads; `jobs <= 1` is sequential.
    pub fn with_jobs(jobs: usize) -> Self {
        if jobs <= 1 {
            return Self::sequential();
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("failed to build worker pool");
        Sweep { pool: Some(Arc::new(pool)) }
    }

    pub fn is_parallel(&self) -> bool {
        self.pool.is_some()
    }

    /// Minimum over `first in 0..n` of `local(first)`, where `local` returns
    /// the first failure whose leading coordinate is `first`.
    pub fn first_failure<W, F>(&self, n: usize, local: F) -> Option<W>
    where
        W: Ord + Send,
        F: Fn(usize) -> Option<W> + Sync + Send,
    {
        match &self.pool {
            None => (0..n).find_map(local),
            Some(pool) => pool.install(|| (0..n).into_par_iter().filter_map(local).min()),
        }
    }

    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(&self, items: Vec<T>, f: F) -> Vec<R>
    where
        T: Send,
        R: Send,
        F: Fn(T) -> R + Sync + Send,
    {
        match &self.pool {
            None => items.into_iter().map(f).collect(),
            Some(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        }
    }
}

impl std::fmt::Debug for Sweep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.pool {
            None => write!(f, "Sweep(sequential)"),
            Some(pool) => write!(f, "Sweep(jobs={})", pool.current_num_threads()),
        }
    }
}

/// First pair `(a, b)` in lexicographic order with `!holds(a, b)`.
pub(crate) fn first_pair_failure(
    sweep: &Sweep,
    n: usize,
    holds: impl Fn(usize, usize) -> bool + Sync + Send,
) -> Option<(usize, usize)> {
    sweep.first_failure(n, |a| (0..n).find(|&b| !holds(a, b)).map(|b| (a, b)))
}

/// First triple `(a, b, c)` in lexicographic order with `!holds(a, b, c)`.
pub(crate) fn first_triple_failure(
    sweep: &Sweep,
    n: usize,
    holds: impl Fn(usize, usize, usize) -> bool + Sync + Send,
) -> Option<(usize, usize, usize)> {
    sweep.first_failure(n, |a| {
        (0..n)
            .flat_map(|b| (0..n).map(move |c| (b, c)))
            .find(|&(b, c)| !holds(a, b, c))
            .map(|(b, c)| (a, b, c))
    })
}
