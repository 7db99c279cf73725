//! Execution strategy for the batch loops (enumeration, axiom validation,
//! relation verification).
//!
//! With the `parallel` feature (on by default) [`Strategy::Parallel`] fans the
//! work out over rayon's global pool. Without it every strategy runs
//! sequentially. Results are collected in index order either way, so reports
//! are identical across strategies.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    /// Whether this strategy actually runs on the thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// `(0..n).map(f).collect()`, order preserved.
pub fn map_range<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// `(0..n).flat_map(f).collect()`, order preserved.
pub fn flat_map_range<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Vec<T> + Sync + Send,
{
    map_range(strategy, n, f).into_iter().flatten().collect()
}
