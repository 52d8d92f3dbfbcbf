//! Data-parallel evaluation with a sequential fallback.
//!
//! Every parallel loop in the crate goes through [`map_indexed`], which
//! preserves output order. Reductions are always done afterwards over the
//! ordered output, so results are bit-identical between the two modes.

/// How to run the data-parallel inner loops.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise the same as `Sequential`.
    #[default]
    Parallel,
}

impl Execution {
    /// `true` if this mode will actually fan out to a thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel, in index order.
pub fn map_indexed<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}
