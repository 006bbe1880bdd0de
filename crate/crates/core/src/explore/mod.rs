//! Exhaustive small-order sweeps, randomized stress tests, and searches for
//! extremal graphs and matrices.
//!
//! All entry points take a worker count and produce bit-identical results for any
//! value of it: work items draw randomness from per-item seeds, and reductions use
//! total orders with deterministic tie-breaks.

mod descent;
mod fuzz;
mod search;
mod stress;
mod sweep;

pub use descent::{lambda_subgradient, polytope_descent, DescentRecord, Subgradient};
pub use fuzz::{frame_fuzz, FuzzMode, FuzzResult};
pub use search::{max_lambda3_search, SearchRecord};
pub use stress::{random_graph_stress, stress_sample, StressResult};
pub use sweep::{exhaustive_sweep, read_checkpoint, Checkpoint, SweepOptions, SweepResult};

use crate::error::{Error, Result};

/// Runs `f` on a dedicated rayon pool with `workers` threads.
pub(crate) fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(Error::InvalidArgument("workers must be positive".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Default worker count: the machine's available parallelism.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
