//! Index-range sweeps used by the exhaustive checks.
//!
//! With the `parallel` feature the range is split across the rayon pool;
//! without it every sweep runs on the calling thread. Both back ends return
//! the result for the smallest failing index, so reports do not depend on
//! the number of workers.

use crate::error::{Error, Result};

pub mod sequential {
    /// First `Some` produced by `f` over `0..len`, in index order.
    pub fn find_first<T, F>(len: usize, f: F) -> Option<T>
    where
        F: Fn(usize) -> Option<T>,
    {
        (0..len).find_map(f)
    }

    pub fn map<T, F>(len: usize, f: F) -> Vec<T>
    where
        F: Fn(usize) -> T,
    {
        (0..len).map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub mod parallel {
    use rayon::prelude::*;

    pub fn find_first<T, F>(len: usize, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(usize) -> Option<T> + Sync + Send,
    {
        (0..len).into_par_iter().find_map_first(f)
    }

    pub fn map<T, F>(len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..len).into_par_iter().map(f).collect()
    }
}

#[cfg(feature = "parallel")]
pub use parallel::{find_first, map};
#[cfg(not(feature = "parallel"))]
pub use sequential::{find_first, map};

/// Sizes the global worker pool. Only the first call has an effect; later
/// calls with a different count are reported as an error.
#[cfg(feature = "parallel")]
pub fn configure_workers(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("worker count must be positive".into()));
    }
    match rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
        Ok(()) => Ok(()),
        Err(_) if rayon::current_num_threads() == n => Ok(()),
        Err(e) => Err(Error::InvalidParams(e.to_string())),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn configure_workers(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("worker count must be positive".into()));
    }
    Ok(())
}

/// Reads `CONTRACTA_WORKERS` and sizes the pool accordingly.
pub fn configure_from_env() -> Result<()> {
    match std::env::var("CONTRACTA_WORKERS") {
        Ok(v) => {
            let n = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("CONTRACTA_WORKERS = `{v}`")))?;
            configure_workers(n)
        }
        Err(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_the_smallest_index() {
        let hit = |i: usize| (i % 97 == 13 && i > 500).then_some(i);
        assert_eq!(sequential::find_first(100_000, hit), Some(595));
        assert_eq!(find_first(100_000, hit), Some(595));
        assert_eq!(find_first(10, hit), None);
    }

    #[test]
    fn map_preserves_order() {
        assert_eq!(map(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }
}
