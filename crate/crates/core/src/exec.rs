//! Execution strategy for the exhaustive searches.
//!
//! Every brute-force oracle and batch operation takes an [`Execution`]. With the
//! `parallel` feature (on by default) [`Execution::Parallel`] fans the candidate
//! space out over rayon; without it the same variant runs sequentially. Results are
//! identical either way: searches return the *first* match in enumeration order and
//! maps preserve input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// Whether work is actually spread across threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// First index in `0..n` (in ascending order) whose result is `Some`.
    pub fn find_first<T, F>(self, n: u64, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_map_first(&f);
        }
        (0..n).find_map(f)
    }

    pub fn any<F>(self, n: u64, f: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().any(&f);
        }
        (0..n).any(f)
    }

    pub fn all<F>(self, n: u64, f: F) -> bool
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        !self.any(n, |i| !f(i))
    }

    /// Order-preserving map over a slice.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(&f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Order-preserving fallible map; the error reported is the one at the lowest index.
    pub fn try_map<T, U, E, F>(self, items: &[T], f: F) -> Result<Vec<U>, E>
    where
        T: Sync,
        U: Send,
        E: Send,
        F: Fn(&T) -> Result<U, E> + Sync + Send,
    {
        self.map(items, f).into_iter().collect()
    }

    /// Number of indices in `0..n` satisfying `f`.
    pub fn count<F>(self, n: u64, f: F) -> u64
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| f(i)).count() as u64;
        }
        (0..n).filter(|&i| f(i)).count() as u64
    }
}
