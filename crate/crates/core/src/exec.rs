//! Execution strategy for the checker kernels and enumeration sweeps.
//!
//! With the `parallel` feature (default) the sweeps run on rayon; without it
//! they fall back to plain sequential iterators. Both paths produce results
//! in identical order, so reports are byte-for-byte the same either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `0..n` and concatenates the per-index result vectors in
/// index order.
#[cfg(feature = "parallel")]
pub(crate) fn flat_map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    (0..n).into_par_iter().flat_map_iter(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn flat_map_indexed<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> Vec<R> + Sync + Send,
{
    (0..n).flat_map(f).collect()
}

/// Keeps the codes in `0..n` accepted by `f`, in ascending order.
#[cfg(feature = "parallel")]
pub(crate) fn filter_codes<F>(n: u64, f: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..n).into_par_iter().filter(|&c| f(c)).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn filter_codes<F>(n: u64, f: F) -> Vec<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    (0..n).filter(|&c| f(c)).collect()
}
