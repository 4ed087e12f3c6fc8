//! Execution strategy for the enumeration loops.
//!
//! Every heavy loop in this crate walks a dense index space `0..total` in
//! base `d`. The space is cut into contiguous chunks; each chunk is folded
//! into a private accumulator and the accumulators are merged with an
//! associative reduction, so the result does not depend on scheduling.
//!
//! With the `parallel` feature (on by default) chunks run on the rayon pool.
//! Without it, [`Execution::Parallel`] silently degrades to sequential.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
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

/// Bounds the size of the global worker pool. Only effective once, and only
/// with the `parallel` feature.
pub fn configure_threads(threads: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        false
    }
}

pub fn parallel_available() -> bool {
    cfg!(feature = "parallel")
}

pub(crate) fn chunk_ranges(total: u64, chunk: u64) -> Vec<Range<u64>> {
    let chunk = chunk.max(1);
    let mut out = Vec::with_capacity(total.div_ceil(chunk) as usize);
    let mut start = 0;
    while start < total {
        let end = (start + chunk).min(total);
        out.push(start..end);
        start = end;
    }
    out
}

/// Picks a chunk length giving a few hundred chunks, rounded to a power of
/// `base` so chunk boundaries line up with the odometer's low digits.
pub(crate) fn chunk_len(total: u64, base: u64) -> u64 {
    let target = (total / 256).max(1);
    let mut len = 1u64;
    while len * base <= target {
        len *= base;
    }
    len
}

pub(crate) fn fold_chunks<A, F, M>(
    exec: Execution,
    ranges: Vec<Range<u64>>,
    identity: impl Fn() -> A + Sync + Send,
    fold: F,
    merge: M,
) -> A
where
    A: Send,
    F: Fn(&mut A, Range<u64>) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => ranges
            .into_par_iter()
            .map(|range| {
                let mut acc = identity();
                fold(&mut acc, range);
                acc
            })
            .reduce(&identity, &merge),
        _ => ranges.into_iter().fold(identity(), |total, range| {
            let mut acc = identity();
            fold(&mut acc, range);
            merge(total, acc)
        }),
    }
}

/// Returns the hit from the earliest chunk that has one. Parallel mode may
/// skip chunks after a hit but still reports the same hit as sequential.
pub(crate) fn find_in_chunks<T, F>(exec: Execution, ranges: Vec<Range<u64>>, find: F) -> Option<T>
where
    T: Send,
    F: Fn(Range<u64>) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => ranges.into_par_iter().find_map_first(find),
        _ => ranges.into_iter().find_map(find),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_exactly() {
        let ranges = chunk_ranges(1000, 64);
        assert_eq!(ranges.first().unwrap().start, 0);
        assert_eq!(ranges.last().unwrap().end, 1000);
        for pair in ranges.windows(2) {
            assert_eq!(pair[0].end, pair[1].start);
        }
        assert!(chunk_ranges(0, 10).is_empty());
    }

    #[test]
    fn chunk_len_is_power_of_base() {
        assert_eq!(chunk_len(125, 5), 1);
        let len = chunk_len(11u64.pow(7), 11);
        assert_eq!(11u64.pow(7) % len, 0);
    }

    #[test]
    fn both_strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let sum = fold_chunks(
                exec,
                chunk_ranges(10_000, 97),
                || 0u64,
                |acc, r| *acc += r.sum::<u64>(),
                |a, b| a + b,
            );
            assert_eq!(sum, 10_000 * 9_999 / 2);
            let hit = find_in_chunks(exec, chunk_ranges(10_000, 97), |r| {
                r.into_iter().find(|&i| i == 4321)
            });
            assert_eq!(hit, Some(4321));
        }
    }
}
