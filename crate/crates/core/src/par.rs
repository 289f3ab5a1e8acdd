//! Data-parallel helpers. With the `parallel` feature the work is spread
//! over a rayon pool; without it, or under [`Exec::Sequential`], the same
//! closures run in order on the calling thread. Results keep input order
//! either way.

use std::ops::Range;

/// Environment variable overriding the worker count.
pub const WORKERS_ENV: &str = "EISENLAB_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Worker count from [`WORKERS_ENV`], else the available parallelism.
pub fn workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Sizes the global pool; later calls have no effect.
pub fn init_workers(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn map_range<R, F>(exec: Exec, range: Range<i64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(i64) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            range.into_par_iter().map(f).collect()
        }
        _ => range.map(f).collect(),
    }
}

/// Splits `0..n` into at most `parts` contiguous chunks.
pub fn chunks(n: usize, parts: usize) -> Vec<Range<usize>> {
    let parts = parts.clamp(1, n.max(1));
    let size = n.div_ceil(parts);
    (0..parts)
        .map(|i| (i * size).min(n)..((i + 1) * size).min(n))
        .filter(|r| !r.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Exec::Sequential, &xs, |x| x * x);
        let b = map(Exec::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        let c = map_range(Exec::Parallel, -5..5, |x| x * 2);
        assert_eq!(c, (-5..5).map(|x| x * 2).collect::<Vec<_>>());
    }

    #[test]
    fn chunking() {
        assert_eq!(chunks(10, 3), vec![0..4, 4..8, 8..10]);
        assert_eq!(chunks(0, 3), Vec::<Range<usize>>::new());
        assert_eq!(chunks(2, 8), vec![0..1, 1..2]);
    }
}
