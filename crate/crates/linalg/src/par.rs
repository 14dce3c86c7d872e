//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature the maps run on rayon's pool unless switched
//! off at runtime with [`set_parallel`]; without the feature they are plain
//! iterators. Results are always returned in input order.

use std::sync::atomic::{AtomicBool, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(true);

/// Below this many entries a chunked pass is cheaper than a rayon dispatch.
pub const MIN_PARALLEL_CELLS: usize = 1 << 15;

/// Same for [`par_map_range`], whose items are single cheap evaluations.
pub const MIN_PARALLEL_ITEMS: usize = 256;

/// Runtime switch, used by benches to time both paths in one binary.
pub fn set_parallel(on: bool) {
    ENABLED.store(on, Ordering::SeqCst);
}

pub fn parallel_enabled() -> bool {
    cfg!(feature = "parallel") && ENABLED.load(Ordering::SeqCst)
}

#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    if parallel_enabled() && items.len() > 1 {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    items.iter().map(f).collect()
}

/// Meant for many cheap items, so small ranges stay on the calling thread.
pub fn par_map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    if n < MIN_PARALLEL_ITEMS {
        return (0..n).map(f).collect();
    }
    let idx: Vec<usize> = (0..n).collect();
    par_map(&idx, |&i| f(i))
}

/// Applies `f` to fixed-size chunks of `data` (rows of a matrix, typically).
#[cfg(feature = "parallel")]
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    use rayon::prelude::*;
    if chunk == 0 {
        return;
    }
    if parallel_enabled() && data.len() / chunk >= 64 && data.len() >= MIN_PARALLEL_CELLS {
        data.par_chunks_mut(chunk)
            .enumerate()
            .for_each(|(i, c)| f(i, c));
    } else {
        data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
    }
}

#[cfg(not(feature = "parallel"))]
pub fn for_each_chunk_mut<T, F>(data: &mut [T], chunk: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if chunk == 0 {
        return;
    }
    data.chunks_mut(chunk).enumerate().for_each(|(i, c)| f(i, c));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u64> = (0..1000).collect();
        let out = par_map(&v, |x| x * x);
        assert!(out.iter().enumerate().all(|(i, &y)| y == (i * i) as u64));
    }

    #[test]
    fn chunks_cover_everything() {
        let mut v = vec![0usize; 700];
        for_each_chunk_mut(&mut v, 7, |i, c| c.iter_mut().for_each(|x| *x = i));
        assert_eq!(v[699], 99);
    }
}
