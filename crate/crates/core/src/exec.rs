//! Data-parallel evaluation helpers.
//!
//! Every hot loop in this crate is a map over independent samples (time
//! grids, q-grids, sweep cells). With the `parallel` feature the indexed
//! maps fan out over rayon; without it they run sequentially. The `*_seq`
//! variants are always available so benchmarks can compare both paths in
//! one build. Output order is by index either way, so results are
//! identical regardless of thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Sequential twin of [`map_indexed`].
pub fn map_indexed_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Map `f` over a slice, collecting results in order.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

/// Map `f` over a slice, collecting results in order.
#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexed_map_preserves_order() {
        let out = map_indexed(1000, |i| i * i);
        let expected = map_indexed_seq(1000, |i| i * i);
        assert_eq!(out, expected);
    }

    #[test]
    fn slice_map_preserves_order() {
        let input: Vec<f64> = (0..257).map(|i| i as f64).collect();
        let out = map_slice(&input, |x| x * 2.0);
        assert_eq!(out, input.iter().map(|x| x * 2.0).collect::<Vec<_>>());
    }
}
