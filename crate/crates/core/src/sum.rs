//! Deterministic summation.
//!
//! Integrals over ontic grids must be reproducible bit-for-bit across runs
//! and across thread counts. Pairwise summation with fixed split points has
//! that property: the reduction tree depends only on the index range, never
//! on scheduling, so `rayon::join` over the same halves produces the same
//! floating-point result as the sequential recursion.

/// Below this range length the recursion sums sequentially.
const LEAF: usize = 64;

/// Ranges at least this long are split across the rayon pool.
const PAR_THRESHOLD: usize = 16_384;

fn sum_range<F>(lo: usize, hi: usize, f: &F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let n = hi - lo;
    if n <= LEAF {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        return acc;
    }
    let mid = lo + n / 2;
    if n >= PAR_THRESHOLD {
        let (a, b) = rayon::join(|| sum_range(lo, mid, f), || sum_range(mid, hi, f));
        a + b
    } else {
        sum_range(lo, mid, f) + sum_range(mid, hi, f)
    }
}

/// Pairwise sum of `f(0) + f(1) + ... + f(n-1)`, bit-identical for any
/// rayon pool size.
pub fn pairwise_map_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if n == 0 {
        return 0.0;
    }
    sum_range(0, n, &f)
}

/// Pairwise sum of a slice.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    pairwise_map_sum(xs.len(), |i| xs[i])
}
