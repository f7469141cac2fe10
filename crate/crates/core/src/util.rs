//! Deterministic parallel reduction.
//!
//! Work items are split into fixed-size blocks; blocks are evaluated in
//! parallel but combined in a fixed pairwise tree whose shape depends only
//! on the item count, so results are bit-identical across thread counts.

use num_complex::Complex;
use rayon::prelude::*;

const BLOCK: usize = 64;

/// Sum `f(i)` over `0..n` with a fixed reduction tree.
pub fn tree_sum_complex<F>(n: usize, f: F) -> Complex<f64>
where
    F: Fn(usize) -> Complex<f64> + Sync,
{
    let blocks: Vec<Complex<f64>> = (0..n.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(n);
            let mut acc = Complex::new(0.0, 0.0);
            for i in lo..hi {
                acc += f(i);
            }
            acc
        })
        .collect();
    pairwise(&blocks)
}

/// Fixed-topology pairwise sum of a slice.
pub fn pairwise(xs: &[Complex<f64>]) -> Complex<f64> {
    match xs.len() {
        0 => Complex::new(0.0, 0.0),
        1 => xs[0],
        n => {
            let mid = n / 2;
            pairwise(&xs[..mid]) + pairwise(&xs[mid..])
        }
    }
}

/// Relative gap |a - b| / max(|a|, |b|), with an absolute fallback when both
/// sides are tiny.
pub fn rel_gap(a: Complex<f64>, b: Complex<f64>) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale < 1e-300 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}
