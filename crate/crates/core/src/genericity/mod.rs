//! Monte Carlo estimates of asymptotic densities.
//!
//! The density of a set `S` of words (or tuples of words) is the limit of the
//! fraction of the ball `G_p` it occupies. Here the fraction is estimated at
//! finite `p` by seeded sampling, for the sets of homomorphisms with remnant,
//! pairs with certified trivial equalizer, and tuples `(φ, ψ, u, v)` with a
//! certificate that `[u] ≠ [v]`.

mod density;
pub mod sampling;

use num_bigint::BigUint;

pub use density::{run_density, DensityConfig, DensityReport, DensityRow, Property};
pub use sampling::{sample_hom, sample_word, RandomModel, SampleMode};

/// Number of reduced words of length exactly `p` in a free group of rank `n`.
pub fn sphere_size(n: usize, p: usize) -> BigUint {
    if p == 0 {
        return BigUint::from(1u32);
    }
    BigUint::from(2 * n) * BigUint::from(2 * n - 1).pow(p as u32 - 1)
}

/// `|G_p| = 1 + Σ_{k=1..p} 2n(2n−1)^{k−1}`.
pub fn ball_size(n: usize, p: usize) -> BigUint {
    (0..=p).map(|k| sphere_size(n, k)).sum()
}

/// 95% Wilson score interval for `count` successes out of `trials`.
/// With no trials the interval is `[0, 1]`.
pub fn wilson_interval(count: u64, trials: u64) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = count as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // the endpoints are exactly 0 and 1 at the boundary counts
    let low = if count == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if count == trials { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}
