//! Deterministic random stream shared by every stochastic decision in a run.
//!
//! The generator is ChaCha8 (`rand_chacha`) seeded through
//! `SeedableRng::seed_from_u64`. All derived samples are computed here from
//! raw `u64` outputs rather than through `rand` distributions, so the
//! sequence for a given seed is fixed by this file alone:
//!
//! * `uniform`: the top 53 bits of one `u64`, scaled by 2^-53, giving [0, 1).
//! * `index(n)`: Lemire's multiply-shift with rejection, unbiased on [0, n).
//! * `distinct_indices`: partial Fisher-Yates over the ascending candidate
//!   pool, one `index` draw per chosen element.
//! * `standard_normal`: Box-Muller (cosine branch), two `uniform` draws per
//!   sample, nothing cached between calls.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone)]
pub struct RngStream {
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform real on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform real on [lo, hi). Requires `lo < hi`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        let x = lo + (hi - lo) * self.uniform();
        // lo + width * u can round up to hi when the width is large
        if x >= hi {
            hi.next_down()
        } else {
            x
        }
    }

    /// Uniform integer on [0, n). Panics if `n == 0`.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be non-empty");
        let n = n as u64;
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        if (m as u64) < n {
            let threshold = n.wrapping_neg() % n;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(n);
            }
        }
        (m >> 64) as usize
    }

    /// Uniform integer on the closed range [lo, hi].
    pub fn int_inclusive(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi, "empty integer range [{lo}, {hi}]");
        lo + self.index(hi - lo + 1)
    }

    /// `k` distinct indices from [0, n) that avoid every entry of `exclude`,
    /// in draw order. Panics if fewer than `k` candidates remain.
    pub fn distinct_indices(&mut self, n: usize, k: usize, exclude: &[usize]) -> Vec<usize> {
        let mut pool: Vec<usize> = (0..n).filter(|i| !exclude.contains(i)).collect();
        assert!(
            k <= pool.len(),
            "cannot draw {k} distinct indices from {} candidates",
            pool.len()
        );
        for i in 0..k {
            let j = i + self.index(pool.len() - i);
            pool.swap(i, j);
        }
        pool.truncate(k);
        pool
    }

    pub fn standard_normal(&mut self) -> f64 {
        // 1 - u lies in (0, 1], keeping the logarithm finite
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a root seed and a path of coordinates.
///
/// Each coordinate is folded in with one SplitMix64 step, so the result
/// depends on every coordinate and on their order, and on nothing else.
pub fn derive_seed(root: u64, path: &[u64]) -> u64 {
    let mut state = root;
    let mut out = splitmix64(&mut state);
    for &coord in path {
        state ^= out ^ coord;
        out = splitmix64(&mut state);
    }
    out
}
