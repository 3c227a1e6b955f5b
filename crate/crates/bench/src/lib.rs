//! Benchmark inputs shared by the criterion targets.

use inplace_tft::{Residue, RingConfig};

/// Deterministic pseudo-random coefficients.
pub fn coefficients(cfg: &RingConfig, len: usize, seed: u64) -> Vec<Residue> {
    let mut state = seed | 1;
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            cfg.reduce(state)
        })
        .collect()
}
