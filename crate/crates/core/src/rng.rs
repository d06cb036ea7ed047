//! Deterministic random streams derived from a master seed.
//!
//! Every parallel task (restart, replicate, bootstrap draw) gets its own
//! ChaCha stream keyed by `(seed, index)`, so results do not depend on
//! scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Independent stream number `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A child seed for nesting: task `index` under `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    stream(seed, index).next_u64()
}
