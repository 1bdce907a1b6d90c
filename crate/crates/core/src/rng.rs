//! The single random generator used everywhere.
//!
//! ChaCha with 8 rounds, seeded from a `u64` through `SeedableRng::seed_from_u64`.
//! The stream is specified independently of platform and word size, so a run
//! is reproducible from its seed alone.

use rand::{Rng as _, SeedableRng};
pub use rand_chacha::ChaCha8Rng as Rng;

pub fn from_seed(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

/// Draws a fresh seed for a sub-stream.
pub fn derive_seed(rng: &mut Rng) -> u64 {
    rng.gen()
}
