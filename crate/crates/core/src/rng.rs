//! Seeded randomness. Every random choice in the crate flows from a ChaCha8
//! generator keyed by a 64-bit seed, so runs are reproducible across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent generator for item `index` of a batch, so batches can be split
/// across workers without changing any item's draws.
pub fn stream(seed: u64, index: u64) -> Rng64 {
    let mut rng = seeded(seed);
    rng.set_stream(index);
    rng
}

/// Generator for restart `restart` of a multi-start search (`seed XOR restart`).
pub fn restart(seed: u64, restart: u64) -> Rng64 {
    seeded(seed ^ restart)
}
