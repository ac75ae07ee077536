//! Seed plumbing. Every random choice in the crate flows from a 64-bit seed
//! through ChaCha8, with independent streams per consumer so that adding a
//! consumer never perturbs another one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GameRng = ChaCha8Rng;

/// Stream identifiers used by the game harness.
pub mod stream {
    pub const GRAPH: u64 = 1;
    pub const MAKER: u64 = 2;
    pub const BREAKER: u64 = 3;
    pub const VIRTUAL: u64 = 4;
    pub const PARTITION: u64 = 5;
    pub const AUDIT: u64 = 6;
}

pub fn rng_from(seed: u64, stream: u64) -> GameRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Derives a child seed; used when a component needs a seed rather than a
/// generator (e.g. nested sub-boards).
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    // splitmix64 finaliser
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
