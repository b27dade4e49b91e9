//! Random streams.
//!
//! All simulation uses ChaCha20, a counter-based generator, so a 64-bit
//! seed plus a stream index reproduces the same draws on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type SimRng = ChaCha20Rng;

/// Name written into output headers next to the seed.
pub const RNG_NAME: &str = "chacha20";

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
