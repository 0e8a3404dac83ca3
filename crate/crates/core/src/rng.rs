//! Deterministic random streams.
//!
//! Everything random in the crate is drawn from ChaCha8, a counter-based
//! generator. A master seed selects the key; an index selects one of its
//! 2^64 independent streams. Row `r` of a sampled matrix uses stream `r` of
//! its graph seed, and trial `t` of an experiment derives its seed from
//! stream `t` of the master seed, so results never depend on scheduling.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator for stream `stream` under `seed`.
pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Child seed for sub-task `index` of `master`.
pub fn split_seed(master: u64, index: u64) -> u64 {
    // Stream 0 is reserved for the parent itself.
    stream(master, index.wrapping_add(1)).next_u64()
}
