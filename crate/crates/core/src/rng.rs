//! Seeded random streams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator whose key is
//! expanded from a 64-bit seed (`ChaCha8Rng::seed_from_u64`) and whose 64-bit
//! stream id selects an independent substream. The stream layout is fixed:
//!
//! | stream id                  | consumer                              |
//! |----------------------------|---------------------------------------|
//! | [`SPLIT_STREAM`]           | vertex split of the pipeline          |
//! | [`GRAPH_STREAM`]           | `G(n, p)` edge sampling               |
//! | [`FOREST_STREAM_BASE`] + r | restart `r` of the forest builder      |
//!
//! Campaign trials never share a seed: trial `i` of a campaign with base seed
//! `b` runs with [`trial_seed`]`(b, i)`, a SplitMix64 mix of both values.
//! ChaCha output is defined bit-for-bit independently of the platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub const SPLIT_STREAM: u64 = 0;
pub const GRAPH_STREAM: u64 = 1;
pub const FOREST_STREAM_BASE: u64 = 1 << 32;

/// Generator for substream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed used by trial `index` of a campaign started from `base`.
pub fn trial_seed(base: u64, index: u64) -> u64 {
    splitmix64(base ^ splitmix64(index))
}
