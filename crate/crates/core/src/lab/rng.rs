//! Counter-based random streams.
//!
//! Every consumer draws from its own ChaCha stream selected by
//! `(root seed, purpose, index)`, so adding draws to one stream never shifts
//! another and results do not depend on thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for; part of the stream id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Dataset = 1,
    Trials = 2,
    Respond = 3,
    Bootstrap = 4,
    Analysis = 5,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent generator for `index` within `purpose` under `root`.
pub fn stream(root: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(splitmix64(splitmix64(purpose as u64) ^ index));
    rng
}

/// Derive a child seed, for APIs that take a plain seed.
pub fn derive_seed(root: u64, purpose: Purpose, index: u64) -> u64 {
    splitmix64(root ^ splitmix64((purpose as u64) << 32 ^ index))
}
