//! Seed derivation so every random draw is reproducible from one base seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mixes a base seed with a purpose tag and an index.
pub fn derive_seed(base: u64, tag: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(base) ^ tag) ^ index)
}

pub fn rng_for(base: u64, tag: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, tag, index))
}

pub(crate) mod tags {
    pub const SPECIALIZE: u64 = 0x5350_4543;
    pub const SAMPLE: u64 = 0x5341_4d50;
    pub const FITTING: u64 = 0x4649_5454;
    pub const GOVERN: u64 = 0x474f_5645;
    pub const CANON: u64 = 0x4341_4e4f;
    pub const REPORT: u64 = 0x5245_504f;
}
