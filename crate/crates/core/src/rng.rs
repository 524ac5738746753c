//! The pinned pseudo-random stream shared by the sampler and the seeded
//! garbage fill.
//!
//! Changing anything here changes every sampled number the crate produces,
//! so [`GENERATOR_VERSION`] must be bumped along with it.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

/// Identifies the generator, its seeding and the draw method.
pub const GENERATOR_VERSION: &str = "xoshiro256++/splitmix64-seed/substream-v2/pow2-rejection";

/// Odd multiplier used to spread integer keys over the seed space.
pub const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Thin wrapper so the draw method lives next to the generator choice.
#[derive(Clone, Debug)]
pub struct PinnedRng {
    inner: Xoshiro256PlusPlus,
}

impl PinnedRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: Xoshiro256PlusPlus::seed_from_u64(seed),
        }
    }

    /// Stream for a numbered sub-task of a seeded computation.
    pub fn substream(seed: u64, index: u64) -> Self {
        Self::new(splitmix64(seed ^ splitmix64(index)))
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `[0, span)` by rejection from the smallest covering
    /// power-of-two range. `span` must be positive.
    #[inline]
    pub fn below(&mut self, span: u64) -> u64 {
        debug_assert!(span > 0);
        if span == 1 {
            return 0;
        }
        let mask = u64::MAX >> (span - 1).leading_zeros();
        loop {
            let x = self.inner.next_u64() & mask;
            if x < span {
                return x;
            }
        }
    }

    /// Uniform integer in `[1, n]`.
    #[inline]
    pub fn one_to(&mut self, n: u32) -> u32 {
        self.below(u64::from(n)) as u32 + 1
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
