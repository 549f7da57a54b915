//! Deterministic seeding for Monte-Carlo trials.
//!
//! Trial `i` of a run seeded with `s` draws from its own generator seeded by
//! `mix(s, i)`, so results do not depend on execution order or on how many
//! trials are requested.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{Algebra, Element};

pub type TrialRng = ChaCha8Rng;

/// Mix a base seed with a stream index (splitmix64 finalizer on both words).
pub fn mix(seed: u64, index: u64) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    splitmix(splitmix(seed) ^ index.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

pub fn rng_for(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial_rng(seed: u64, index: u64) -> TrialRng {
    rng_for(mix(seed, index))
}

pub fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Element with independent standard normal coordinates.
pub fn gaussian_element(algebra: &Arc<Algebra>, rng: &mut impl Rng) -> Element {
    let coords = (0..algebra.dim()).map(|_| gaussian(rng)).collect();
    Element::new(algebra, coords).expect("gaussian coordinates are finite")
}
