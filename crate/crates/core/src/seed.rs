//! Deterministic seed derivation and random draws.
//!
//! Every randomized routine takes a user seed and derives one independent
//! stream per trial or attempt, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Scalar;
use crate::polynomial::{Polynomial, RingContext};
use crate::{Error, Result};

/// Draws of an all-zero linear form are retried at most this many times.
pub const ZERO_DRAW_CAP: usize = 64;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for stream number `index` under `seed`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index.wrapping_add(1)))
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

/// A nonzero linear form with independent uniform coefficients.
pub fn random_linear_form(ctx: RingContext, rng: &mut ChaCha8Rng, seed: u64) -> Result<Polynomial> {
    let field = ctx.field();
    for _ in 0..ZERO_DRAW_CAP {
        let coeffs: Vec<Scalar> = (0..ctx.num_vars()).map(|_| field.random(rng)).collect();
        if coeffs.iter().any(|c| !field.is_zero(c)) {
            return Polynomial::linear_form(ctx, &coeffs);
        }
    }
    Err(Error::DegenerateRandomness { attempts: ZERO_DRAW_CAP, seed })
}
