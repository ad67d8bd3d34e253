//! Seeded integer sampling. Every sample stream is derived from `(seed, stream)`
//! so loops can run in any order and still reproduce the same points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{int, Rational};

/// Coordinates are drawn uniformly from `[-BOUND, BOUND]`.
pub const BOUND: i64 = 999;

/// Number of extra rounds allowed when a sample looks non-generic.
pub const MAX_RESAMPLES: usize = 8;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

pub fn random_int(rng: &mut ChaCha8Rng) -> Rational {
    int(rng.gen_range(-BOUND..=BOUND))
}

pub fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let v = rng.gen_range(-BOUND..=BOUND);
        if v != 0 {
            return int(v);
        }
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| random_int(rng)).collect()
}

/// Random vector supported on the indices where `keep` holds.
pub fn random_masked(rng: &mut ChaCha8Rng, dim: usize, keep: impl Fn(usize) -> bool) -> Vec<Rational> {
    (0..dim).map(|i| if keep(i) { random_int(rng) } else { int(0) }).collect()
}
