//! Seeded random streams. Every generator takes an explicit seed and a stream id,
//! so the same `(seed, stream)` pair yields the same draws on every platform.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

/// Stream used for the matrix entries of a generated instance.
pub const MATRIX_STREAM: u64 = 0;
/// Stream used for the perturbation mask.
pub const PERTURBATION_STREAM: u64 = 1;
/// Stream used for the sign patterns of the empirical condition probe.
pub const PROBE_STREAM: u64 = 2;

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed for item `index` of a sequence driven by `seed` (table rows, sweep trials).
pub fn child_seed(seed: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1 << 32));
    rng.next_u64()
}

/// A uniform draw from `(-1, 1)`.
pub fn uniform<T: Scalar, R: Rng>(rng: &mut R) -> T {
    T::lit(rng.gen_range(-1.0..1.0))
}
