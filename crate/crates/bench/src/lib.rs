//! Shared fixtures for the criterion benches.

use curv4_core::berger::sampling::random_einstein_operator;
use curv4_core::CurvatureOperator;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Reproducible random Einstein operators in generic frames.
pub fn operators(n: usize, seed: u64) -> Vec<CurvatureOperator> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_einstein_operator(&mut rng)).collect()
}
