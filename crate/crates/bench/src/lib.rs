//! Shared fixtures for the pipeline benchmarks.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relsteer_core::qstate::random_density_matrix;
use relsteer_core::{AccelerationParams, DensityMatrix4};

/// Seeded random states paired with random accelerations.
pub fn random_inputs(seed: u64, n: usize) -> Vec<(DensityMatrix4, AccelerationParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let rho = random_density_matrix(&mut rng);
            let acc = AccelerationParams::new(
                rng.random_range(0.0..=FRAC_PI_4),
                rng.random_range(0.0..=FRAC_PI_4),
            )
            .expect("sampled inside the domain");
            (rho, acc)
        })
        .collect()
}
