//! Seeded parameter draws shared by `verify --random` and `sweep --random`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soltrans_core::profile::F1Params;

pub const GENERATOR: &str = "ChaCha8";

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let m = rng.gen_range(lo..=hi);
    if rng.gen_bool(0.5) {
        -m
    } else {
        m
    }
}

/// Half the draws have `μ = 0`; otherwise `|μ| ∈ [0.25, 3]`. `|λ| ∈ [0.25, 3]`
/// and `θ₀ ∈ [−π, π]`.
pub fn draw_f1(rng: &mut ChaCha8Rng) -> F1Params {
    let lambda = signed(rng, 0.25, 3.0);
    let mu = if rng.gen_bool(0.5) {
        0.0
    } else {
        signed(rng, 0.25, 3.0)
    };
    let theta0 = rng.gen_range(-PI..=PI);
    F1Params::new(lambda, mu, theta0)
}

pub fn draws(k: usize, seed: u64) -> Vec<F1Params> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| draw_f1(&mut rng)).collect()
}
