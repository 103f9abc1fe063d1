//! Shared helpers for the integration suites.
#![allow(dead_code)] // each suite uses its own subset

use std::f64::consts::{FRAC_PI_2, TAU};

use epr_game::{MeasurementFrame, OutcomeDistribution, RotorAngles, StateFamily};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rotor(rng: &mut ChaCha8Rng) -> RotorAngles {
    RotorAngles::new(
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
        rng.gen_range(0.0..TAU),
    )
}

pub fn random_frame(rng: &mut ChaCha8Rng, family: StateFamily, n: usize) -> MeasurementFrame {
    let rotors = (0..n).map(|_| random_rotor(rng)).collect();
    let kappas = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
    let gamma = match family {
        StateFamily::Ghz => rng.gen_range(-FRAC_PI_2..=FRAC_PI_2),
        StateFamily::W => 0.0,
    };
    MeasurementFrame::new(family, gamma, rotors, kappas).expect("random frame is valid")
}

pub fn max_abs_dev(a: &OutcomeDistribution, b: &OutcomeDistribution) -> f64 {
    a.probabilities()
        .iter()
        .zip(b.probabilities())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[track_caller]
pub fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}
