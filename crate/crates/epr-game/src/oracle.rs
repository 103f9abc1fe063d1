//! Brute-force state-vector simulator.
//!
//! This is the ground truth the closed forms are validated against: it
//! prepares the shared state explicitly, applies every local rotor as a 2x2
//! unitary and projects onto the rotated measurement basis. Cost is
//! O(N * 2^N) per frame, which keeps it honest and keeps it small.
//!
//! Conventions (these pin every sign in the closed forms):
//! * basis index: player 1 is the most significant bit;
//! * `Rz(t) = diag(e^{-it/2}, e^{+it/2})`, `Ry(t)|0> = cos(t/2)|0> + sin(t/2)|1>`;
//! * outcome 0 ("spin-up") on a detector at angle `kappa` projects onto
//!   `Ry(kappa)|0>`, i.e. the spin direction `(sin kappa, 0, cos kappa)`.

use num_complex::Complex64;

use crate::closedform::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::frame::{MeasurementFrame, RotorAngles, StateFamily};

/// Largest qubit count the simulator will materialize.
pub const ORACLE_LIMIT: usize = 20;

/// A 2x2 complex matrix acting on one qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary {
    m: [[Complex64; 2]; 2],
}

impl LocalUnitary {
    pub fn from_rows(r0: [Complex64; 2], r1: [Complex64; 2]) -> Self {
        Self { m: [r0, r1] }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    /// `self * rhs` as operators (`self` applied last).
    pub fn compose(&self, rhs: &LocalUnitary) -> LocalUnitary {
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        LocalUnitary { m }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> LocalUnitary {
        LocalUnitary {
            m: [
                [self.m[0][0].conj(), self.m[1][0].conj()],
                [self.m[0][1].conj(), self.m[1][1].conj()],
            ],
        }
    }

    /// Max-abs deviation of `U * U^dagger` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dagger();
        let p = self.compose(&d);
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let expect = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((p.m[r][c] - Complex64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

/// Rotation about e2: `Ry(t)|0> = cos(t/2)|0> + sin(t/2)|1>`.
pub fn ry(theta: f64) -> LocalUnitary {
    let (s, c) = (theta / 2.0).sin_cos();
    LocalUnitary::from_rows(
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    )
}

/// Rotation about e3: `Rz(t) = diag(e^{-it/2}, e^{+it/2})`.
pub fn rz(theta: f64) -> LocalUnitary {
    LocalUnitary::from_rows(
        [
            Complex64::from_polar(1.0, -theta / 2.0),
            Complex64::new(0.0, 0.0),
        ],
        [
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, theta / 2.0),
        ],
    )
}

/// Euler-angle rotor as a unitary: `Rz(alpha3) * Ry(alpha1) * Rz(alpha2)`.
pub fn rotor_to_unitary(rotor: &RotorAngles) -> LocalUnitary {
    rz(rotor.alpha3)
        .compose(&ry(rotor.alpha1))
        .compose(&rz(rotor.alpha2))
}

/// Full N-qubit state, player 1 = most significant bit of the index.
#[derive(Clone, Debug)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply a 2x2 unitary to one qubit (0-based, qubit 0 = player 1 = MSB).
    pub fn apply_single_qubit(&mut self, qubit: usize, u: &LocalUnitary) {
        assert!(qubit < self.n_qubits, "qubit index out of range");
        let stride = 1usize << (self.n_qubits - 1 - qubit);
        let block = stride * 2;
        let (u00, u01) = (u.entry(0, 0), u.entry(0, 1));
        let (u10, u11) = (u.entry(1, 0), u.entry(1, 1));
        for base in (0..self.amplitudes.len()).step_by(block) {
            for off in base..base + stride {
                let a0 = self.amplitudes[off];
                let a1 = self.amplitudes[off + stride];
                self.amplitudes[off] = u00 * a0 + u01 * a1;
                self.amplitudes[off + stride] = u10 * a0 + u11 * a1;
            }
        }
    }

    /// Born-rule probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// Prepare the shared state: GHZ `cos(gamma/2)|0..0> + sin(gamma/2)|1..1>`
/// or the W superposition with amplitude `1/sqrt(N)` per single-excitation
/// basis state (`gamma` ignored).
pub fn build_state(family: StateFamily, n: usize, gamma: f64) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::TooFewPlayers { min: 2, got: n });
    }
    if n > ORACLE_LIMIT {
        return Err(Error::DenseLimitExceeded {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    let dim = 1usize << n;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
    match family {
        StateFamily::Ghz => {
            amplitudes[0] = Complex64::new((gamma / 2.0).cos(), 0.0);
            amplitudes[dim - 1] = Complex64::new((gamma / 2.0).sin(), 0.0);
        }
        StateFamily::W => {
            let amp = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            for qubit in 0..n {
                amplitudes[1usize << (n - 1 - qubit)] = amp;
            }
        }
    }
    Ok(StateVector {
        n_qubits: n,
        amplitudes,
    })
}

/// Rotate the state by the per-qubit rotors, then measure each qubit along
/// its `kappa` direction. Outcome bit 0 projects onto `Ry(kappa)|0>`.
pub fn measured_distribution(
    state: &StateVector,
    rotors: &[RotorAngles],
    kappas: &[f64],
) -> Result<OutcomeDistribution> {
    let n = state.n_qubits;
    if rotors.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: rotors.len(),
        });
    }
    if kappas.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: kappas.len(),
        });
    }
    let mut work = state.clone();
    for qubit in 0..n {
        // One fused layer: measurement-basis change after the local rotor.
        let m = ry(kappas[qubit])
            .dagger()
            .compose(&rotor_to_unitary(&rotors[qubit]));
        work.apply_single_qubit(qubit, &m);
    }
    OutcomeDistribution::from_probabilities(n, work.probabilities())
}

/// Convenience: simulate a whole measurement frame.
pub fn frame_distribution(frame: &MeasurementFrame) -> Result<OutcomeDistribution> {
    let state = build_state(frame.family(), frame.n_players(), frame.gamma())?;
    measured_distribution(&state, frame.rotors(), frame.kappas())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn ghz_product_state_at_zero_gamma() {
        let s = build_state(StateFamily::Ghz, 2, 0.0).unwrap();
        assert_close(s.amplitudes()[0].re, 1.0, 1e-15);
        assert_close(s.norm_sqr(), 1.0, 1e-15);
    }

    #[test]
    fn ghz_equal_superposition_at_max_gamma() {
        let s = build_state(StateFamily::Ghz, 3, FRAC_PI_2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_close(s.amplitudes()[0].re, r, 1e-15);
        assert_close(s.amplitudes()[7].re, r, 1e-15);
        assert!(s.amplitudes()[1..7].iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn w_state_single_excitations() {
        let s = build_state(StateFamily::W, 3, 0.0).unwrap();
        let r = 1.0 / 3f64.sqrt();
        // indices 100, 010, 001 in binary
        for idx in [4usize, 2, 1] {
            assert_close(s.amplitudes()[idx].re, r, 1e-15);
        }
        assert_close(s.norm_sqr(), 1.0, 1e-15);
    }

    #[test]
    fn rejects_small_and_oversized_systems() {
        assert!(build_state(StateFamily::Ghz, 1, 0.0).is_err());
        assert!(build_state(StateFamily::Ghz, ORACLE_LIMIT + 1, 0.0).is_err());
    }

    #[test]
    fn identity_rotor_is_identity() {
        let u = rotor_to_unitary(&RotorAngles::IDENTITY);
        assert_close(
            (u.entry(0, 0) - Complex64::new(1.0, 0.0)).norm(),
            0.0,
            1e-15,
        );
        assert_close(u.entry(0, 1).norm(), 0.0, 1e-15);
    }

    #[test]
    fn half_turn_about_e2_flips_basis() {
        let u = rotor_to_unitary(&RotorAngles::new(PI, 0.0, 0.0));
        // |0> -> |1> up to phase
        assert_close(u.entry(1, 0).norm(), 1.0, 1e-15);
        assert_close(u.entry(0, 0).norm(), 0.0, 1e-15);
    }

    #[test]
    fn random_rotor_is_unitary() {
        let u = rotor_to_unitary(&RotorAngles::new(0.3, 0.5, 0.7));
        assert!(u.unitarity_defect() <= 1e-14);
    }

    #[test]
    fn unitaries_preserve_norm() {
        let mut s = build_state(StateFamily::Ghz, 4, 0.4).unwrap();
        for q in 0..4 {
            s.apply_single_qubit(
                q,
                &rotor_to_unitary(&RotorAngles::new(0.3 * q as f64, 1.0, -0.2)),
            );
        }
        assert_close(s.norm_sqr(), 1.0, 1e-12);
    }

    #[test]
    fn bell_pair_measured_in_own_basis() {
        let s = build_state(StateFamily::Ghz, 2, FRAC_PI_2).unwrap();
        let d = measured_distribution(&s, &[RotorAngles::IDENTITY; 2], &[0.0, 0.0]).unwrap();
        assert_close(d.probability(0), 0.5, 1e-15);
        assert_close(d.probability(3), 0.5, 1e-15);
        assert_close(d.probability(1), 0.0, 1e-15);
        assert_close(d.probability(2), 0.0, 1e-15);
    }

    #[test]
    fn computational_measurement_returns_amplitude_moduli() {
        let s = build_state(StateFamily::W, 3, 0.0).unwrap();
        let d = measured_distribution(&s, &[RotorAngles::IDENTITY; 3], &[0.0; 3]).unwrap();
        for (idx, amp) in s.amplitudes().iter().enumerate() {
            assert_close(d.probability(idx as u64), amp.norm_sqr(), 1e-15);
        }
    }

    #[test]
    fn single_direction_projection_angle() {
        // Two-qubit product state |00>, detector 1 rotated: P(0 on qubit 1) = cos^2(kappa/2).
        let s = build_state(StateFamily::Ghz, 2, 0.0).unwrap();
        let kappa = 0.8;
        let d = measured_distribution(&s, &[RotorAngles::IDENTITY; 2], &[kappa, 0.0]).unwrap();
        let p0: f64 = d.probability(0) + d.probability(1);
        assert_close(p0, (kappa / 2.0).cos().powi(2), 1e-14);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let s = build_state(StateFamily::Ghz, 2, 0.0).unwrap();
        assert!(measured_distribution(&s, &[RotorAngles::IDENTITY; 3], &[0.0; 2]).is_err());
        assert!(measured_distribution(&s, &[RotorAngles::IDENTITY; 2], &[0.0; 3]).is_err());
    }
}
