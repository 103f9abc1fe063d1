//! Measurement frames: which entangled state is shared and how each qubit is
//! rotated and measured.
//!
//! A frame fixes the state family (GHZ-type with entanglement angle `gamma`,
//! or W-type), one local rotor per qubit and one measurement angle `kappa`
//! per player. Measurement directions live in the e1-e3 plane: `kappa`
//! rotates each detector about e2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shared entangled-state family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateFamily {
    /// `cos(gamma/2)|0..0> + sin(gamma/2)|1..1>`
    Ghz,
    /// Uniform superposition of the N single-excitation basis states.
    W,
}

/// Euler-angle triple `(alpha1, alpha2, alpha3)` of one qubit's local rotor,
/// composed as Rz(alpha3) * Ry(alpha1) * Rz(alpha2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RotorAngles {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl RotorAngles {
    pub const IDENTITY: RotorAngles = RotorAngles {
        alpha1: 0.0,
        alpha2: 0.0,
        alpha3: 0.0,
    };

    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Self {
        Self {
            alpha1,
            alpha2,
            alpha3,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.alpha1.is_finite() && self.alpha2.is_finite() && self.alpha3.is_finite()
    }
}

/// Slack accepted beyond `[-pi/2, pi/2]` so that decimal-rounded inputs like
/// `--gamma 1.5708` are not rejected.
pub const GAMMA_SLACK: f64 = 1e-3;

/// Cached sines and cosines of one qubit's angles; keeps per-outcome
/// evaluation free of trigonometry.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct QubitTrig {
    pub sin_a1: f64,
    pub cos_a1: f64,
    pub sin_a2: f64,
    pub cos_a2: f64,
    pub sin_a3: f64,
    pub cos_a3: f64,
    pub sin_k: f64,
    pub cos_k: f64,
}

impl QubitTrig {
    pub(crate) fn new(rotor: &RotorAngles, kappa: f64) -> Self {
        let (sin_a1, cos_a1) = rotor.alpha1.sin_cos();
        let (sin_a2, cos_a2) = rotor.alpha2.sin_cos();
        let (sin_a3, cos_a3) = rotor.alpha3.sin_cos();
        let (sin_k, cos_k) = kappa.sin_cos();
        Self {
            sin_a1,
            cos_a1,
            sin_a2,
            cos_a2,
            sin_a3,
            cos_a3,
            sin_k,
            cos_k,
        }
    }
}

/// Per-qubit rotors and chosen measurement angles against a shared state.
///
/// Player 1 owns the leftmost outcome bit; internally players are indexed
/// from 0 in the same order.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementFrame {
    family: StateFamily,
    n_players: usize,
    gamma: f64,
    rotors: Vec<RotorAngles>,
    kappas: Vec<f64>,
    trig: Vec<QubitTrig>,
}

impl MeasurementFrame {
    /// Validating constructor. `gamma` is ignored (and stored as 0) for the
    /// W family, whose entanglement cannot be switched off.
    pub fn new(
        family: StateFamily,
        gamma: f64,
        rotors: Vec<RotorAngles>,
        kappas: Vec<f64>,
    ) -> Result<Self> {
        let n_players = rotors.len();
        if n_players < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: n_players,
            });
        }
        if kappas.len() != n_players {
            return Err(Error::LengthMismatch {
                expected: n_players,
                got: kappas.len(),
            });
        }
        if !rotors.iter().all(RotorAngles::is_finite) || !kappas.iter().all(|k| k.is_finite()) {
            return Err(Error::NonFiniteAngle);
        }
        let gamma = match family {
            StateFamily::Ghz => {
                if !gamma.is_finite() {
                    return Err(Error::NonFiniteAngle);
                }
                if gamma.abs() > std::f64::consts::FRAC_PI_2 + GAMMA_SLACK {
                    return Err(Error::GammaOutOfRange(gamma));
                }
                gamma
            }
            StateFamily::W => 0.0,
        };
        let trig = rotors
            .iter()
            .zip(&kappas)
            .map(|(rotor, &kappa)| QubitTrig::new(rotor, kappa))
            .collect();
        Ok(Self {
            family,
            n_players,
            gamma,
            rotors,
            kappas,
            trig,
        })
    }

    /// GHZ-type frame.
    pub fn ghz(gamma: f64, rotors: Vec<RotorAngles>, kappas: Vec<f64>) -> Result<Self> {
        Self::new(StateFamily::Ghz, gamma, rotors, kappas)
    }

    /// W-type frame.
    pub fn w(rotors: Vec<RotorAngles>, kappas: Vec<f64>) -> Result<Self> {
        Self::new(StateFamily::W, 0.0, rotors, kappas)
    }

    /// Frame with identity rotors.
    pub fn with_identity_rotors(family: StateFamily, gamma: f64, kappas: Vec<f64>) -> Result<Self> {
        let rotors = vec![RotorAngles::IDENTITY; kappas.len()];
        Self::new(family, gamma, rotors, kappas)
    }

    pub fn family(&self) -> StateFamily {
        self.family
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn rotors(&self) -> &[RotorAngles] {
        &self.rotors
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    pub(crate) fn trig(&self) -> &[QubitTrig] {
        &self.trig
    }
}
