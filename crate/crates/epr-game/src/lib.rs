//! N-player quantum games in an EPR setting.
//!
//! Players share an entangled N-qubit state (GHZ-type with a tunable
//! entanglement angle, or W-type) and each strategy is a classical choice
//! between two spin-measurement directions on one qubit. This crate
//! computes, exactly:
//!
//! * closed-form outcome distributions for arbitrary rotor and measurement
//!   angles, polynomial in N per outcome ([`closedform`]);
//! * a brute-force state-vector simulator used as ground truth and to pin
//!   every sign convention ([`oracle`]);
//! * payoff tensors, linear payoff functions, the signed a-coefficient
//!   transform, expected/mixed payoffs and the classical embedding
//!   ([`game`]);
//! * symmetric Nash equilibria, prisoner-dilemma phase diagrams in
//!   `cos(gamma)`, boundary parabolas and the W-state optimum
//!   ([`equilibrium`]).
//!
//! The `epr-game` binary exposes all of it as CSV/JSON for scripting; see
//! the crate README.
//!
//! ```
//! use epr_game::{full_distribution, MeasurementFrame, StateFamily};
//! use std::f64::consts::FRAC_PI_2;
//!
//! // Maximally entangled two-player GHZ frame, measured in its own basis:
//! let frame =
//!     MeasurementFrame::with_identity_rotors(StateFamily::Ghz, FRAC_PI_2, vec![0.0, 0.0])?;
//! let dist = full_distribution(&frame)?;
//! assert_eq!(dist.probability(0b00), 0.5);
//! assert_eq!(dist.probability(0b01), 0.0);
//!
//! // The classical limit of the standard prisoner dilemma is all-defect;
//! // the first transition to a cooperating equilibrium sits at cos(gamma) = 1/3.
//! use epr_game::{find_symmetric_pure_ne_cos, LinearPayoff};
//! let pd = LinearPayoff::standard_pd();
//! assert_eq!(find_symmetric_pure_ne_cos(&pd, 2, 1.0)?[0].cooperators, 0);
//! assert_eq!(find_symmetric_pure_ne_cos(&pd, 2, 0.2)?[0].cooperators, 1);
//! # Ok::<(), epr_game::Error>(())
//! ```

pub mod cli;
pub mod closedform;
pub mod equilibrium;
pub mod error;
pub mod frame;
pub mod game;
pub mod oracle;

pub use closedform::{
    full_distribution, full_distribution_with, ghz_outcome_probability,
    ghz_outcome_probability_with, ghz_pair_marginal, k_coeff, omega, outcome_probability, sym_sums,
    w_outcome_probability, x_coeffs, CorrelationCoefficients, Outcome, OutcomeDistribution,
    SignConvention, DENSE_LIMIT,
};
pub use equilibrium::{
    boundary_payoff_curve, boundary_payoff_curve_cos, find_symmetric_pure_ne,
    find_symmetric_pure_ne_cos, max_entanglement_payoffs, ne_bracket, ne_bracket_cos, ne_payoffs,
    ne_payoffs_cos, pd_phase_boundaries, piecewise_coefficients, piecewise_payoff,
    piecewise_tensor, w_pd_optimum, AffinePayoff, NePayoffs, NePoint, PhaseDiagram, PhaseZone,
};
pub use error::{Error, Result};
pub use frame::{MeasurementFrame, RotorAngles, StateFamily};
pub use game::{
    canonical_embedding, embedded_payoff, expected_payoff, mixed_strategy_payoff, ACoefficients,
    DirectionPair, EmbeddingAngles, GameClass, GameFrame, GameSpec, LinearPayoff, PayoffDefinition,
    PayoffTensor, Role, StrategyProfile,
};
pub use oracle::{
    build_state, frame_distribution, measured_distribution, rotor_to_unitary, LocalUnitary,
    StateVector,
};
