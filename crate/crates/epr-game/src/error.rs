use thiserror::Error;

use crate::frame::StateFamily;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by validating constructors and evaluators.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("player count must be at least {min}, got {got}")]
    TooFewPlayers { min: usize, got: usize },

    #[error("expected {expected} per-player entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entanglement angle {0} outside [-pi/2, pi/2]")]
    GammaOutOfRange(f64),

    #[error("angles must be finite")]
    NonFiniteAngle,

    #[error("operation requires the {expected:?} state family, frame holds {got:?}")]
    WrongFamily {
        expected: StateFamily,
        got: StateFamily,
    },

    #[error("outcome index {index} out of range for {n_players} players")]
    OutcomeOutOfRange { index: u64, n_players: usize },

    #[error("outcome has {got} bits, frame has {expected} players")]
    OutcomeMismatch { expected: usize, got: usize },

    #[error("outcome string {0:?} is not a 0/1 bitstring")]
    MalformedOutcome(String),

    #[error(
        "pre-clamp probability {value:e} for outcome {outcome} outside tolerance; \
         this signals a sign-convention regression"
    )]
    ProbabilityOutOfRange { value: f64, outcome: String },

    #[error("dense enumeration is limited to {limit} players, got {n}; use per-outcome queries")]
    DenseLimitExceeded { n: usize, limit: usize },

    #[error("payoff tensor needs {expected} entries, got {got}")]
    TensorSizeMismatch { expected: usize, got: usize },

    #[error("symmetric payoff tensor is not invariant under permuting co-players")]
    TensorNotSymmetric,

    #[error("player index {player} out of range for {n_players} players")]
    PlayerOutOfRange { player: usize, n_players: usize },

    #[error("{0} players exceeds the explicit-tensor limit of 16")]
    TensorLimitExceeded(usize),

    #[error("a first-direction payoff needs at least one first-direction chooser")]
    RoleCountInconsistent,

    #[error("cooperator count {count} out of range for {n_players} players")]
    CooperatorCountOutOfRange { count: usize, n_players: usize },

    #[error("strategy probability {0} outside [0, 1]")]
    ProbabilityNotUnit(f64),

    #[error(
        "mixed-strategy enumeration is limited to 16 players, got {0}; \
             use the embedded-payoff path for larger linear games"
    )]
    MixedEnumerationLimit(usize),

    #[error(
        "payoff parameters do not describe a prisoner-dilemma game (need p1 > 0, p2 >= 0, a > 0)"
    )]
    NotPrisonersDilemma,

    #[error("phase boundaries are undefined at p2 = 0 (delta = 2*p1/p2 diverges)")]
    DegenerateP2,
}
