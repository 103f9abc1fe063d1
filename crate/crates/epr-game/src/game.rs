//! Payoff structures and the strategy machinery built on top of the closed
//! forms: explicit payoff tensors, linear payoff functions, the signed
//! a-coefficient transform, expected and mixed-strategy payoffs, and the
//! angle choices that embed the classical game at zero entanglement.
//!
//! Conventions: "cooperate" means choosing the first measurement direction
//! `kappa1`, which corresponds to outcome bit 0; `x^i` is player i's
//! cooperation probability; `n` counts cooperators.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::closedform::{full_distribution, k_coeff, sym_sums, x_coeffs, OutcomeDistribution};
use crate::error::{Error, Result};
use crate::frame::{MeasurementFrame, RotorAngles, StateFamily};

/// Which of their two measurement directions a player chose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// First direction `kappa1` — the cooperator role.
    FirstDirection,
    /// Second direction `kappa2` — the defector role.
    SecondDirection,
}

/// Game classes recognized from linear payoff parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameClass {
    PrisonersDilemma,
    Chicken,
    Minority,
    Unclassified,
}

/// Linear payoff functions over the number of cooperators `n`:
/// `an + b` for first-direction players, `cn + d` for second-direction
/// players.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearPayoff {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl LinearPayoff {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// The standard prisoner-dilemma parameters `(3, -3, 4, 1)`, which give
    /// the usual two-player payoff matrix [[3, 0], [5, 1]].
    pub fn standard_pd() -> Self {
        Self::new(3.0, -3.0, 4.0, 1.0)
    }

    /// Minority game for `n` players: rewards the minority choice.
    pub fn minority(n_players: usize) -> Self {
        Self::new(-1.0, 0.0, 1.0, -(n_players as f64))
    }

    /// A chicken (hawk-dove) game: unilateral defection is best, mutual
    /// defection worst.
    pub fn chicken() -> Self {
        Self::new(1.0, 2.0, 4.0, 1.0)
    }

    /// `p1 = d - (a + b)`.
    pub fn p1(&self) -> f64 {
        self.d - (self.a + self.b)
    }

    /// `p2 = c - a`.
    pub fn p2(&self) -> f64 {
        self.c - self.a
    }

    pub fn classify(&self, n_players: usize) -> GameClass {
        if self.p1() > 0.0 && self.p2() >= 0.0 && self.a > 0.0 {
            GameClass::PrisonersDilemma
        } else if self.c >= self.a && self.d < self.a + self.b && self.a > 0.0 {
            GameClass::Chicken
        } else if self.c == -self.a && self.a < 0.0 && self.d == self.b + self.a * n_players as f64
        {
            GameClass::Minority
        } else {
            GameClass::Unclassified
        }
    }

    pub fn is_prisoners_dilemma(&self) -> bool {
        self.p1() > 0.0 && self.p2() >= 0.0 && self.a > 0.0
    }

    /// Payoff of one player given the total cooperator count and the
    /// player's own role. A first-direction player is part of the count, so
    /// that role needs `n_cooperators >= 1`.
    pub fn value(&self, n_cooperators: usize, role: Role) -> Result<f64> {
        if role == Role::FirstDirection && n_cooperators == 0 {
            return Err(Error::RoleCountInconsistent);
        }
        Ok(self.value_unchecked(n_cooperators, role))
    }

    fn value_unchecked(&self, n_cooperators: usize, role: Role) -> f64 {
        let n = n_cooperators as f64;
        match role {
            Role::FirstDirection => self.a * n + self.b,
            Role::SecondDirection => self.c * n + self.d,
        }
    }
}

fn swap_index_bits(index: u64, n: usize, i: usize, j: usize) -> u64 {
    if i == j {
        return index;
    }
    let pi = n - 1 - i;
    let pj = n - 1 - j;
    if (index >> pi) & 1 != (index >> pj) & 1 {
        index ^ (1u64 << pi) ^ (1u64 << pj)
    } else {
        index
    }
}

/// Payoff tensor `G^p` over outcome bitstrings.
///
/// Symmetric games store the first player's tensor; other players' entries
/// follow by swapping their bit into the first slot. Explicit per-player
/// tensors are a small-N debugging aid.
#[derive(Clone, Debug, PartialEq)]
pub enum PayoffTensor {
    Symmetric {
        n_players: usize,
        entries: Vec<f64>,
    },
    Explicit {
        n_players: usize,
        per_player: Vec<Vec<f64>>,
    },
}

/// Explicit tensors do not scale past this player count.
pub const TENSOR_LIMIT: usize = 16;

impl PayoffTensor {
    /// First player's tensor of a symmetric game. Entries are validated to
    /// be invariant under permuting the co-players.
    pub fn symmetric(n_players: usize, entries: Vec<f64>) -> Result<Self> {
        Self::check_size(n_players, entries.len())?;
        for adjacent in 1..n_players.saturating_sub(1) {
            for index in 0..entries.len() as u64 {
                let swapped = swap_index_bits(index, n_players, adjacent, adjacent + 1);
                if entries[index as usize] != entries[swapped as usize] {
                    return Err(Error::TensorNotSymmetric);
                }
            }
        }
        Ok(Self::Symmetric { n_players, entries })
    }

    /// One explicit tensor per player.
    pub fn explicit(per_player: Vec<Vec<f64>>) -> Result<Self> {
        let n_players = per_player.len();
        if n_players < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: n_players,
            });
        }
        for entries in &per_player {
            Self::check_size(n_players, entries.len())?;
        }
        Ok(Self::Explicit {
            n_players,
            per_player,
        })
    }

    fn check_size(n_players: usize, len: usize) -> Result<()> {
        if n_players < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: n_players,
            });
        }
        if n_players > TENSOR_LIMIT {
            return Err(Error::TensorLimitExceeded(n_players));
        }
        if len != 1usize << n_players {
            return Err(Error::TensorSizeMismatch {
                expected: 1usize << n_players,
                got: len,
            });
        }
        Ok(())
    }

    /// Materialize linear payoff functions: the entry at outcome `k` pays
    /// each player the linear payoff with `n` = number of 0-bits, outcome
    /// bit 0 meaning the first direction.
    pub fn from_linear(lp: &LinearPayoff, n_players: usize) -> Result<Self> {
        Self::check_size(n_players, 1usize << n_players.min(TENSOR_LIMIT))?;
        let entries = (0..1u64 << n_players)
            .map(|index| {
                let n_coop = n_players - index.count_ones() as usize;
                let role = if index >> (n_players - 1) & 1 == 0 {
                    Role::FirstDirection
                } else {
                    Role::SecondDirection
                };
                lp.value_unchecked(n_coop, role)
            })
            .collect();
        Ok(Self::Symmetric { n_players, entries })
    }

    pub fn n_players(&self) -> usize {
        match self {
            Self::Symmetric { n_players, .. } | Self::Explicit { n_players, .. } => *n_players,
        }
    }

    /// Payoff of `player` (0-based) at an outcome index.
    pub fn entry(&self, player: usize, outcome_index: u64) -> f64 {
        match self {
            Self::Symmetric { n_players, entries } => {
                entries[swap_index_bits(outcome_index, *n_players, 0, player) as usize]
            }
            Self::Explicit { per_player, .. } => per_player[player][outcome_index as usize],
        }
    }
}

/// Signed payoff transform: `a^mask = 2^-N * sum_k eps_mask(k) G_k`, where
/// `eps_mask(k)` flips the sign for each mask bit matching a 1-bit of `k`.
///
/// Payoffs become multilinear polynomials of the strategy variables in this
/// basis. Masks use the outcome encoding (player 1 = most significant bit)
/// and always describe the game from the first player's seat.
#[derive(Clone, Debug, PartialEq)]
pub struct ACoefficients {
    n_players: usize,
    repr: ARepr,
}

#[derive(Clone, Debug, PartialEq)]
enum ARepr {
    /// All 2^N coefficients, mask-indexed.
    Dense(Vec<f64>),
    /// Symmetric games, grouped by whether the mask contains the player's
    /// own slot and how many co-player slots it contains.
    Grouped {
        with_self: Vec<f64>,
        without_self: Vec<f64>,
    },
}

fn walsh_hadamard(data: &mut [f64]) {
    let n = data.len();
    let mut h = 1;
    while h < n {
        for base in (0..n).step_by(h * 2) {
            for i in base..base + h {
                let (x, y) = (data[i], data[i + h]);
                data[i] = x + y;
                data[i + h] = x - y;
            }
        }
        h *= 2;
    }
}

impl ACoefficients {
    /// Full transform of one player's payoff tensor, via the fast
    /// Walsh-Hadamard butterfly (O(N 2^N)).
    pub fn from_tensor(tensor: &PayoffTensor, player: usize) -> Result<Self> {
        let n_players = tensor.n_players();
        if player >= n_players {
            return Err(Error::PlayerOutOfRange { player, n_players });
        }
        let mut data: Vec<f64> = (0..1u64 << n_players)
            .map(|k| tensor.entry(player, k))
            .collect();
        walsh_hadamard(&mut data);
        let scale = 1.0 / (1u64 << n_players) as f64;
        for v in &mut data {
            *v *= scale;
        }
        Ok(Self {
            n_players,
            repr: ARepr::Dense(data),
        })
    }

    /// Closed-form coefficients of linear payoff functions. The series
    /// terminates: only four coefficient patterns are nonzero
    /// (empty mask, own slot, one co-player, own slot + one co-player).
    pub fn from_linear(lp: &LinearPayoff, n_players: usize) -> Result<Self> {
        if n_players < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: n_players,
            });
        }
        let n = n_players as f64;
        let (p1, p2) = (lp.p1(), lp.p2());
        let mut with_self = vec![0.0; n_players];
        let mut without_self = vec![0.0; n_players];
        without_self[0] = (n * (lp.c + lp.a) - p2 + 2.0 * (lp.b + lp.d)) / 4.0;
        without_self[1] = (lp.c + lp.a) / 4.0;
        with_self[0] = -((n - 1.0) * p2 + 2.0 * p1) / 4.0;
        with_self[1] = -p2 / 4.0;
        Ok(Self {
            n_players,
            repr: ARepr::Grouped {
                with_self,
                without_self,
            },
        })
    }

    /// Symmetric coefficients given directly in grouped form: `with_self[j]`
    /// is the coefficient of a mask containing the player's own slot plus
    /// `j` co-player slots, `without_self[j]` the coefficient of a mask of
    /// `j` co-player slots only.
    pub fn from_grouped(
        n_players: usize,
        with_self: Vec<f64>,
        without_self: Vec<f64>,
    ) -> Result<Self> {
        if with_self.len() != n_players || without_self.len() != n_players {
            return Err(Error::LengthMismatch {
                expected: n_players,
                got: with_self.len().min(without_self.len()),
            });
        }
        Ok(Self {
            n_players,
            repr: ARepr::Grouped {
                with_self,
                without_self,
            },
        })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    /// Coefficient for a mask (player 1 = most significant bit).
    pub fn coefficient(&self, mask: u64) -> Result<f64> {
        if self.n_players > 63 || mask >= 1u64 << self.n_players {
            return Err(Error::OutcomeOutOfRange {
                index: mask,
                n_players: self.n_players,
            });
        }
        Ok(match &self.repr {
            ARepr::Dense(data) => data[mask as usize],
            ARepr::Grouped {
                with_self,
                without_self,
            } => {
                let own = mask >> (self.n_players - 1) & 1 == 1;
                let others = (mask & !(1u64 << (self.n_players - 1))).count_ones() as usize;
                if own {
                    with_self[others]
                } else {
                    without_self[others]
                }
            }
        })
    }
}

/// Per-player cooperation probabilities (probability of choosing the first
/// measurement direction).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile(Vec<f64>);

impl StrategyProfile {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        for &xi in &x {
            if !(0.0..=1.0).contains(&xi) {
                return Err(Error::ProbabilityNotUnit(xi));
            }
        }
        Ok(Self(x))
    }

    pub fn all_cooperate(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn all_defect(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// Pure profile with the first `cooperators` players cooperating.
    pub fn symmetric_pure(n: usize, cooperators: usize) -> Self {
        let mut x = vec![0.0; n];
        for xi in x.iter_mut().take(cooperators) {
            *xi = 1.0;
        }
        Self(x)
    }

    pub fn with_player(&self, player: usize, xi: f64) -> Result<Self> {
        let mut x = self.0.clone();
        x[player] = xi;
        Self::new(x)
    }

    pub fn x(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A player's two available measurement directions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionPair {
    pub kappa1: f64,
    pub kappa2: f64,
}

/// Angle choices under which the quantum game at zero entanglement
/// reproduces the classical game: `K(kappa1) = +1`, `K(kappa2) = -1`,
/// directions pi out of phase, transverse coefficients (and hence `Omega`)
/// vanishing.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingAngles {
    rotors: Vec<RotorAngles>,
    directions: Vec<DirectionPair>,
    valid: bool,
}

const EMBEDDING_K_TOL: f64 = 1e-12;

impl EmbeddingAngles {
    pub fn new(rotors: Vec<RotorAngles>, directions: Vec<DirectionPair>) -> Result<Self> {
        if rotors.len() < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: rotors.len(),
            });
        }
        if directions.len() != rotors.len() {
            return Err(Error::LengthMismatch {
                expected: rotors.len(),
                got: directions.len(),
            });
        }
        let valid = Self::compute_validity(&rotors, &directions);
        Ok(Self {
            rotors,
            directions,
            valid,
        })
    }

    fn compute_validity(rotors: &[RotorAngles], directions: &[DirectionPair]) -> bool {
        let mut omega_bound = 1.0_f64;
        for (rotor, pair) in rotors.iter().zip(directions) {
            if (k_coeff(rotor, pair.kappa1) - 1.0).abs() > EMBEDDING_K_TOL {
                return false;
            }
            if (k_coeff(rotor, pair.kappa2) + 1.0).abs() > EMBEDDING_K_TOL {
                return false;
            }
            let gap = (pair.kappa2 - pair.kappa1).rem_euclid(2.0 * PI);
            if (gap - PI).abs() > EMBEDDING_K_TOL {
                return false;
            }
            let mut worst = 0.0_f64;
            for kappa in [pair.kappa1, pair.kappa2] {
                let (x1, x2) = x_coeffs(rotor, kappa);
                worst = worst.max(x1.hypot(x2));
            }
            omega_bound *= worst;
        }
        // |Omega| <= prod_i |X1_i + i X2_i| for every direction choice
        omega_bound <= EMBEDDING_K_TOL
    }

    pub fn n_players(&self) -> usize {
        self.rotors.len()
    }

    pub fn rotors(&self) -> &[RotorAngles] {
        &self.rotors
    }

    pub fn directions(&self) -> &[DirectionPair] {
        &self.directions
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }
}

/// The first embedding class: all rotor angles zero, `kappa1 = 0`,
/// `kappa2 = pi` for every player. (The free angles `alpha2`, `alpha3` are
/// set to 0; varying them changes neither equilibria nor payoffs.)
pub fn canonical_embedding(n_players: usize) -> Result<EmbeddingAngles> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    EmbeddingAngles::new(
        vec![RotorAngles::IDENTITY; n_players],
        vec![
            DirectionPair {
                kappa1: 0.0,
                kappa2: PI,
            };
            n_players
        ],
    )
}

/// State, rotors and per-player direction pairs: everything but the actual
/// direction choices.
#[derive(Clone, Debug, PartialEq)]
pub struct GameFrame {
    pub family: StateFamily,
    pub gamma: f64,
    pub rotors: Vec<RotorAngles>,
    pub directions: Vec<DirectionPair>,
}

impl GameFrame {
    pub fn from_embedding(embedding: &EmbeddingAngles, gamma: f64) -> Self {
        Self {
            family: StateFamily::Ghz,
            gamma,
            rotors: embedding.rotors().to_vec(),
            directions: embedding.directions().to_vec(),
        }
    }

    pub fn n_players(&self) -> usize {
        self.rotors.len()
    }

    /// Measurement frame for one pure direction choice; choice bit 0
    /// (player 1 = most significant bit) selects `kappa1`.
    pub fn frame_for_choice(&self, choice: u64) -> Result<MeasurementFrame> {
        let n = self.n_players();
        let kappas = (0..n)
            .map(|i| {
                if choice >> (n - 1 - i) & 1 == 0 {
                    self.directions[i].kappa1
                } else {
                    self.directions[i].kappa2
                }
            })
            .collect();
        MeasurementFrame::new(self.family, self.gamma, self.rotors.clone(), kappas)
    }
}

/// Game specification: player count plus either linear payoff parameters or
/// an explicit symmetric payoff tensor.
///
/// Serializes as `{"n_players": N, "payoff": {"linear": {"a":..}}}` or
/// `{"n_players": N, "payoff": {"tensor": [..]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GameSpecWire", into = "GameSpecWire")]
pub struct GameSpec {
    n_players: usize,
    payoff: PayoffDefinition,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PayoffDefinition {
    Linear(LinearPayoff),
    Tensor(PayoffTensor),
}

#[derive(Serialize, Deserialize, Clone)]
struct GameSpecWire {
    n_players: usize,
    payoff: PayoffWire,
}

#[derive(Serialize, Deserialize, Clone)]
#[serde(rename_all = "lowercase")]
enum PayoffWire {
    Linear(LinearPayoff),
    Tensor(Vec<f64>),
}

impl TryFrom<GameSpecWire> for GameSpec {
    type Error = Error;

    fn try_from(wire: GameSpecWire) -> Result<Self> {
        match wire.payoff {
            PayoffWire::Linear(lp) => GameSpec::linear(wire.n_players, lp),
            PayoffWire::Tensor(entries) => GameSpec::tensor(
                wire.n_players,
                PayoffTensor::symmetric(wire.n_players, entries)?,
            ),
        }
    }
}

impl From<GameSpec> for GameSpecWire {
    fn from(spec: GameSpec) -> Self {
        let payoff = match spec.payoff {
            PayoffDefinition::Linear(lp) => PayoffWire::Linear(lp),
            PayoffDefinition::Tensor(PayoffTensor::Symmetric { entries, .. }) => {
                PayoffWire::Tensor(entries)
            }
            PayoffDefinition::Tensor(PayoffTensor::Explicit { per_player, .. }) => {
                // explicit tensors have no wire form; fall back to player 1's view
                PayoffWire::Tensor(per_player[0].clone())
            }
        };
        GameSpecWire {
            n_players: spec.n_players,
            payoff,
        }
    }
}

impl GameSpec {
    pub fn linear(n_players: usize, lp: LinearPayoff) -> Result<Self> {
        if n_players < 2 {
            return Err(Error::TooFewPlayers {
                min: 2,
                got: n_players,
            });
        }
        Ok(Self {
            n_players,
            payoff: PayoffDefinition::Linear(lp),
        })
    }

    pub fn tensor(n_players: usize, tensor: PayoffTensor) -> Result<Self> {
        if tensor.n_players() != n_players {
            return Err(Error::LengthMismatch {
                expected: n_players,
                got: tensor.n_players(),
            });
        }
        Ok(Self {
            n_players,
            payoff: PayoffDefinition::Tensor(tensor),
        })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn payoff(&self) -> &PayoffDefinition {
        &self.payoff
    }

    pub fn linear_payoff(&self) -> Option<&LinearPayoff> {
        match &self.payoff {
            PayoffDefinition::Linear(lp) => Some(lp),
            PayoffDefinition::Tensor(_) => None,
        }
    }
}

/// Expected payoff `sum_k G^p_k P_k`. Linear payoffs are folded per outcome
/// without materializing a tensor.
pub fn expected_payoff(dist: &OutcomeDistribution, game: &GameSpec, player: usize) -> Result<f64> {
    let n = dist.n_players();
    if game.n_players() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: game.n_players(),
        });
    }
    if player >= n {
        return Err(Error::PlayerOutOfRange {
            player,
            n_players: n,
        });
    }
    match game.payoff() {
        PayoffDefinition::Linear(lp) => Ok(dist
            .iter()
            .map(|(outcome, p)| {
                let role = if outcome.bit(player) == 0 {
                    Role::FirstDirection
                } else {
                    Role::SecondDirection
                };
                p * lp.value_unchecked(outcome.count_zeros(), role)
            })
            .sum()),
        PayoffDefinition::Tensor(tensor) => {
            if tensor.n_players() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: tensor.n_players(),
                });
            }
            Ok(dist
                .iter()
                .map(|(outcome, p)| p * tensor.entry(player, outcome.index()))
                .sum())
        }
    }
}

/// Mixed-strategy expected payoff: enumerate the 2^N pure direction
/// choices, weight each by `prod_i (x^i or 1 - x^i)` and average the
/// closed-form expected payoffs. Zero-weight choices are skipped, so pure
/// profiles cost a single evaluation.
pub fn mixed_strategy_payoff(
    game: &GameSpec,
    frame: &GameFrame,
    profile: &StrategyProfile,
    player: usize,
) -> Result<f64> {
    let n = frame.n_players();
    if n > 16 {
        return Err(Error::MixedEnumerationLimit(n));
    }
    if game.n_players() != n || profile.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: game.n_players().min(profile.len()),
        });
    }
    if player >= n {
        return Err(Error::PlayerOutOfRange {
            player,
            n_players: n,
        });
    }
    let mut total = 0.0;
    for choice in 0..1u64 << n {
        let mut weight = 1.0;
        for (i, &xi) in profile.x().iter().enumerate() {
            weight *= if choice >> (n - 1 - i) & 1 == 0 {
                xi
            } else {
                1.0 - xi
            };
        }
        if weight == 0.0 {
            continue;
        }
        let mf = frame.frame_for_choice(choice)?;
        let dist = full_distribution(&mf)?;
        total += weight * expected_payoff(&dist, game, player)?;
    }
    Ok(total)
}

/// Payoff of the classically-embedded game as a multilinear polynomial in
/// `t^i = 1 - 2x^i`: masks of even size carry weight 1, masks of odd size
/// carry weight `-cos(gamma)`.
///
/// `acoeffs` must be the first player's coefficients of a symmetric game;
/// `player` selects whose payoff is evaluated (slots are swapped
/// accordingly).
pub fn embedded_payoff(
    acoeffs: &ACoefficients,
    gamma: f64,
    profile: &StrategyProfile,
    player: usize,
) -> Result<f64> {
    let n = acoeffs.n_players();
    if profile.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: profile.len(),
        });
    }
    if player >= n {
        return Err(Error::PlayerOutOfRange {
            player,
            n_players: n,
        });
    }
    let cg = gamma.cos();
    let mut t: Vec<f64> = profile.x().iter().map(|&x| 1.0 - 2.0 * x).collect();
    t.swap(0, player);
    match &acoeffs.repr {
        ARepr::Grouped {
            with_self,
            without_self,
        } => {
            let t_self = t[0];
            let esums = sym_sums(&t[1..]);
            let mut total = 0.0;
            for (j, &e) in esums.iter().enumerate() {
                let w_plain = if j % 2 == 0 { 1.0 } else { -cg };
                let w_self = if (j + 1) % 2 == 0 { 1.0 } else { -cg };
                total += e * (without_self[j] * w_plain + with_self[j] * t_self * w_self);
            }
            Ok(total)
        }
        ARepr::Dense(data) => {
            let mut total = 0.0;
            for (mask, &a) in data.iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                let weight = if mask.count_ones() % 2 == 0 { 1.0 } else { -cg };
                let mut prod = 1.0;
                for (i, &ti) in t.iter().enumerate() {
                    if mask >> (n - 1 - i) & 1 == 1 {
                        prod *= ti;
                    }
                }
                total += a * weight * prod;
            }
            Ok(total)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn linear_values_match_pd_matrix() {
        let lp = LinearPayoff::standard_pd();
        assert_eq!(lp.value(2, Role::FirstDirection).unwrap(), 3.0);
        assert_eq!(lp.value(1, Role::SecondDirection).unwrap(), 5.0);
        assert_eq!(lp.value(0, Role::SecondDirection).unwrap(), 1.0);
        assert!(lp.value(0, Role::FirstDirection).is_err());
    }

    #[test]
    fn classification() {
        assert_eq!(
            LinearPayoff::standard_pd().classify(2),
            GameClass::PrisonersDilemma
        );
        assert_eq!(LinearPayoff::chicken().classify(4), GameClass::Chicken);
        assert_eq!(LinearPayoff::minority(5).classify(5), GameClass::Minority);
        assert_eq!(
            LinearPayoff::new(0.0, 0.0, 0.0, 0.0).classify(3),
            GameClass::Unclassified
        );
        // minority parameters hard-wire the player count
        assert_eq!(
            LinearPayoff::minority(5).classify(4),
            GameClass::Unclassified
        );
    }

    #[test]
    fn tensor_from_linear_matches_pd_matrix() {
        let t = PayoffTensor::from_linear(&LinearPayoff::standard_pd(), 2).unwrap();
        assert_eq!(t.entry(0, 0b00), 3.0);
        assert_eq!(t.entry(0, 0b01), 0.0);
        assert_eq!(t.entry(0, 0b10), 5.0);
        assert_eq!(t.entry(0, 0b11), 1.0);
        // player 2 sees the transpose
        assert_eq!(t.entry(1, 0b01), 5.0);
        assert_eq!(t.entry(1, 0b10), 0.0);
    }

    #[test]
    fn tensor_three_player_example() {
        let t = PayoffTensor::from_linear(&LinearPayoff::standard_pd(), 3).unwrap();
        // outcome 100: players 2 and 3 cooperate, player 1 defects
        assert_eq!(t.entry(0, 0b100), 9.0);
        assert_eq!(t.entry(1, 0b100), 3.0);
        assert_eq!(t.entry(2, 0b100), 3.0);
        // outcome 11: everyone defects, everyone gets d
        let t2 = PayoffTensor::from_linear(&LinearPayoff::new(0.5, -2.0, 7.0, 1.5), 2).unwrap();
        assert_eq!(t2.entry(0, 0b11), 1.5);
        assert_eq!(t2.entry(1, 0b11), 1.5);
    }

    #[test]
    fn symmetric_tensor_validation() {
        // entries depend on (own bit, count of co-player ones) -> symmetric
        let good: Vec<f64> = (0..8u64)
            .map(|k| (k.count_ones() * 10 + (k >> 2 & 1) as u32) as f64)
            .collect();
        assert!(PayoffTensor::symmetric(3, good).is_ok());
        let mut bad: Vec<f64> = vec![0.0; 8];
        bad[0b001] = 1.0; // differs from 0b010
        assert!(matches!(
            PayoffTensor::symmetric(3, bad),
            Err(Error::TensorNotSymmetric)
        ));
        assert!(PayoffTensor::symmetric(3, vec![0.0; 4]).is_err());
    }

    #[test]
    fn a_transform_pd_values() {
        let t = PayoffTensor::from_linear(&LinearPayoff::standard_pd(), 2).unwrap();
        let a = ACoefficients::from_tensor(&t, 0).unwrap();
        assert_close(a.coefficient(0b00).unwrap(), 9.0 / 4.0, 1e-15);
        assert_close(a.coefficient(0b10).unwrap(), -3.0 / 4.0, 1e-15);
        assert_close(a.coefficient(0b11).unwrap(), -1.0 / 4.0, 1e-15);
        assert_close(a.coefficient(0b01).unwrap(), 7.0 / 4.0, 1e-15);
    }

    #[test]
    fn a_transform_zero_tensor() {
        let t = PayoffTensor::symmetric(3, vec![0.0; 8]).unwrap();
        let a = ACoefficients::from_tensor(&t, 0).unwrap();
        for mask in 0..8 {
            assert_eq!(a.coefficient(mask).unwrap(), 0.0);
        }
    }

    #[test]
    fn linear_coefficients_terminate_and_match_transform() {
        for n in 2..=8usize {
            for lp in [
                LinearPayoff::standard_pd(),
                LinearPayoff::new(1.3, -0.4, 2.2, 1.9),
            ] {
                let closed = ACoefficients::from_linear(&lp, n).unwrap();
                let tensor = PayoffTensor::from_linear(&lp, n).unwrap();
                let dense = ACoefficients::from_tensor(&tensor, 0).unwrap();
                for mask in 0..1u64 << n {
                    let got = closed.coefficient(mask).unwrap();
                    let want = dense.coefficient(mask).unwrap();
                    assert_close(got, want, 1e-12);
                    // masks touching three or more slots vanish
                    if mask.count_ones() >= 3 {
                        assert_eq!(got, 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn minority_game_kills_the_self_coefficient() {
        for n in 2..=6usize {
            let a = ACoefficients::from_linear(&LinearPayoff::minority(n), n).unwrap();
            let self_mask = 1u64 << (n - 1);
            assert_eq!(a.coefficient(self_mask).unwrap(), 0.0);
        }
    }

    #[test]
    fn canonical_embedding_is_valid() {
        let emb = canonical_embedding(3).unwrap();
        assert!(emb.is_valid());
        for (rotor, pair) in emb.rotors().iter().zip(emb.directions()) {
            assert_close(k_coeff(rotor, pair.kappa1), 1.0, 1e-15);
            assert_close(k_coeff(rotor, pair.kappa2), -1.0, 1e-15);
        }
    }

    #[test]
    fn second_class_embedding_is_valid() {
        // alpha3 = 0, kappa1 = alpha1, kappa2 = alpha1 - pi
        let alpha1 = PI / 3.0;
        let rotors = vec![RotorAngles::new(alpha1, 0.7, 0.0); 2];
        let directions = vec![
            DirectionPair {
                kappa1: alpha1,
                kappa2: alpha1 - PI,
            };
            2
        ];
        let emb = EmbeddingAngles::new(rotors, directions).unwrap();
        assert!(emb.is_valid());
    }

    #[test]
    fn skew_directions_are_rejected() {
        let emb = EmbeddingAngles::new(
            vec![RotorAngles::IDENTITY; 2],
            vec![
                DirectionPair {
                    kappa1: 0.0,
                    kappa2: 2.0,
                };
                2
            ],
        )
        .unwrap();
        assert!(!emb.is_valid());
    }

    #[test]
    fn embedded_payoff_recovers_classical_defection() {
        let lp = LinearPayoff::standard_pd();
        let a = ACoefficients::from_linear(&lp, 2).unwrap();
        let all_defect = StrategyProfile::all_defect(2);
        let payoff = embedded_payoff(&a, 0.0, &all_defect, 0).unwrap();
        assert_close(payoff, 1.0, 1e-14);
    }

    #[test]
    fn embedded_payoff_affine_in_each_player() {
        let a = ACoefficients::from_linear(&LinearPayoff::standard_pd(), 4).unwrap();
        let base = StrategyProfile::new(vec![0.3, 0.8, 0.1, 0.6]).unwrap();
        for player in 0..4 {
            for observer in 0..4 {
                let f = |xi: f64| {
                    embedded_payoff(&a, 0.7, &base.with_player(player, xi).unwrap(), observer)
                        .unwrap()
                };
                let (f0, fh, f1) = (f(0.0), f(0.5), f(1.0));
                assert_close(fh, (f0 + f1) / 2.0, 1e-12);
            }
        }
    }

    #[test]
    fn mixed_strategy_uniform_classical_pd() {
        let game = GameSpec::linear(2, LinearPayoff::standard_pd()).unwrap();
        let frame = GameFrame::from_embedding(&canonical_embedding(2).unwrap(), 0.0);
        let profile = StrategyProfile::new(vec![0.5, 0.5]).unwrap();
        let payoff = mixed_strategy_payoff(&game, &frame, &profile, 0).unwrap();
        assert_close(payoff, 9.0 / 4.0, 1e-12);
    }

    #[test]
    fn mixed_strategy_degenerate_mixture_equals_first_directions() {
        let game = GameSpec::linear(3, LinearPayoff::standard_pd()).unwrap();
        let frame = GameFrame::from_embedding(&canonical_embedding(3).unwrap(), 0.9);
        let all_coop = StrategyProfile::all_cooperate(3);
        let via_mixture = mixed_strategy_payoff(&game, &frame, &all_coop, 0).unwrap();
        let dist = full_distribution(&frame.frame_for_choice(0).unwrap()).unwrap();
        let direct = expected_payoff(&dist, &game, 0).unwrap();
        assert_close(via_mixture, direct, 1e-14);
    }

    #[test]
    fn expected_payoff_matches_linear_and_tensor_paths() {
        let lp = LinearPayoff::standard_pd();
        let game_linear = GameSpec::linear(3, lp).unwrap();
        let game_tensor = GameSpec::tensor(3, PayoffTensor::from_linear(&lp, 3).unwrap()).unwrap();
        let frame = MeasurementFrame::ghz(
            0.8,
            vec![RotorAngles::new(0.2, 0.5, 1.0); 3],
            vec![0.3, 1.4, 2.2],
        )
        .unwrap();
        let dist = full_distribution(&frame).unwrap();
        for player in 0..3 {
            assert_close(
                expected_payoff(&dist, &game_linear, player).unwrap(),
                expected_payoff(&dist, &game_tensor, player).unwrap(),
                1e-12,
            );
        }
    }

    #[test]
    fn game_spec_json_round_trip() {
        let spec = GameSpec::linear(4, LinearPayoff::standard_pd()).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        let back: GameSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);

        let tensor = GameSpec::tensor(
            2,
            PayoffTensor::symmetric(2, vec![3.0, 0.0, 5.0, 1.0]).unwrap(),
        )
        .unwrap();
        let json = serde_json::to_string(&tensor).unwrap();
        let back: GameSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(tensor, back);
        // malformed tensors fail to parse
        assert!(serde_json::from_str::<GameSpec>(
            r#"{"n_players":2,"payoff":{"tensor":[1.0,2.0]}}"#
        )
        .is_err());
    }

    #[test]
    fn strategy_profile_validation() {
        assert!(StrategyProfile::new(vec![0.0, 1.0, 0.5]).is_ok());
        assert!(matches!(
            StrategyProfile::new(vec![0.2, 1.2]),
            Err(Error::ProbabilityNotUnit(_))
        ));
    }
}
