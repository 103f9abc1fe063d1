//! Nash equilibria, phase boundaries and equilibrium payoffs for the
//! classically-embedded games with linear payoffs.
//!
//! For linear payoffs the best-response structure collapses to a single
//! bracket per player,
//!
//! ```text
//! B = p2 (N - 1 - 2 n_others) - cos(gamma) ((N - 1) p2 + 2 p1),
//! ```
//!
//! affine in `cos(gamma)`: cooperation is a best response iff `B >= 0`.
//! Symmetric pure equilibria, the prisoner-dilemma zone structure in
//! `cos(gamma)`, the even/odd payoff split at maximal entanglement and the
//! boundary parabola all follow from it. Payoffs are kept as affine
//! functions of `cos(gamma)` so that analytically-vanishing terms vanish
//! exactly (the minority game's gamma-independence is exact, not
//! approximate).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ACoefficients, GameClass, LinearPayoff, PayoffTensor, Role, StrategyProfile};

/// A payoff that is affine in `cos(gamma)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffinePayoff {
    pub constant: f64,
    pub cos_coeff: f64,
}

impl AffinePayoff {
    pub fn eval_cos(&self, cos_gamma: f64) -> f64 {
        self.constant + self.cos_coeff * cos_gamma
    }

    pub fn eval(&self, gamma: f64) -> f64 {
        self.eval_cos(gamma.cos())
    }
}

/// One symmetric pure Nash equilibrium.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NePoint {
    /// Cooperator count of the equilibrium profile.
    pub cooperators: usize,
    pub gamma: f64,
    /// Payoff of each cooperating player (absent at `cooperators = 0`).
    pub payoff_cooperate: Option<f64>,
    /// Payoff of each defecting player (absent at `cooperators = N`).
    pub payoff_defect: Option<f64>,
    /// Whether `cos(gamma)` sits exactly on a zone boundary.
    pub on_boundary: bool,
}

/// Equilibrium payoffs at a symmetric pure profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NePayoffs {
    pub cooperate: Option<f64>,
    pub defect: Option<f64>,
}

/// Best-response bracket for one player: positive means cooperating is
/// strictly better, negative means defecting is, zero means indifferent.
/// `n_others` counts cooperators among the other `N - 1` players.
pub fn ne_bracket(lp: &LinearPayoff, n_others: usize, gamma: f64, n_players: usize) -> Result<f64> {
    ne_bracket_cos(lp, n_others, gamma.cos(), n_players)
}

/// [`ne_bracket`] parameterized directly by `cos(gamma)`, in which the
/// bracket is affine; exact boundary ties are only expressible here.
pub fn ne_bracket_cos(
    lp: &LinearPayoff,
    n_others: usize,
    cos_gamma: f64,
    n_players: usize,
) -> Result<f64> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if n_others > n_players - 1 {
        return Err(Error::CooperatorCountOutOfRange {
            count: n_others,
            n_players,
        });
    }
    let n = n_players as f64;
    let gamma_coeff = (n - 1.0) * lp.p2() + 2.0 * lp.p1();
    Ok(lp.p2() * (n - 1.0 - 2.0 * n_others as f64) - cos_gamma * gamma_coeff)
}

/// Payoffs at the symmetric pure profile with `cooperators` cooperating,
/// as affine functions of `cos(gamma)`: `(cooperator, defector)` with each
/// side absent where no player holds that role.
pub fn payoff_lines(
    lp: &LinearPayoff,
    n_players: usize,
    cooperators: usize,
) -> Result<(Option<AffinePayoff>, Option<AffinePayoff>)> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if cooperators > n_players {
        return Err(Error::CooperatorCountOutOfRange {
            count: cooperators,
            n_players,
        });
    }
    let n = n_players as f64;
    let m = cooperators as f64;
    let (p1, p2) = (lp.p1(), lp.p2());
    let ca = lp.c + lp.a;
    let base = 2.0 * (lp.b + lp.d) - p2 + ca * n;
    let gamma_coeff = (n - 1.0) * p2 + 2.0 * p1;
    let coop = (cooperators >= 1).then(|| {
        let others = n + 1.0 - 2.0 * m; // sum of (1 - 2x) over the other players
        AffinePayoff {
            constant: 0.25 * (base + p2 * others),
            cos_coeff: -0.25 * (ca * others + gamma_coeff),
        }
    });
    let defect = (cooperators < n_players).then(|| {
        let others = n - 1.0 - 2.0 * m;
        AffinePayoff {
            constant: 0.25 * (base - p2 * others),
            cos_coeff: 0.25 * (gamma_coeff - ca * others),
        }
    });
    Ok((coop, defect))
}

/// Cooperator and defector payoffs at a symmetric pure profile.
pub fn ne_payoffs(
    lp: &LinearPayoff,
    n_players: usize,
    cooperators: usize,
    gamma: f64,
) -> Result<NePayoffs> {
    ne_payoffs_cos(lp, n_players, cooperators, gamma.cos())
}

/// [`ne_payoffs`] parameterized directly by `cos(gamma)`.
pub fn ne_payoffs_cos(
    lp: &LinearPayoff,
    n_players: usize,
    cooperators: usize,
    cos_gamma: f64,
) -> Result<NePayoffs> {
    let (coop, defect) = payoff_lines(lp, n_players, cooperators)?;
    Ok(NePayoffs {
        cooperate: coop.map(|line| line.eval_cos(cos_gamma)),
        defect: defect.map(|line| line.eval_cos(cos_gamma)),
    })
}

/// All symmetric pure Nash equilibria at the given entanglement: cooperator
/// counts where every cooperator's bracket is >= 0 and every defector's is
/// <= 0. Weak inequalities, so an exact zone boundary reports both adjacent
/// counts.
pub fn find_symmetric_pure_ne(
    lp: &LinearPayoff,
    n_players: usize,
    gamma: f64,
) -> Result<Vec<NePoint>> {
    find_symmetric_pure_ne_cos(lp, n_players, gamma.cos())
}

/// [`find_symmetric_pure_ne`] parameterized directly by `cos(gamma)`.
pub fn find_symmetric_pure_ne_cos(
    lp: &LinearPayoff,
    n_players: usize,
    cos_gamma: f64,
) -> Result<Vec<NePoint>> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    let gamma = cos_gamma.clamp(-1.0, 1.0).acos();
    let mut points = Vec::new();
    for cooperators in 0..=n_players {
        let coop_bracket = if cooperators >= 1 {
            Some(ne_bracket_cos(lp, cooperators - 1, cos_gamma, n_players)?)
        } else {
            None
        };
        let defect_bracket = if cooperators < n_players {
            Some(ne_bracket_cos(lp, cooperators, cos_gamma, n_players)?)
        } else {
            None
        };
        let coop_ok = coop_bracket.is_none_or(|b| b >= 0.0);
        let defect_ok = defect_bracket.is_none_or(|b| b <= 0.0);
        if coop_ok && defect_ok {
            let payoffs = ne_payoffs_cos(lp, n_players, cooperators, cos_gamma)?;
            let on_boundary = coop_bracket == Some(0.0) || defect_bracket == Some(0.0);
            points.push(NePoint {
                cooperators,
                gamma,
                payoff_cooperate: payoffs.cooperate,
                payoff_defect: payoffs.defect,
                on_boundary,
            });
        }
    }
    Ok(points)
}

/// One Nash-equilibrium zone of the prisoner-dilemma phase diagram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseZone {
    pub cooperators: usize,
    pub cos_gamma_lo: f64,
    pub cos_gamma_hi: f64,
    pub payoff_cooperate: Option<AffinePayoff>,
    pub payoff_defect: Option<AffinePayoff>,
}

/// Prisoner-dilemma phase diagram: cooperator counts per `cos(gamma)`
/// interval, `n = 0` holding from `lambda_1` up to 1 (no entanglement) and
/// `n = floor(N/2)` down at maximal entanglement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub payoff: LinearPayoff,
    pub n_players: usize,
    pub zones: Vec<PhaseZone>,
}

/// Zone boundaries `lambda_n = (N + 1 - 2n) / (N - 1 + delta)` with
/// `delta = 2 p1 / p2`. Zones are listed with ascending cooperator count,
/// i.e. from `cos(gamma) = 1` downwards; interior zones are open intervals,
/// the outermost ends are closed at 1 and 0.
pub fn pd_phase_boundaries(lp: &LinearPayoff, n_players: usize) -> Result<PhaseDiagram> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if lp.classify(n_players) != GameClass::PrisonersDilemma && !lp.is_prisoners_dilemma() {
        return Err(Error::NotPrisonersDilemma);
    }
    if lp.p2() == 0.0 {
        return Err(Error::DegenerateP2);
    }
    let n = n_players as f64;
    let delta = 2.0 * lp.p1() / lp.p2();
    let denom = n - 1.0 + delta;
    let mut zones = Vec::new();
    for cooperators in 0..=n_players / 2 {
        let m = cooperators as f64;
        let lo = ((n - 1.0 - 2.0 * m) / denom).max(0.0);
        let hi = if cooperators == 0 {
            1.0
        } else {
            ((n + 1.0 - 2.0 * m) / denom).min(1.0)
        };
        let (payoff_cooperate, payoff_defect) = payoff_lines(lp, n_players, cooperators)?;
        zones.push(PhaseZone {
            cooperators,
            cos_gamma_lo: lo,
            cos_gamma_hi: hi,
            payoff_cooperate,
            payoff_defect,
        });
    }
    Ok(PhaseDiagram {
        payoff: *lp,
        n_players,
        zones,
    })
}

/// Cooperator and defector payoffs at the equilibrium nearest maximal
/// entanglement: `(2(b+d) + (c+a)N +/- (c-a)) / 4`, the `(c-a)` term only
/// present for odd N. Even player counts split the payoff evenly.
pub fn max_entanglement_payoffs(lp: &LinearPayoff, n_players: usize) -> Result<(f64, f64)> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    let n = n_players as f64;
    let base = 2.0 * (lp.b + lp.d) + (lp.c + lp.a) * n;
    let odd = if n_players % 2 == 1 { lp.c - lp.a } else { 0.0 };
    Ok((0.25 * (base + odd), 0.25 * (base - odd)))
}

/// Defector payoff along the left zone edges, a downward quadratic in
/// `cos(gamma)`:
///
/// ```text
/// Pi^d = (2(b+d) - p2 + (c+a)N)/4 - (c+a)(N - 1 + delta) cos^2(gamma) / 4
/// ```
///
/// For the standard prisoner dilemma `(3, -3, 4, 1)` this is the parabola
/// `-3 + (7/4)(N+1) sin^2(gamma)`.
pub fn boundary_payoff_curve(lp: &LinearPayoff, n_players: usize, gamma: f64) -> Result<f64> {
    boundary_payoff_curve_cos(lp, n_players, gamma.cos())
}

/// [`boundary_payoff_curve`] parameterized directly by `cos(gamma)`.
pub fn boundary_payoff_curve_cos(
    lp: &LinearPayoff,
    n_players: usize,
    cos_gamma: f64,
) -> Result<f64> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if !lp.is_prisoners_dilemma() {
        return Err(Error::NotPrisonersDilemma);
    }
    if lp.p2() == 0.0 {
        return Err(Error::DegenerateP2);
    }
    let n = n_players as f64;
    let delta = 2.0 * lp.p1() / lp.p2();
    Ok(0.25 * (2.0 * (lp.b + lp.d) - lp.p2() + (lp.c + lp.a) * n)
        - 0.25 * (lp.c + lp.a) * (n - 1.0 + delta) * cos_gamma * cos_gamma)
}

/// Optimal play on the W-type state for a prisoner dilemma: all players
/// defect, each earning `c + d - (c + d - (a + b))/N`, which climbs towards
/// `c + d` from below as N grows.
pub fn w_pd_optimum(lp: &LinearPayoff, n_players: usize) -> Result<(StrategyProfile, f64)> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if !lp.is_prisoners_dilemma() {
        return Err(Error::NotPrisonersDilemma);
    }
    let n = n_players as f64;
    let payoff = lp.c + lp.d - (lp.c + lp.d - (lp.a + lp.b)) / n;
    Ok((StrategyProfile::all_defect(n_players), payoff))
}

/// The piecewise linear payoff variant with a special case at one
/// cooperator: cooperators earn 0 if alone, otherwise `3 + 4(m - 2)`;
/// defectors earn `5 + 4(m - 1)`.
pub fn piecewise_payoff(n_cooperators: usize, role: Role) -> Result<f64> {
    let m = n_cooperators as f64;
    match role {
        Role::FirstDirection => {
            if n_cooperators == 0 {
                Err(Error::RoleCountInconsistent)
            } else if n_cooperators == 1 {
                Ok(0.0)
            } else {
                Ok(3.0 + 4.0 * (m - 2.0))
            }
        }
        Role::SecondDirection => Ok(5.0 + 4.0 * (m - 1.0)),
    }
}

/// Materialized tensor of the piecewise payoff variant.
pub fn piecewise_tensor(n_players: usize) -> Result<PayoffTensor> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    if n_players > crate::game::TENSOR_LIMIT {
        return Err(Error::TensorLimitExceeded(n_players));
    }
    let entries = (0..1u64 << n_players)
        .map(|index| {
            let n_coop = n_players - index.count_ones() as usize;
            let role = if index >> (n_players - 1) & 1 == 0 {
                Role::FirstDirection
            } else {
                Role::SecondDirection
            };
            // role consistency holds by construction
            piecewise_payoff(n_coop, role).expect("outcome bit 0 implies a cooperator")
        })
        .collect();
    PayoffTensor::symmetric(n_players, entries)
}

/// Closed-form signed-transform coefficients of the piecewise payoff: a
/// non-terminating series whose tail alternates with magnitude `2^-N`.
///
/// Grouped by (own slot present, co-player slots `j`):
///
/// ```text
/// without self: j = 0: 2(N-1) + 2^-N;  j = 1: 2 - 2^-N;  j >= 2: (-1)^j 2^-N
/// with self:    j = 0: -1 + 2^-N;                        j >= 1: (-1)^j 2^-N
/// ```
pub fn piecewise_coefficients(n_players: usize) -> Result<ACoefficients> {
    if n_players < 2 {
        return Err(Error::TooFewPlayers {
            min: 2,
            got: n_players,
        });
    }
    let q = 0.5_f64.powi(n_players as i32);
    let tail = |j: usize| if j.is_multiple_of(2) { q } else { -q };
    let mut with_self = vec![0.0; n_players];
    let mut without_self = vec![0.0; n_players];
    without_self[0] = 2.0 * (n_players as f64 - 1.0) + q;
    without_self[1] = 2.0 - q;
    for (j, slot) in without_self.iter_mut().enumerate().skip(2) {
        *slot = tail(j);
    }
    with_self[0] = -1.0 + q;
    for (j, slot) in with_self.iter_mut().enumerate().skip(1) {
        *slot = tail(j);
    }
    ACoefficients::from_grouped(n_players, with_self, without_self)
}
