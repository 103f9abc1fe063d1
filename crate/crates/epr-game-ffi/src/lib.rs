//! C ABI for the EPR quantum-game library.
//!
//! The surface mirrors the crate's main entry points behind an opaque
//! frame handle plus flat scalar functions for the equilibrium analysis,
//! so other languages can bind without understanding Rust types. All
//! functions return an [`EprStatus`]; results come back through out
//! pointers. The header `include/epr_game.h` is generated at build time.
//!
//! Conventions match the core crate: angles in radians, player 1 is the
//! most significant outcome bit, outcome bit 0 means the first measurement
//! direction ("cooperate").

use std::panic::{catch_unwind, AssertUnwindSafe};

use epr_game::{
    boundary_payoff_curve_cos, expected_payoff, find_symmetric_pure_ne_cos, full_distribution,
    ne_payoffs_cos, oracle, outcome_probability, w_pd_optimum, Error, GameSpec, LinearPayoff,
    MeasurementFrame, Outcome, RotorAngles, StateFamily,
};

/// Status codes returned by every FFI entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EprStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A closed-form probability left [0, 1] beyond tolerance; this signals
    /// a sign-convention regression, not bad input.
    ProbabilityRange = 3,
    /// A dense-enumeration or player-count limit was exceeded.
    LimitExceeded = 4,
    /// The payoff parameters do not describe the required game class.
    WrongGameClass = 5,
    InternalPanic = 6,
}

impl From<&Error> for EprStatus {
    fn from(err: &Error) -> Self {
        match err {
            Error::ProbabilityOutOfRange { .. } => EprStatus::ProbabilityRange,
            Error::DenseLimitExceeded { .. }
            | Error::TensorLimitExceeded(_)
            | Error::MixedEnumerationLimit(_) => EprStatus::LimitExceeded,
            Error::NotPrisonersDilemma | Error::DegenerateP2 => EprStatus::WrongGameClass,
            _ => EprStatus::InvalidArgument,
        }
    }
}

/// Opaque measurement-frame handle.
pub struct EprFrame {
    inner: MeasurementFrame,
}

fn catch(body: impl FnOnce() -> EprStatus) -> EprStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => EprStatus::InternalPanic,
    }
}

/// Gather per-qubit angles. `alphas` is either null (identity rotors) or a
/// row-major array of `3 * n_players` Euler angles.
unsafe fn gather_frame(
    family: StateFamily,
    n_players: usize,
    gamma: f64,
    alphas: *const f64,
    kappas: *const f64,
) -> Result<MeasurementFrame, Error> {
    let rotors = if alphas.is_null() {
        vec![RotorAngles::IDENTITY; n_players]
    } else {
        let flat = unsafe { std::slice::from_raw_parts(alphas, 3 * n_players) };
        flat.chunks_exact(3)
            .map(|t| RotorAngles::new(t[0], t[1], t[2]))
            .collect()
    };
    let kappas = unsafe { std::slice::from_raw_parts(kappas, n_players) }.to_vec();
    MeasurementFrame::new(family, gamma, rotors, kappas)
}

unsafe fn frame_new(
    family: StateFamily,
    n_players: usize,
    gamma: f64,
    alphas: *const f64,
    kappas: *const f64,
    out: *mut *mut EprFrame,
) -> EprStatus {
    if kappas.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    catch(
        || match unsafe { gather_frame(family, n_players, gamma, alphas, kappas) } {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(EprFrame { inner })) };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        },
    )
}

/// Create a GHZ-type frame: entanglement angle `gamma` in `[-pi/2, pi/2]`,
/// one measurement angle per player in `kappas`, optional rotor Euler
/// angles in `alphas` (3 per player, or null for identity rotors).
///
/// # Safety
/// `kappas` must point to `n_players` doubles, `alphas` to
/// `3 * n_players` doubles or null, `out` to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn epr_frame_new_ghz(
    n_players: usize,
    gamma: f64,
    alphas: *const f64,
    kappas: *const f64,
    out: *mut *mut EprFrame,
) -> EprStatus {
    unsafe { frame_new(StateFamily::Ghz, n_players, gamma, alphas, kappas, out) }
}

/// Create a W-type frame (no entanglement angle).
///
/// # Safety
/// As for [`epr_frame_new_ghz`].
#[no_mangle]
pub unsafe extern "C" fn epr_frame_new_w(
    n_players: usize,
    alphas: *const f64,
    kappas: *const f64,
    out: *mut *mut EprFrame,
) -> EprStatus {
    unsafe { frame_new(StateFamily::W, n_players, 0.0, alphas, kappas, out) }
}

/// Destroy a frame created by one of the constructors. Null is a no-op.
///
/// # Safety
/// `frame` must be a pointer previously returned by a frame constructor,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn epr_frame_free(frame: *mut EprFrame) {
    if !frame.is_null() {
        drop(unsafe { Box::from_raw(frame) });
    }
}

/// Number of players of a frame (0 for null).
///
/// # Safety
/// `frame` must be a live frame pointer or null.
#[no_mangle]
pub unsafe extern "C" fn epr_frame_players(frame: *const EprFrame) -> usize {
    if frame.is_null() {
        0
    } else {
        unsafe { &*frame }.inner.n_players()
    }
}

/// Closed-form probability of one outcome given as 0/1 bytes (player 1
/// first). Works for any player count.
///
/// # Safety
/// `bits` must point to `len` bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_outcome_probability(
    frame: *const EprFrame,
    bits: *const u8,
    len: usize,
    out: *mut f64,
) -> EprStatus {
    if frame.is_null() || bits.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let frame = unsafe { &*frame };
    let bits = unsafe { std::slice::from_raw_parts(bits, len) };
    catch(|| {
        if bits.iter().any(|&b| b > 1) {
            return EprStatus::InvalidArgument;
        }
        let string: String = bits
            .iter()
            .map(|&b| if b == 0 { '0' } else { '1' })
            .collect();
        let outcome = match Outcome::from_bits(&string) {
            Ok(o) => o,
            Err(err) => return EprStatus::from(&err),
        };
        match outcome_probability(&frame.inner, &outcome) {
            Ok(p) => {
                unsafe { *out = p };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

/// Closed-form probability of one outcome by integer index (player 1 most
/// significant; needs at most 63 players).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_outcome_probability_index(
    frame: *const EprFrame,
    outcome_index: u64,
    out: *mut f64,
) -> EprStatus {
    if frame.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let frame = unsafe { &*frame };
    catch(|| {
        let outcome = match Outcome::from_index(frame.inner.n_players(), outcome_index) {
            Ok(o) => o,
            Err(err) => return EprStatus::from(&err),
        };
        match outcome_probability(&frame.inner, &outcome) {
            Ok(p) => {
                unsafe { *out = p };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

unsafe fn write_distribution(
    dist: Result<epr_game::OutcomeDistribution, Error>,
    out: *mut f64,
    len: usize,
) -> EprStatus {
    match dist {
        Ok(dist) => {
            if dist.probabilities().len() != len {
                return EprStatus::InvalidArgument;
            }
            let target = unsafe { std::slice::from_raw_parts_mut(out, len) };
            target.copy_from_slice(dist.probabilities());
            EprStatus::Ok
        }
        Err(err) => EprStatus::from(&err),
    }
}

/// Dense closed-form distribution over all 2^N outcomes, lexicographic
/// order. `len` must equal 2^N; N is capped at 20.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn epr_full_distribution(
    frame: *const EprFrame,
    out: *mut f64,
    len: usize,
) -> EprStatus {
    if frame.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let frame = unsafe { &*frame };
    catch(|| unsafe { write_distribution(full_distribution(&frame.inner), out, len) })
}

/// Ground-truth distribution from the state-vector simulator (same layout
/// and cap as [`epr_full_distribution`]).
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn epr_oracle_distribution(
    frame: *const EprFrame,
    out: *mut f64,
    len: usize,
) -> EprStatus {
    if frame.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let frame = unsafe { &*frame };
    catch(|| unsafe { write_distribution(oracle::frame_distribution(&frame.inner), out, len) })
}

/// Expected payoff of one player (0-based) under linear payoff functions
/// `an + b` / `cn + d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_expected_payoff_linear(
    frame: *const EprFrame,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    player: usize,
    out: *mut f64,
) -> EprStatus {
    if frame.is_null() || out.is_null() {
        return EprStatus::NullPointer;
    }
    let frame = unsafe { &*frame };
    catch(|| {
        let result = GameSpec::linear(frame.inner.n_players(), LinearPayoff::new(a, b, c, d))
            .and_then(|game| {
                let dist = full_distribution(&frame.inner)?;
                expected_payoff(&dist, &game, player)
            });
        match result {
            Ok(p) => {
                unsafe { *out = p };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

/// Cooperator/defector payoffs at a symmetric pure profile, as a function
/// of `cos(gamma)`. Absent sides (no cooperators / no defectors) are
/// reported as NaN.
///
/// # Safety
/// `coop` and `defect` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_ne_payoffs(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    n_players: usize,
    cooperators: usize,
    cos_gamma: f64,
    coop: *mut f64,
    defect: *mut f64,
) -> EprStatus {
    if coop.is_null() || defect.is_null() {
        return EprStatus::NullPointer;
    }
    catch(|| {
        match ne_payoffs_cos(
            &LinearPayoff::new(a, b, c, d),
            n_players,
            cooperators,
            cos_gamma,
        ) {
            Ok(p) => {
                unsafe {
                    *coop = p.cooperate.unwrap_or(f64::NAN);
                    *defect = p.defect.unwrap_or(f64::NAN);
                }
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

/// Symmetric pure Nash equilibria at `cos(gamma)`: writes the equilibrium
/// cooperator counts into `counts` (capacity `cap`) and the number found
/// into `written`. Exact zone boundaries report both adjacent counts.
///
/// # Safety
/// `counts` must hold `cap` entries; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_symmetric_equilibria(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    n_players: usize,
    cos_gamma: f64,
    counts: *mut usize,
    cap: usize,
    written: *mut usize,
) -> EprStatus {
    if counts.is_null() || written.is_null() {
        return EprStatus::NullPointer;
    }
    catch(|| {
        match find_symmetric_pure_ne_cos(&LinearPayoff::new(a, b, c, d), n_players, cos_gamma) {
            Ok(points) => {
                if points.len() > cap {
                    return EprStatus::InvalidArgument;
                }
                let target = unsafe { std::slice::from_raw_parts_mut(counts, points.len()) };
                for (slot, point) in target.iter_mut().zip(&points) {
                    *slot = point.cooperators;
                }
                unsafe { *written = points.len() };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

/// Prisoner-dilemma zone boundaries `lambda_n = (N+1-2n)/(N-1+delta)` for
/// `n = 1 ..= floor(N/2)`, written in that order.
///
/// # Safety
/// `lambdas` must hold `cap` entries; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_pd_boundaries(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    n_players: usize,
    lambdas: *mut f64,
    cap: usize,
    written: *mut usize,
) -> EprStatus {
    if lambdas.is_null() || written.is_null() {
        return EprStatus::NullPointer;
    }
    catch(
        || match epr_game::pd_phase_boundaries(&LinearPayoff::new(a, b, c, d), n_players) {
            Ok(diagram) => {
                let edges: Vec<f64> = diagram
                    .zones
                    .iter()
                    .filter(|z| z.cooperators >= 1)
                    .map(|z| z.cos_gamma_hi)
                    .collect();
                if edges.len() > cap {
                    return EprStatus::InvalidArgument;
                }
                let target = unsafe { std::slice::from_raw_parts_mut(lambdas, edges.len()) };
                target.copy_from_slice(&edges);
                unsafe { *written = edges.len() };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        },
    )
}

/// Defector payoff along the zone boundaries as a function of `cos(gamma)`
/// (the boundary parabola for the standard prisoner dilemma).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_boundary_payoff_curve(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    n_players: usize,
    cos_gamma: f64,
    out: *mut f64,
) -> EprStatus {
    if out.is_null() {
        return EprStatus::NullPointer;
    }
    catch(|| {
        match boundary_payoff_curve_cos(&LinearPayoff::new(a, b, c, d), n_players, cos_gamma) {
            Ok(p) => {
                unsafe { *out = p };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        }
    })
}

/// Optimal prisoner-dilemma payoff on the W-type state (all players
/// defecting): `c + d - (c + d - (a + b))/N`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn epr_w_pd_optimum(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    n_players: usize,
    out: *mut f64,
) -> EprStatus {
    if out.is_null() {
        return EprStatus::NullPointer;
    }
    catch(
        || match w_pd_optimum(&LinearPayoff::new(a, b, c, d), n_players) {
            Ok((_, p)) => {
                unsafe { *out = p };
                EprStatus::Ok
            }
            Err(err) => EprStatus::from(&err),
        },
    )
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn epr_status_message(status: EprStatus) -> *const std::os::raw::c_char {
    let message: &'static [u8] = match status {
        EprStatus::Ok => b"ok\0",
        EprStatus::NullPointer => b"null pointer argument\0",
        EprStatus::InvalidArgument => b"invalid argument\0",
        EprStatus::ProbabilityRange => b"probability outside [0, 1]: sign-convention regression\0",
        EprStatus::LimitExceeded => b"player-count or enumeration limit exceeded\0",
        EprStatus::WrongGameClass => b"payoff parameters outside the required game class\0",
        EprStatus::InternalPanic => b"internal panic\0",
    };
    message.as_ptr().cast()
}
