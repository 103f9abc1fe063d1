/* C interface to the epr-game library. Generated by cbindgen; do not edit. */

#ifndef EPR_GAME_H
#define EPR_GAME_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every FFI entry point.
typedef enum EprStatus {
  EPR_STATUS_OK = 0,
  EPR_STATUS_NULL_POINTER = 1,
  EPR_STATUS_INVALID_ARGUMENT = 2,
  // A closed-form probability left [0, 1] beyond tolerance; this signals
  // a sign-convention regression, not bad input.
  EPR_STATUS_PROBABILITY_RANGE = 3,
  // A dense-enumeration or player-count limit was exceeded.
  EPR_STATUS_LIMIT_EXCEEDED = 4,
  // The payoff parameters do not describe the required game class.
  EPR_STATUS_WRONG_GAME_CLASS = 5,
  EPR_STATUS_INTERNAL_PANIC = 6,
} EprStatus;

// Opaque measurement-frame handle.
typedef struct EprFrame EprFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a GHZ-type frame: entanglement angle `gamma` in `[-pi/2, pi/2]`,
// one measurement angle per player in `kappas`, optional rotor Euler
// angles in `alphas` (3 per player, or null for identity rotors).
//
// # Safety
// `kappas` must point to `n_players` doubles, `alphas` to
// `3 * n_players` doubles or null, `out` to a writable pointer slot.
enum EprStatus epr_frame_new_ghz(size_t n_players,
                                 double gamma,
                                 const double *alphas,
                                 const double *kappas,
                                 struct EprFrame **out);

// Create a W-type frame (no entanglement angle).
//
// # Safety
// As for [`epr_frame_new_ghz`].
enum EprStatus epr_frame_new_w(size_t n_players,
                               const double *alphas,
                               const double *kappas,
                               struct EprFrame **out);

// Destroy a frame created by one of the constructors. Null is a no-op.
//
// # Safety
// `frame` must be a pointer previously returned by a frame constructor,
// not yet freed.
void epr_frame_free(struct EprFrame *frame);

// Number of players of a frame (0 for null).
//
// # Safety
// `frame` must be a live frame pointer or null.
size_t epr_frame_players(const struct EprFrame *frame);

// Closed-form probability of one outcome given as 0/1 bytes (player 1
// first). Works for any player count.
//
// # Safety
// `bits` must point to `len` bytes; `out` must be writable.
enum EprStatus epr_outcome_probability(const struct EprFrame *frame,
                                       const uint8_t *bits,
                                       size_t len,
                                       double *out);

// Closed-form probability of one outcome by integer index (player 1 most
// significant; needs at most 63 players).
//
// # Safety
// `out` must be writable.
enum EprStatus epr_outcome_probability_index(const struct EprFrame *frame,
                                             uint64_t outcome_index,
                                             double *out);

// Dense closed-form distribution over all 2^N outcomes, lexicographic
// order. `len` must equal 2^N; N is capped at 20.
//
// # Safety
// `out` must point to `len` writable doubles.
enum EprStatus epr_full_distribution(const struct EprFrame *frame, double *out, size_t len);

// Ground-truth distribution from the state-vector simulator (same layout
// and cap as [`epr_full_distribution`]).
//
// # Safety
// `out` must point to `len` writable doubles.
enum EprStatus epr_oracle_distribution(const struct EprFrame *frame, double *out, size_t len);

// Expected payoff of one player (0-based) under linear payoff functions
// `an + b` / `cn + d`.
//
// # Safety
// `out` must be writable.
enum EprStatus epr_expected_payoff_linear(const struct EprFrame *frame,
                                          double a,
                                          double b,
                                          double c,
                                          double d,
                                          size_t player,
                                          double *out);

// Cooperator/defector payoffs at a symmetric pure profile, as a function
// of `cos(gamma)`. Absent sides (no cooperators / no defectors) are
// reported as NaN.
//
// # Safety
// `coop` and `defect` must be writable.
enum EprStatus epr_ne_payoffs(double a,
                              double b,
                              double c,
                              double d,
                              size_t n_players,
                              size_t cooperators,
                              double cos_gamma,
                              double *coop,
                              double *defect);

// Symmetric pure Nash equilibria at `cos(gamma)`: writes the equilibrium
// cooperator counts into `counts` (capacity `cap`) and the number found
// into `written`. Exact zone boundaries report both adjacent counts.
//
// # Safety
// `counts` must hold `cap` entries; `written` must be writable.
enum EprStatus epr_symmetric_equilibria(double a,
                                        double b,
                                        double c,
                                        double d,
                                        size_t n_players,
                                        double cos_gamma,
                                        size_t *counts,
                                        size_t cap,
                                        size_t *written);

// Prisoner-dilemma zone boundaries `lambda_n = (N+1-2n)/(N-1+delta)` for
// `n = 1 ..= floor(N/2)`, written in that order.
//
// # Safety
// `lambdas` must hold `cap` entries; `written` must be writable.
enum EprStatus epr_pd_boundaries(double a,
                                 double b,
                                 double c,
                                 double d,
                                 size_t n_players,
                                 double *lambdas,
                                 size_t cap,
                                 size_t *written);

// Defector payoff along the zone boundaries as a function of `cos(gamma)`
// (the boundary parabola for the standard prisoner dilemma).
//
// # Safety
// `out` must be writable.
enum EprStatus epr_boundary_payoff_curve(double a,
                                         double b,
                                         double c,
                                         double d,
                                         size_t n_players,
                                         double cos_gamma,
                                         double *out);

// Optimal prisoner-dilemma payoff on the W-type state (all players
// defecting): `c + d - (c + d - (a + b))/N`.
//
// # Safety
// `out` must be writable.
enum EprStatus epr_w_pd_optimum(double a,
                                double b,
                                double c,
                                double d,
                                size_t n_players,
                                double *out);

// Static description of a status code.
const char *epr_status_message(enum EprStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EPR_GAME_H */
