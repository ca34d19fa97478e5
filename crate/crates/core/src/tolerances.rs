//! Finite-scale acceptance constants.
//!
//! The distance law and the concentration statements are asymptotic. These
//! are the bands used to judge them at desk scale; they are choices made for
//! this crate, not values taken from the model's derivation.

/// Allowed gap between an empirical mean `d*` and the predicted `d0 + 1`.
pub const DSTAR_BAND: f64 = 1.0;

/// Minimum fraction of trials that must find an entry path of length at
/// most `ceil(d0) + 1`.
pub const CONCENTRATION_HIT_FRACTION: f64 = 0.9;

/// Maximum fraction of trials allowed an entry path of length at most
/// `floor(d0)` in the generic concentration check.
pub const CONCENTRATION_MISS_FRACTION: f64 = 0.1;

/// Maximum fraction of trials with a direct bridge at the source in the
/// `n1 = 2000` concentration run.
pub const DIRECT_BRIDGE_FRACTION: f64 = 0.15;

/// Multiplier on the standard error for Monte Carlo mean checks.
pub const STANDARD_ERRORS: f64 = 3.0;

/// A trial whose unreachable BC fraction exceeds this is left out of the
/// mean `d*` for its sweep point (but still counted).
pub const MAX_UNREACHABLE_FRACTION: f64 = 0.5;

/// Upward steps tolerated in a sweep curve that should be non-increasing.
pub const MAX_MONOTONE_VIOLATIONS: usize = 1;

/// Largest pointwise gap between the ER and scale-free sweep curves.
pub const MAX_SUBSTRATE_DIVERGENCE: f64 = 1.0;

/// Graph draws attempted per trial under the resample connectivity policy.
pub const RESAMPLE_ATTEMPTS: u32 = 100;

/// Connected fraction required above and below the threshold.
pub const CONNECTED_ABOVE: f64 = 0.9;
pub const CONNECTED_BELOW: f64 = 0.1;

/// Bounds on `n!/(n-l)! / n^l` at `n = 10^6, l = 10`.
pub const FALLING_FACTORIAL_RATIO: (f64, f64) = (0.9999, 1.0);
