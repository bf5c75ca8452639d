//! Root finding for increasing functions: bracketed bisection down to a
//! fixed width, then a few Newton steps kept inside the final bracket.

use crate::error::{argument, Result};

/// Bisection stops once the bracket is narrower than this (relative to `|hi|`
/// when `|hi| > 1`).
pub const BISECTION_WIDTH: f64 = 1e-9;
pub const NEWTON_STEPS: usize = 3;

/// Solves `f(t) = target` for increasing `f` on `[lo, hi]`.
///
/// The bracket must satisfy `f(lo) <= target <= f(hi)`. `derivative` is used
/// for the polishing Newton steps; a step that leaves the bracket is
/// discarded.
pub fn solve_increasing(
    f: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
    target: f64,
    mut lo: f64,
    mut hi: f64,
) -> Result<f64> {
    if !(lo <= hi) {
        return Err(argument(format!("empty bracket [{lo}, {hi}]")));
    }
    if f(lo) > target || f(hi) < target {
        return Err(argument(format!(
            "target {target} not bracketed by [{lo}, {hi}] (values {}, {})",
            f(lo),
            f(hi)
        )));
    }
    while hi - lo > BISECTION_WIDTH * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..NEWTON_STEPS {
        let slope = derivative(t);
        if !(slope > 0.0) {
            break;
        }
        let next = t - (f(t) - target) / slope;
        if !(next >= lo && next <= hi) {
            break;
        }
        t = next;
    }
    Ok(t)
}

/// Grows `hi` geometrically from `start` until `f(hi) >= target`.
pub fn bracket_above(f: impl Fn(f64) -> f64, target: f64, start: f64) -> Result<f64> {
    let mut hi = start.max(1.0);
    for _ in 0..2048 {
        if f(hi) >= target {
            return Ok(hi);
        }
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(argument(format!("could not bracket target {target}")))
}
