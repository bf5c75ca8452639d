//! Generators for reference zero sets and the two explicit constructions.
//!
//! * [`integer_lattice`], [`scaled_lattice`], [`shifted_lattice`]: zeros of
//!   `sin(πz/h)/(πz/h)` and of shifted sines such as `cos πz`.
//! * [`footnote_sequence`]: negative reals with `card{a_k >= -r} = ⌊r/log² r⌋`
//!   for `r >= e²`, which satisfy the structural conditions but are the zero
//!   set of no Cartwright function.
//! * [`alpha_sequence`]: the symmetric set `α(a_k) = k` for a concave `α`
//!   with `α(t) - t` unbounded, which is the zero set of no function bounded
//!   on the real axis; [`int_decomposition`] evaluates the three integrals
//!   that show it.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{argument, Result};
use crate::quadrature::integrate;
use crate::roots::solve_increasing;
use crate::summation::NeumaierSum;
use crate::zero_model::ZeroSequence;

fn fmt_tag(name: &str, params: &[(&str, f64)]) -> String {
    let mut tag = name.to_string();
    for (k, v) in params {
        tag.push_str(&format!(",{k}={v}"));
    }
    tag
}

/// Nonzero integers `k` with `|k| < R`.
pub fn integer_lattice(radius: f64) -> Result<ZeroSequence> {
    if !(radius > 1.0) || !radius.is_finite() {
        return Err(argument(format!("lattice radius must exceed 1, got {radius}")));
    }
    Ok(scaled_lattice(1.0, radius)?.with_provenance(fmt_tag("lattice", &[("R", radius)])))
}

/// `hk`, `k ∈ ℤ \ {0}`, `|hk| < R`.
pub fn scaled_lattice(spacing: f64, radius: f64) -> Result<ZeroSequence> {
    if !(spacing > 0.0) || !spacing.is_finite() {
        return Err(argument(format!("spacing must be positive, got {spacing}")));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(argument(format!("radius must be positive, got {radius}")));
    }
    let mut points = Vec::new();
    let mut k = 1u64;
    loop {
        let x = spacing * k as f64;
        if x >= radius {
            break;
        }
        points.push(x);
        points.push(-x);
        k += 1;
    }
    Ok(ZeroSequence::from_reals(points, radius)?
        .with_provenance(fmt_tag("scaled", &[("h", spacing), ("R", radius)])))
}

/// `k + s` for all integers `k` with `|k + s| < R`; `s = 1/2` gives the zeros
/// of `cos πz`.
pub fn shifted_lattice(shift: f64, radius: f64) -> Result<ZeroSequence> {
    if !shift.is_finite() || shift.fract() == 0.0 {
        return Err(argument(format!("shift must be non-integer, got {shift}")));
    }
    if !(radius > shift.abs()) || !radius.is_finite() {
        return Err(argument(format!("radius must exceed |shift|, got {radius}")));
    }
    let lo = (-radius - shift).floor() as i64;
    let hi = (radius - shift).ceil() as i64;
    let points = (lo..=hi)
        .map(|k| k as f64 + shift)
        .filter(|x| x.abs() < radius);
    Ok(ZeroSequence::from_reals(points, radius)?
        .with_provenance(fmt_tag("shifted", &[("s", shift), ("R", radius)])))
}

/// `r / log² r`, increasing for `r > e²`.
pub fn footnote_count_function(r: f64) -> f64 {
    r / r.ln().powi(2)
}

fn footnote_count_derivative(r: f64) -> f64 {
    let l = r.ln();
    (l - 2.0) / (l * l * l)
}

/// Positions `r_k = inf{r >= e² : r/log² r >= k}` with `r_k < R`.
pub fn footnote_radii(radius: f64) -> Result<Vec<f64>> {
    let e2 = E * E;
    if !(radius > e2) || !radius.is_finite() {
        return Err(argument(format!("footnote radius must exceed e², got {radius}")));
    }
    let mut radii = vec![e2];
    // h has a critical point at e², so brackets start just above it
    let mut lo = e2 * (1.0 + 1e-12);
    let top = footnote_count_function(radius);
    let mut k = 2u64;
    while (k as f64) <= top {
        let target = k as f64;
        let r = solve_increasing(footnote_count_function, footnote_count_derivative, target, lo, radius)?;
        if r >= radius {
            break;
        }
        radii.push(r);
        lo = r;
        k += 1;
    }
    Ok(radii)
}

/// Negative zeros `-r_k` with `n(r) = ⌊r/log² r⌋`, complete inside `R`.
pub fn footnote_sequence(radius: f64) -> Result<ZeroSequence> {
    let radii = footnote_radii(radius)?;
    Ok(ZeroSequence::from_reals(radii.into_iter().map(|r| -r), radius)?
        .with_provenance(fmt_tag("footnote", &[("R", radius)])))
}

/// A strictly increasing concave profile on `[0, ∞)` with `α(0) = 0`.
pub trait AlphaProfile {
    fn value(&self, t: f64) -> f64;

    fn derivative(&self, t: f64) -> f64;

    /// `α(x + t) - α(x - t) - 2t`.
    fn symmetric_gap(&self, x: f64, t: f64) -> f64 {
        self.value(x + t) - self.value(x - t) - 2.0 * t
    }

    /// `2α(t) - α(t - x) - α(t + x)`, nonnegative by concavity.
    fn second_difference(&self, t: f64, x: f64) -> f64 {
        2.0 * self.value(t) - self.value(t - x) - self.value(t + x)
    }

    /// A lower bound for `∫_1^{x-1} (α(x-t) - α(x+t) + 2t)/t dt`, uniform in `x`.
    fn second_integral_floor(&self) -> Option<f64> {
        None
    }

    fn describe(&self) -> String;
}

/// `α(t) = t + c·log(1 + t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlphaSpec {
    pub c: f64,
    pub description: String,
}

impl AlphaSpec {
    pub fn new(c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(argument(format!("alpha coefficient must be positive, got {c}")));
        }
        Ok(Self {
            c,
            description: format!("alpha(t) = t + {c}*log(1+t)"),
        })
    }
}

impl AlphaProfile for AlphaSpec {
    fn value(&self, t: f64) -> f64 {
        t + self.c * t.ln_1p()
    }

    fn derivative(&self, t: f64) -> f64 {
        1.0 + self.c / (1.0 + t)
    }

    fn symmetric_gap(&self, x: f64, t: f64) -> f64 {
        self.c * ((x + t).ln_1p() - (x - t).ln_1p())
    }

    fn second_difference(&self, t: f64, x: f64) -> f64 {
        let q = x / (1.0 + t);
        -self.c * (-q * q).ln_1p()
    }

    // ln((1+x+t)/(1+x-t)) <= ln((1+s)/(1-s)) with s = t/x, and
    // ∫_0^1 ln((1+s)/(1-s))/s ds = π²/4.
    fn second_integral_floor(&self) -> Option<f64> {
        Some(-self.c * std::f64::consts::PI.powi(2) / 4.0)
    }

    fn describe(&self) -> String {
        self.description.clone()
    }
}

/// Positive roots `α(a_k) = k`, `k = 1..=n`.
pub fn alpha_roots<A: AlphaProfile + ?Sized>(alpha: &A, n: usize) -> Result<Vec<f64>> {
    let mut roots = Vec::with_capacity(n);
    let mut lo = 0.0;
    for k in 1..=n {
        let target = k as f64;
        // α(t) >= t, so a_k <= k
        let root = solve_increasing(|t| alpha.value(t), |t| alpha.derivative(t), target, lo, target)?;
        roots.push(root);
        lo = root;
    }
    Ok(roots)
}

/// The symmetric set `{±a_k}`, `k = 1..=n`.
pub fn alpha_sequence<A: AlphaProfile + ?Sized>(alpha: &A, n: usize) -> Result<ZeroSequence> {
    if n == 0 {
        return Err(argument("alpha sequence needs at least one zero"));
    }
    let roots = alpha_roots(alpha, n)?;
    let last = roots[n - 1];
    let spacing = if n > 1 { last - roots[n - 2] } else { last };
    let points = roots.iter().flat_map(|&a| [a, -a]);
    Ok(ZeroSequence::from_reals(points, last + 0.5 * spacing)?
        .with_provenance(format!("alpha,{},N={n}", alpha.describe())))
}

/// The three integrals whose sum equals `∫_0^∞ [n(0,t)-n(x,t)]/t dt` up to a
/// uniformly bounded term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntDecomposition {
    pub x: f64,
    /// `∫_1^x 2(E[α(t)] - t)/t dt`, exact piecewise.
    pub first: f64,
    /// `∫_1^{x-1} (α(x-t) - α(x+t) + 2t)/t dt`.
    pub second: f64,
    /// `∫_x^{t_max} (2α(t) - α(t-x) - α(t+x))/t dt`.
    pub third: f64,
    pub t_max: f64,
    /// Quadrature error estimates of the second and third integrals.
    pub quadrature_error: f64,
    /// Lower bound for `second` valid for every `x`, when the profile has one.
    pub second_floor: Option<f64>,
    pub bounded_term_note: String,
}

pub fn int_decomposition<A: AlphaProfile + ?Sized>(alpha: &A, x: f64, t_max: f64) -> Result<IntDecomposition> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(argument(format!("decomposition needs x > 2, got {x}")));
    }
    if !(t_max > 2.0 * x) || !t_max.is_finite() {
        return Err(argument(format!("t_max must exceed 2x = {}, got {t_max}", 2.0 * x)));
    }

    // E[α(t)] is constant between consecutive a_k, so ∫ 2E[α(t)]/t is a sum of logs.
    let mut first = NeumaierSum::new();
    let mut lo = 1.0;
    let mut level = alpha.value(1.0).floor();
    while lo < x {
        let next_level = level + 1.0;
        let next = if alpha.value(x) < next_level {
            x
        } else {
            solve_increasing(|t| alpha.value(t), |t| alpha.derivative(t), next_level, lo, x)?
        };
        let hi = next.min(x);
        first.add(2.0 * level * (hi / lo).ln());
        lo = hi;
        level = next_level;
    }
    first.add(-2.0 * (x - 1.0));

    // t = e^u; dt/t = du
    let second = integrate(|u| -alpha.symmetric_gap(x, u.exp()), 0.0, (x - 1.0).ln(), 1e-11, 1e-12);
    let third = integrate(|u| alpha.second_difference(u.exp(), x), x.ln(), t_max.ln(), 1e-11, 1e-12);

    Ok(IntDecomposition {
        x,
        first: first.value(),
        second: second.value,
        third: third.value,
        t_max,
        quadrature_error: second.error_estimate + third.error_estimate,
        second_floor: alpha.second_integral_floor(),
        bounded_term_note: "fractional-part integrals of α(t), α(x±t), α(t±x) against dt/t are bounded uniformly in x and omitted".into(),
    })
}
