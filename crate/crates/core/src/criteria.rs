//! Numerical evidence for the membership criteria of the classes `C`, `B`
//! and `D`, the Cartwright integral, and the exponential-type bound.
//!
//! Everything is built on
//!
//! ```text
//! φ(x; b) = ∫_0^∞ [n(b,t) - n(x,t)] / t dt = Σ m (log|a - x| - log|a - b|)
//! ```
//!
//! and its `D` counterpart `∫_1^∞ [n(0,t) - n(x,t)] / t dt`. For a truncated
//! sequence the upper limit is a common horizon `T = R - max(|b|, x_max)`, so
//! every disc that is integrated over lies inside the completeness disc.
//!
//! A finite list cannot decide an asymptotic criterion. Verdicts are trend
//! tests over dyadic windows `2^j <= |x| < 2^{j+1}`, and every report carries
//! the raw window data.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    angular_density, event_sum, growth_check, least_squares_slope, lindelof_sums, AngularDensity,
    GrowthEstimate, LindelofTrace,
};
use crate::error::{argument, Error, Result};
use crate::zero_model::{ValidationReport, ZeroSequence};

/// Growth per octave above which a window trend counts as divergent.
pub const TREND_TOLERANCE: f64 = 0.05;
/// Number of outermost windows entering a trend fit.
pub const TREND_WINDOWS: usize = 6;
pub const MIN_TREND_WINDOWS: usize = 3;
/// Slope of `log2` window mass at or below which the `C` integral counts as
/// geometrically convergent.
pub const C_DECAY_SLOPE: f64 = -0.5;
/// Relative slack of [`type_bound`] against `σ`.
pub const TYPE_TOLERANCE: f64 = 0.05;
pub const GOLDEN_ITERATIONS: usize = 3;
/// Gaps per window and side that get golden-section refinement.
pub const REFINED_GAPS: usize = 4;
pub const DEFAULT_POINTS_PER_WINDOW: usize = 64;

const LOG_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    C,
    B,
    D,
    #[serde(rename = "type_sigma")]
    TypeSigma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EvidenceSatisfied,
    EvidenceViolated,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EvidenceSatisfied => "evidence_satisfied",
            Verdict::EvidenceViolated => "evidence_violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl Criterion {
    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::C => "C",
            Criterion::B => "B",
            Criterion::D => "D",
            Criterion::TypeSigma => "type_sigma",
        }
    }
}

/// Raw statistics of one `|x|` window; `j = -1` is the core window `|x| < 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Window {
    pub j: i32,
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    /// Largest statistic in the window (sup φ, sup |D integrand|, or for `C`
    /// the sup of `φ⁺ log|x| / |x|`).
    pub extremum: f64,
    pub witness: Option<f64>,
    /// `C` only: trapezoidal mass of `φ⁺/(1+x²)` in the window.
    pub mass: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub verdict: Verdict,
    /// Present iff the verdict is not inconclusive.
    pub witness: Option<f64>,
    pub extremum_value: f64,
    pub truncation_radius: f64,
    pub grid_description: String,
    /// Upper integration limit; `None` means the full half-line.
    pub horizon: Option<f64>,
    /// Fitted growth of the window statistic per octave.
    pub trend_slope: Option<f64>,
    /// `C` only: `log2` slope of the window masses.
    pub mass_slope: Option<f64>,
    pub windows: Vec<Window>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    /// Sets the verdict, keeping the witness invariant.
    fn settle(mut self, verdict: Verdict, witness: Option<f64>) -> Self {
        self.verdict = verdict;
        self.witness = if verdict == Verdict::Inconclusive { None } else { witness };
        self
    }
}

fn horizon_for(seq: &ZeroSequence, reach: f64, lower: f64) -> Result<f64> {
    match seq.horizon_from(reach) {
        None => Ok(f64::INFINITY),
        Some(h) if h > lower => Ok(h),
        Some(_) => Err(Error::Incomplete {
            requested: reach + lower,
            available: seq.truncation_radius(),
        }),
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `φ(·; b)` on `|x| <= reach` with a fixed horizon.
#[derive(Debug, Clone)]
pub struct Phi<'a> {
    seq: &'a ZeroSequence,
    base: f64,
    reach: f64,
    horizon: f64,
}

impl<'a> Phi<'a> {
    pub fn new(seq: &'a ZeroSequence, base: f64, reach: f64) -> Result<Self> {
        if !base.is_finite() || !reach.is_finite() || reach < 0.0 {
            return Err(argument(format!("need finite b and reach >= 0, got b = {base}, reach = {reach}")));
        }
        if seq.contains(real(base)) {
            return Err(argument(format!("base point b = {base} is a zero of the sequence")));
        }
        let horizon = horizon_for(seq, base.abs().max(reach), 0.0)?;
        Ok(Self {
            seq,
            base,
            reach,
            horizon,
        })
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn horizon(&self) -> Option<f64> {
        self.horizon.is_finite().then_some(self.horizon)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        if !(x.abs() <= self.reach) {
            return Err(argument(format!("x = {x} lies outside the reach {}", self.reach)));
        }
        Ok(self.eval(x))
    }

    fn eval(&self, x: f64) -> f64 {
        if self.seq.contains(real(x)) {
            return f64::NEG_INFINITY;
        }
        event_sum(self.seq, real(self.base), real(x), 0.0, self.horizon)
    }
}

/// `φ(x; b)` with horizon `R - max(|b|, |x|)`.
pub fn phi(seq: &ZeroSequence, b: f64, x: f64) -> Result<f64> {
    Phi::new(seq, b, x.abs())?.value(x)
}

/// `∫_1^T [n(0,t) - n(x,t)] / t dt` on `|x| <= reach`.
#[derive(Debug, Clone)]
pub struct DIntegral<'a> {
    seq: &'a ZeroSequence,
    reach: f64,
    horizon: f64,
}

impl<'a> DIntegral<'a> {
    pub fn new(seq: &'a ZeroSequence, reach: f64) -> Result<Self> {
        seq.ensure_origin_excluded()?;
        if !reach.is_finite() || reach < 0.0 {
            return Err(argument(format!("reach must be finite and >= 0, got {reach}")));
        }
        let horizon = horizon_for(seq, reach, 1.0)?;
        Ok(Self { seq, reach, horizon })
    }

    pub fn horizon(&self) -> Option<f64> {
        self.horizon.is_finite().then_some(self.horizon)
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        if !(x.abs() <= self.reach) {
            return Err(argument(format!("x = {x} lies outside the reach {}", self.reach)));
        }
        Ok(self.eval(x))
    }

    fn eval(&self, x: f64) -> f64 {
        event_sum(self.seq, real(0.0), real(x), 1.0, self.horizon)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiProfile {
    pub base_point: f64,
    pub horizon: Option<f64>,
    /// Sorted by `x`; `-∞` at zeros.
    pub samples: Vec<(f64, f64)>,
    /// Sample points that coincide with zeros.
    pub clipped: Vec<f64>,
}

pub fn phi_profile(seq: &ZeroSequence, b: f64, xs: &[f64]) -> Result<PhiProfile> {
    let xs = sorted_unique(xs.to_vec())?;
    let reach = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let phi = Phi::new(seq, b, reach)?;
    let samples: Vec<(f64, f64)> = xs.par_iter().map(|&x| (x, phi.eval(x))).collect();
    let clipped = samples
        .iter()
        .filter(|s| s.1 == f64::NEG_INFINITY)
        .map(|s| s.0)
        .collect();
    Ok(PhiProfile {
        base_point: b,
        horizon: phi.horizon(),
        samples,
        clipped,
    })
}

fn sorted_unique(mut xs: Vec<f64>) -> Result<Vec<f64>> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(argument("grid points must be finite"));
    }
    xs.iter_mut().for_each(|x| *x += 0.0);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    Ok(xs)
}

/// `per_window` points in the core `[0, 1]` and log-spaced points in every
/// dyadic window up to `x_max`, mirrored to negative `x`.
pub fn dyadic_grid(x_max: f64, per_window: usize) -> Result<Vec<f64>> {
    if !(x_max > 0.0) || !x_max.is_finite() {
        return Err(argument(format!("x_max must be positive, got {x_max}")));
    }
    if per_window < 2 {
        return Err(argument("need at least 2 points per window"));
    }
    let mut xs = vec![0.0];
    let core = x_max.min(1.0);
    for i in 1..=per_window {
        xs.push(core * i as f64 / per_window as f64);
    }
    let mut lo = 1.0f64;
    while lo < x_max {
        let hi = (2.0 * lo).min(x_max);
        let ratio = (hi / lo).ln();
        for i in 1..=per_window {
            xs.push(lo * (ratio * i as f64 / per_window as f64).exp());
        }
        lo *= 2.0;
    }
    xs.push(x_max);
    let mirrored: Vec<f64> = xs.iter().map(|x| -x).collect();
    xs.extend(mirrored);
    sorted_unique(xs)
}

fn window_index(x: f64) -> i32 {
    let a = x.abs();
    if a < 1.0 {
        -1
    } else {
        a.log2().floor() as i32
    }
}

/// Core window plus every full dyadic window inside `[0, x_max]`.
fn window_bounds(x_max: f64) -> Vec<(i32, f64, f64)> {
    let mut out = vec![(-1, 0.0, x_max.min(1.0))];
    let mut j = 0;
    while 2f64.powi(j + 1) <= x_max {
        out.push((j, 2f64.powi(j), 2f64.powi(j + 1)));
        j += 1;
    }
    out
}

/// Golden-section search for a maximum of `f` on `[a, c]`; returns every
/// evaluated point.
fn golden_section(f: &(impl Fn(f64) -> f64 + Sync), mut a: f64, mut c: f64) -> Vec<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = c - g * (c - a);
    let mut x2 = a + g * (c - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut out = vec![(x1, f1), (x2, f2)];
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (c - a);
            f2 = f(x2);
            out.push((x2, f2));
        } else {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - g * (c - a);
            f1 = f(x1);
            out.push((x1, f1));
        }
    }
    out
}

/// Evaluates `f` on the sorted base grid, the breakpoints and the midpoints of all
/// breakpoint gaps, then golden-refines the best gaps of every window and
/// side. Returns samples sorted by `x`.
fn augmented_samples(
    f: &(impl Fn(f64) -> f64 + Sync),
    base: &[f64],
    breakpoints: &[f64],
) -> Vec<(f64, f64)> {
    // augmentation stays within the span of the user grid
    let (lo, hi) = match (base.first(), base.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => return Vec::new(),
    };
    let inside: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&x| x >= lo && x <= hi)
        .collect();
    let gaps: Vec<(f64, f64)> = inside
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect();
    let mut points: Vec<f64> = base.to_vec();
    points.extend(inside.iter().copied());
    points.extend(gaps.iter().map(|g| 0.5 * (g.0 + g.1)));
    let points = sorted_unique(points).unwrap_or_default();
    let mut samples: Vec<(f64, f64)> = points.par_iter().map(|&x| (x, f(x))).collect();

    // rank gaps by their midpoint value inside each (window, side)
    let mut ranked: Vec<((i32, bool), f64, usize)> = gaps
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mid = 0.5 * (g.0 + g.1);
            let value = samples
                .binary_search_by(|s| s.0.total_cmp(&mid))
                .map(|k| samples[k].1)
                .unwrap_or(f64::NEG_INFINITY);
            ((window_index(mid), mid < 0.0), value, i)
        })
        .collect();
    ranked.sort_by(|p, q| p.0.cmp(&q.0).then(q.1.total_cmp(&p.1)).then(p.2.cmp(&q.2)));
    let mut chosen = Vec::new();
    let mut run = 0;
    for (k, entry) in ranked.iter().enumerate() {
        if k == 0 || ranked[k - 1].0 != entry.0 {
            run = 0;
        }
        if run < REFINED_GAPS {
            chosen.push(gaps[entry.2]);
        }
        run += 1;
    }
    let refined: Vec<(f64, f64)> = chosen
        .par_iter()
        .flat_map_iter(|&(a, c)| golden_section(f, a, c))
        .collect();
    samples.extend(refined);
    samples.sort_by(|p, q| p.0.total_cmp(&q.0));
    samples.dedup_by(|p, q| p.0 == q.0);
    samples
}

fn argmax(samples: impl Iterator<Item = (f64, f64)>) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for (x, v) in samples {
        if v.is_nan() || v == f64::NEG_INFINITY {
            continue;
        }
        if best.is_none_or(|b| v > b.1) {
            best = Some((x, v));
        }
    }
    best
}

/// Sup statistics per window.
fn sup_windows(samples: &[(f64, f64)], x_max: f64, stat: impl Fn(f64, f64) -> f64) -> Vec<Window> {
    window_bounds(x_max)
        .into_iter()
        .map(|(j, lo, hi)| {
            let members = samples
                .iter()
                .filter(|s| window_index(s.0) == j && s.0.abs() <= x_max);
            let count = members.clone().count();
            let best = argmax(members.map(|s| (s.0, stat(s.0, s.1))));
            Window {
                j,
                lo,
                hi,
                samples: count,
                extremum: best.map_or(f64::NEG_INFINITY, |b| b.1),
                witness: best.map(|b| b.0),
                mass: None,
            }
        })
        .collect()
}

/// Least-squares slope of `value(window)` against `j` over the outermost
/// dyadic windows.
fn trend(windows: &[Window], value: impl Fn(&Window) -> f64) -> Option<f64> {
    let dyadic: Vec<&Window> = windows.iter().filter(|w| w.j >= 0).collect();
    let top = &dyadic[dyadic.len().saturating_sub(TREND_WINDOWS)..];
    if top.len() < MIN_TREND_WINDOWS {
        return None;
    }
    let xs: Vec<f64> = top.iter().map(|w| f64::from(w.j)).collect();
    let ys: Vec<f64> = top.iter().map(|w| value(w)).collect();
    if ys.iter().any(|y| !y.is_finite()) {
        return None;
    }
    least_squares_slope(&xs, &ys)
}

fn reach_of(grid: &[f64]) -> f64 {
    grid.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn real_zero_breakpoints(seq: &ZeroSequence) -> Vec<f64> {
    sorted_unique(seq.real_zeros()).unwrap_or_default()
}

fn grid_note(samples: usize, x_max: f64, extra: &str) -> String {
    format!("{samples} samples on [-{x_max}, {x_max}]; {extra}")
}

fn base_report(criterion: Criterion, seq: &ZeroSequence, grid_description: String, horizon: Option<f64>) -> CriterionReport {
    CriterionReport {
        criterion,
        verdict: Verdict::Inconclusive,
        witness: None,
        extremum_value: 0.0,
        truncation_radius: seq.truncation_radius(),
        grid_description,
        horizon,
        trend_slope: None,
        mass_slope: None,
        windows: Vec::new(),
        notes: Vec::new(),
    }
}

/// Sorted samples, effective `x_max`, horizon.
type PhiSamples = (Vec<(f64, f64)>, f64, Option<f64>);

fn phi_samples(seq: &ZeroSequence, b: f64, grid: &[f64]) -> Result<PhiSamples> {
    let grid = sorted_unique(grid.to_vec())?;
    let x_max = reach_of(&grid);
    let phi = Phi::new(seq, b, x_max)?;
    let samples = augmented_samples(&|x| phi.eval(x), &grid, &real_zero_breakpoints(seq));
    Ok((samples, x_max, phi.horizon()))
}

/// Cartwright criterion: `∫ [φ(x; b)]⁺ dx / (1 + x²) < ∞`.
///
/// The window statistic is `Z_j = sup φ⁺ log|x| / |x|`, which stays flat
/// exactly at the divergence boundary `φ⁺ ~ |x| / log|x|`; a flat or rising
/// trend is evidence of divergence. Window masses decaying at least like
/// `2^{-j/2}` are evidence of convergence.
#[allow(non_snake_case)]
pub fn check_C(seq: &ZeroSequence, b: f64, x_max: f64, points_per_window: usize) -> Result<CriterionReport> {
    let grid = dyadic_grid(x_max, points_per_window)?;
    let (samples, x_max, horizon) = phi_samples(seq, b, &grid)?;
    Ok(c_report(seq, &samples, x_max, horizon, points_per_window))
}

fn c_report(seq: &ZeroSequence, samples: &[(f64, f64)], x_max: f64, horizon: Option<f64>, per_window: usize) -> CriterionReport {
    let weight = |x: f64, v: f64| if v > 0.0 { v / (1.0 + x * x) } else { 0.0 };
    let mut windows = sup_windows(samples, x_max, |x, v| {
        if v > 0.0 && x.abs() > 1.0 {
            v * x.abs().ln() / x.abs()
        } else {
            0.0
        }
    });
    let mut masses = vec![0.0; windows.len()];
    let mut total = crate::summation::NeumaierSum::new();
    for pair in samples.windows(2) {
        let (x0, v0) = pair[0];
        let (x1, v1) = pair[1];
        let piece = 0.5 * (x1 - x0) * (weight(x0, v0) + weight(x1, v1));
        total.add(piece);
        let j = window_index(0.5 * (x0 + x1));
        if let Some(k) = windows.iter().position(|w| w.j == j) {
            masses[k] += piece;
        }
    }
    for (w, m) in windows.iter_mut().zip(&masses) {
        w.mass = Some(*m);
    }
    let witness = argmax(samples.iter().map(|&(x, v)| (x, weight(x, v)))).map(|b| b.0);
    let mut report = base_report(
        Criterion::C,
        seq,
        grid_note(samples.len(), x_max, &format!("{per_window} points per dyadic window, zero midpoints, golden refinement")),
        horizon,
    );
    report.extremum_value = total.value();
    let z_slope = trend(&windows, |w| w.extremum.max(LOG_FLOOR).log2());
    let i_slope = trend(&windows, |w| w.mass.unwrap_or(0.0).max(LOG_FLOOR).log2());
    let dyadic: Vec<&Window> = windows.iter().filter(|w| w.j >= 0).collect();
    let top = &dyadic[dyadic.len().saturating_sub(TREND_WINDOWS)..];
    let flat_zero = top.len() >= MIN_TREND_WINDOWS && top.iter().all(|w| w.extremum <= 0.0);
    report.trend_slope = z_slope;
    report.mass_slope = i_slope;
    let verdict = match (flat_zero, z_slope, i_slope) {
        (true, _, _) => Verdict::EvidenceSatisfied,
        (_, Some(z), _) if z >= -TREND_TOLERANCE => Verdict::EvidenceViolated,
        (_, Some(_), Some(i)) if i <= C_DECAY_SLOPE => Verdict::EvidenceSatisfied,
        _ => Verdict::Inconclusive,
    };
    if verdict == Verdict::Inconclusive && top.len() >= MIN_TREND_WINDOWS {
        report.notes.push("positive part decays, but neither geometrically nor at the divergence boundary".into());
    }
    report.windows = windows;
    report.settle(verdict, witness.or(Some(0.0)))
}

/// Bounded-class criterion: `sup_x φ(x; b) < ∞`.
#[allow(non_snake_case)]
pub fn check_B(seq: &ZeroSequence, b: f64, x_grid: &[f64]) -> Result<CriterionReport> {
    let (samples, x_max, horizon) = phi_samples(seq, b, x_grid)?;
    Ok(sup_report(Criterion::B, seq, &samples, x_max, horizon, x_grid.len()))
}

fn sup_report(
    criterion: Criterion,
    seq: &ZeroSequence,
    samples: &[(f64, f64)],
    x_max: f64,
    horizon: Option<f64>,
    user_points: usize,
) -> CriterionReport {
    let windows = sup_windows(samples, x_max, |_, v| v);
    let best = argmax(samples.iter().copied());
    let extra = match criterion {
        Criterion::D => "breakpoints at zeros and zeros ± 1, gap midpoints, golden refinement",
        _ => "midpoints of consecutive real zeros, golden refinement",
    };
    let mut report = base_report(
        criterion,
        seq,
        grid_note(samples.len(), x_max, &format!("{user_points} user points; {extra}")),
        horizon,
    );
    report.extremum_value = best.map_or(0.0, |b| b.1);
    let slope = trend(&windows, |w| w.extremum);
    report.trend_slope = slope;
    report.windows = windows;
    let verdict = match slope {
        Some(s) if s > TREND_TOLERANCE => Verdict::EvidenceViolated,
        Some(_) => Verdict::EvidenceSatisfied,
        None => Verdict::Inconclusive,
    };
    report.settle(verdict, best.map(|b| b.0).or(Some(0.0)))
}

/// Translation-compact criterion: `sup_x |∫_1^∞ [n(0,t) - n(x,t)] / t dt| < ∞`.
#[allow(non_snake_case)]
pub fn check_D(seq: &ZeroSequence, x_grid: &[f64]) -> Result<CriterionReport> {
    let grid = sorted_unique(x_grid.to_vec())?;
    let x_max = reach_of(&grid);
    let d = DIntegral::new(seq, x_max)?;
    let mut breaks = Vec::new();
    for z in seq.zeros() {
        let r = z.position.re;
        breaks.extend([r - 1.0, r, r + 1.0]);
    }
    breaks.extend([grid.first().copied().unwrap_or(0.0), grid.last().copied().unwrap_or(0.0)]);
    let breaks = sorted_unique(breaks)?;
    let samples = augmented_samples(&|x| d.eval(x).abs(), &grid, &breaks);
    let mut report = sup_report(Criterion::D, seq, &samples, x_max, d.horizon(), grid.len());
    report.notes.push("base point fixed at 0".into());
    Ok(report)
}

/// D integrand values (signed) on a grid, for profiles.
pub fn d_profile(seq: &ZeroSequence, xs: &[f64]) -> Result<Vec<(f64, f64)>> {
    let xs = sorted_unique(xs.to_vec())?;
    let d = DIntegral::new(seq, reach_of(&xs))?;
    Ok(xs.par_iter().map(|&x| (x, d.eval(x))).collect())
}

/// Trapezoidal `∫ log⁺|f(x)| / (1 + x²) dx` over sorted samples of `log|f|`.
pub fn cartwright_integral(log_modulus_samples: &[(f64, f64)]) -> Result<f64> {
    for (i, w) in log_modulus_samples.windows(2).enumerate() {
        if !(w[0].0 < w[1].0) {
            return Err(Error::Unsorted { index: i + 1 });
        }
    }
    let weight = |(x, v): (f64, f64)| if v > 0.0 { v / (1.0 + x * x) } else { 0.0 };
    Ok(crate::summation::sum(
        log_modulus_samples
            .windows(2)
            .map(|w| 0.5 * (w[1].0 - w[0].0) * (weight(w[0]) + weight(w[1]))),
    ))
}

/// Per-`y` estimates `φ(iy; b) / |y|` of the exponential type along the
/// imaginary axis; the verdict compares the largest-`|y|` values with `σ`.
pub fn type_bound(seq: &ZeroSequence, b: f64, y_values: &[f64], sigma: f64) -> Result<CriterionReport> {
    if y_values.is_empty() || !y_values.iter().any(|&y| y > 0.0) || !y_values.iter().any(|&y| y < 0.0) {
        return Err(argument("y values must contain both signs"));
    }
    for (i, w) in y_values.windows(2).enumerate() {
        if !(w[0].abs() <= w[1].abs()) {
            return Err(Error::Unsorted { index: i + 1 });
        }
    }
    if !(sigma >= 0.0) {
        return Err(argument(format!("sigma must be nonnegative, got {sigma}")));
    }
    let reach = reach_of(y_values).max(b.abs());
    let phi = Phi::new(seq, b, 0.0)?;
    let horizon = horizon_for(seq, reach, 0.0)?;
    let values: Vec<(f64, f64)> = y_values
        .par_iter()
        .map(|&y| {
            let z = Complex64::new(0.0, y);
            (y, event_sum(seq, real(phi.base()), z, 0.0, horizon) / y.abs())
        })
        .collect();
    if let Some(&(y, _)) = values.iter().find(|v| v.1.is_nan()) {
        return Err(Error::Divergent {
            point: Complex64::new(0.0, y),
            zero: Complex64::new(0.0, y),
        });
    }
    let top = values.last().map_or(0.0, |v| v.0.abs());
    let plateau = values
        .iter()
        .filter(|v| v.0.abs() == top)
        .fold(None::<(f64, f64)>, |best, &v| match best {
            Some(b) if b.1 >= v.1 => Some(b),
            _ => Some(v),
        })
        .unwrap_or((0.0, 0.0));
    let mut report = base_report(
        Criterion::TypeSigma,
        seq,
        format!("{} imaginary-axis points, |y| up to {top}", values.len()),
        (horizon.is_finite()).then_some(horizon),
    );
    report.extremum_value = plateau.1;
    report.windows = values
        .iter()
        .map(|&(y, v)| Window {
            j: window_index(y),
            lo: y,
            hi: y,
            samples: 1,
            extremum: v,
            witness: Some(y),
            mass: None,
        })
        .collect();
    report.notes.push(format!("sigma = {sigma}, relative tolerance {TYPE_TOLERANCE}"));
    let verdict = if plateau.1 <= sigma * (1.0 + TYPE_TOLERANCE) + 1e-12 {
        Verdict::EvidenceSatisfied
    } else {
        Verdict::EvidenceViolated
    };
    Ok(report.settle(verdict, Some(plateau.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyOptions {
    pub b: f64,
    /// Defaults to `R/4`, or twice the largest modulus of a complete list.
    pub x_max: Option<f64>,
    pub points_per_window: usize,
    /// Sector half-angles for the angular densities.
    pub alphas: Vec<f64>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        use std::f64::consts::PI;
        Self {
            b: 0.0,
            x_max: None,
            points_per_window: DEFAULT_POINTS_PER_WINDOW,
            alphas: vec![PI / 8.0, PI / 4.0, PI / 2.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub c: Verdict,
    pub b: Verdict,
    pub d: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub provenance: String,
    pub validation: ValidationReport,
    pub options: ClassifyOptions,
    pub x_max: f64,
    pub lindelof: Option<LindelofTrace>,
    pub growth: Option<GrowthEstimate>,
    pub angular: Vec<AngularDensity>,
    pub c: CriterionReport,
    pub b: CriterionReport,
    pub d: CriterionReport,
    /// Verdicts before the inclusion closure.
    pub raw_verdicts: Verdicts,
    /// Raw verdict combinations that contradict `D ⊆ B ⊆ C`.
    pub artifacts: Vec<String>,
    pub structure_note: String,
}

/// Applies `D ⊆ B ⊆ C` to evidence: violations propagate `C → B → D`, then
/// satisfaction propagates `D → B → C`, upgrading only inconclusive verdicts.
pub fn apply_closure(raw: Verdicts) -> (Verdicts, Vec<String>) {
    use Verdict::*;
    let mut artifacts = Vec::new();
    let mut v = raw;
    let pairs = [("C", raw.c, "B", raw.b), ("B", raw.b, "D", raw.d), ("C", raw.c, "D", raw.d)];
    for (outer, vo, inner, vi) in pairs {
        if vo == EvidenceViolated && vi == EvidenceSatisfied {
            artifacts.push(format!("{outer} violated but {inner} satisfied; {inner} demoted to violated"));
        }
    }
    if v.c == EvidenceViolated {
        v.b = EvidenceViolated;
    }
    if v.b == EvidenceViolated {
        v.d = EvidenceViolated;
    }
    if v.d == EvidenceSatisfied && v.b == Inconclusive {
        v.b = EvidenceSatisfied;
    }
    if v.b == EvidenceSatisfied && v.c == Inconclusive {
        v.c = EvidenceSatisfied;
    }
    for (name, before, after) in [("C", raw.c, v.c), ("B", raw.b, v.b), ("D", raw.d, v.d)] {
        if before != after && before != EvidenceSatisfied {
            artifacts.push(format!("{name}: {} -> {} by inclusion", before.as_str(), after.as_str()));
        }
    }
    (v, artifacts)
}

/// Every verdict triple the closure can emit satisfies this.
pub fn respects_inclusions(v: Verdicts) -> bool {
    use Verdict::*;
    let never = |outer: Verdict, inner: Verdict| outer == EvidenceViolated && inner != EvidenceViolated;
    let lifts = |inner: Verdict, outer: Verdict| inner == EvidenceSatisfied && outer != EvidenceSatisfied;
    !(never(v.c, v.b) || never(v.b, v.d) || never(v.c, v.d) || lifts(v.d, v.b) || lifts(v.b, v.c) || lifts(v.d, v.c))
}

fn dyadic_radii(limit: f64) -> Vec<f64> {
    let mut radii = Vec::new();
    let mut r = 1.0;
    while r < limit {
        radii.push(r);
        r *= 2.0;
    }
    radii
}

/// Prerequisites (Lindelöf sums, growth, angular densities), then the three
/// criteria on shared grids, then the inclusion closure.
pub fn classify(seq: &ZeroSequence, options: &ClassifyOptions) -> Result<Classification> {
    seq.ensure_origin_excluded()?;
    let limit = if seq.is_complete() {
        (2.0 * seq.max_modulus()).max(8.0)
    } else {
        seq.truncation_radius()
    };
    let x_max = options.x_max.unwrap_or(if seq.is_complete() { limit } else { limit / 4.0 });
    log::info!("classify {} with x_max = {x_max}", seq.provenance());

    let mut lindelof_radii = dyadic_radii(limit);
    lindelof_radii.push(limit);
    let lindelof = lindelof_sums(seq, &lindelof_radii).ok();
    let growth_radii = dyadic_radii(limit - 1.0);
    let growth = if growth_radii.is_empty() {
        None
    } else {
        Some(growth_check(seq, &growth_radii)?)
    };
    let angular = options
        .alphas
        .iter()
        .map(|&a| angular_density(seq, a, limit))
        .collect::<Result<Vec<_>>>()?;

    let grid = dyadic_grid(x_max, options.points_per_window)?;
    let (samples, x_max_eff, horizon) = phi_samples(seq, options.b, &grid)?;
    let c = c_report(seq, &samples, x_max_eff, horizon, options.points_per_window);
    let b = sup_report(Criterion::B, seq, &samples, x_max_eff, horizon, grid.len());
    let d = check_D(seq, &grid)?;

    let raw = Verdicts {
        c: c.verdict,
        b: b.verdict,
        d: d.verdict,
    };
    let (fin, artifacts) = apply_closure(raw);
    let adjust = |r: CriterionReport, v: Verdict| {
        if r.verdict == v {
            return r;
        }
        let witness = r.witness.or_else(|| argmax(r.windows.iter().filter_map(|w| w.witness.map(|x| (x, w.extremum)))).map(|b| b.0)).or(Some(0.0));
        let mut r = r.settle(v, witness);
        r.notes.push("verdict set by inclusion closure".into());
        r
    };
    Ok(Classification {
        provenance: seq.provenance().to_string(),
        validation: seq.validate(),
        options: options.clone(),
        x_max: x_max_eff,
        lindelof,
        growth,
        angular,
        c: adjust(c, fin.c),
        b: adjust(b, fin.b),
        d: adjust(d, fin.d),
        raw_verdicts: raw,
        artifacts,
        structure_note: "D ⊆ B ⊆ C: violations propagate C → B → D, satisfaction D → B → C".into(),
    })
}
