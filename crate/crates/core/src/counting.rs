//! Counting functions and the structural conditions on a zero set.
//!
//! `n(c, t)` counts zeros (with multiplicity) in the closed disc `|a - c| <= t`;
//! `ñ(c, t)` uses the closed square of half-side `t` instead. The integrals
//! `∫ [n(b,t) - n(x,t)] / t dt` that appear in every membership criterion are
//! evaluated exactly, one event per zero, in [`step_integral`].

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::summation::NeumaierSum;
use crate::zero_model::ZeroSequence;

/// Sorted distances from a center, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingProfile {
    center: Complex64,
    events: Vec<(f64, u64)>,
    cumulative: Vec<u64>,
    total: u64,
}

impl CountingProfile {
    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// `(distance, multiplicity)` pairs, strictly ascending in distance.
    pub fn events(&self) -> &[(f64, u64)] {
        &self.events
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// `n(center, t)`.
    pub fn count_disc(&self, t: f64) -> Result<u64> {
        if t.is_nan() || t < 0.0 {
            return Err(argument(format!("radius must be nonnegative, got {t}")));
        }
        let k = self.events.partition_point(|&(d, _)| d <= t);
        Ok(if k == 0 { 0 } else { self.cumulative[k - 1] })
    }
}

/// Counting profile of `seq` about `center`.
pub fn profile(seq: &ZeroSequence, center: Complex64) -> CountingProfile {
    let mut raw: Vec<(f64, u64)> = seq
        .zeros()
        .iter()
        .map(|z| ((z.position - center).norm(), u64::from(z.multiplicity)))
        .collect();
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut events: Vec<(f64, u64)> = Vec::with_capacity(raw.len());
    for (d, m) in raw {
        match events.last_mut() {
            Some(last) if last.0 == d => last.1 += m,
            _ => events.push((d, m)),
        }
    }
    let cumulative: Vec<u64> = events
        .iter()
        .scan(0u64, |acc, &(_, m)| {
            *acc += m;
            Some(*acc)
        })
        .collect();
    let total = cumulative.last().copied().unwrap_or(0);
    CountingProfile {
        center,
        events,
        cumulative,
        total,
    }
}

/// `ñ(c, t)`: zeros in the closed square `|Re(a-c)| <= t, |Im(a-c)| <= t`.
pub fn count_square(seq: &ZeroSequence, center: Complex64, t: f64) -> Result<u64> {
    if t.is_nan() || t < 0.0 {
        return Err(argument(format!("half-side must be nonnegative, got {t}")));
    }
    Ok(seq
        .zeros()
        .iter()
        .filter(|z| {
            let d = z.position - center;
            d.re.abs() <= t && d.im.abs() <= t
        })
        .map(|z| u64::from(z.multiplicity))
        .sum())
}

/// `Σ m |Im(1/a)|` over the finite sequence.
pub fn imaginary_inverse_sum(seq: &ZeroSequence) -> Result<f64> {
    seq.ensure_origin_excluded()?;
    Ok(crate::summation::sum(
        seq.zeros()
            .iter()
            .map(|z| f64::from(z.multiplicity) * z.position.inv().im.abs()),
    ))
}

/// Partial sums `Σ_{0<|a|<R} 1/a` at increasing radii.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LindelofTrace {
    pub radii: Vec<f64>,
    pub partial_sums: Vec<Complex64>,
    /// Zeros with `|a| == R` exactly, excluded from the partial sum.
    pub ties: Vec<u64>,
    pub converged: bool,
    pub final_value: Complex64,
    /// Largest pairwise distance of partial sums over the tail window.
    pub tail_oscillation: f64,
}

/// Relative tolerance of the tail-oscillation convergence test.
pub const LINDELOF_TOLERANCE: f64 = 1e-3;

pub fn lindelof_sums(seq: &ZeroSequence, radii: &[f64]) -> Result<LindelofTrace> {
    seq.ensure_origin_excluded()?;
    check_ascending(radii)?;
    if let (Some(&last), false) = (radii.last(), seq.is_complete()) {
        if last > seq.truncation_radius() {
            return Err(Error::Incomplete {
                requested: last,
                available: seq.truncation_radius(),
            });
        }
    }
    let zeros = seq.zeros();
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    let mut next = 0;
    let mut partial_sums = Vec::with_capacity(radii.len());
    let mut ties = Vec::with_capacity(radii.len());
    for &r in radii {
        while next < zeros.len() && zeros[next].position.norm() < r {
            let term = zeros[next].position.inv() * f64::from(zeros[next].multiplicity);
            re.add(term.re);
            im.add(term.im);
            next += 1;
        }
        let tied = zeros[next..]
            .iter()
            .take_while(|z| z.position.norm() == r)
            .map(|z| u64::from(z.multiplicity))
            .sum();
        ties.push(tied);
        partial_sums.push(Complex64::new(re.value(), im.value()));
    }
    let final_value = partial_sums.last().copied().unwrap_or_default();
    let tail_len = radii.len().div_ceil(4).max(2).min(radii.len());
    let tail = &partial_sums[partial_sums.len() - tail_len..];
    let mut tail_oscillation = 0.0f64;
    for (i, a) in tail.iter().enumerate() {
        for b in &tail[i + 1..] {
            tail_oscillation = tail_oscillation.max((a - b).norm());
        }
    }
    let converged =
        !radii.is_empty() && tail_oscillation < LINDELOF_TOLERANCE * (1.0 + final_value.norm());
    Ok(LindelofTrace {
        radii: radii.to_vec(),
        partial_sums,
        ties,
        converged,
        final_value,
        tail_oscillation,
    })
}

/// Sampled evidence for `n(0,t) = O(t)` and `n(0,t+1) - n(0,t) = o(t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// `max n(0,t)/t` over the samples.
    pub linear_ratio_sup: f64,
    /// `max [n(0,t+1) - n(0,t)]/t` over the samples.
    pub annulus_increment_max_ratio: f64,
    pub sample_radii: Vec<f64>,
    pub linear_ratios: Vec<f64>,
    pub annulus_ratios: Vec<f64>,
    /// Least-squares slope of `n(0,t)/t` against `log10 t` over the top decade.
    pub linear_trend_slope: Option<f64>,
    /// Same for the annulus ratio; negative values point towards `o(t)`.
    pub annulus_trend_slope: Option<f64>,
}

pub fn growth_check(seq: &ZeroSequence, radii: &[f64]) -> Result<GrowthEstimate> {
    let prof = profile(seq, Complex64::new(0.0, 0.0));
    for &t in radii {
        if !(t > 0.0) || !t.is_finite() {
            return Err(argument(format!("sample radii must be positive, got {t}")));
        }
        if !seq.is_complete() && t + 1.0 > seq.truncation_radius() {
            return Err(Error::Incomplete {
                requested: t + 1.0,
                available: seq.truncation_radius(),
            });
        }
    }
    let mut linear_ratios = Vec::with_capacity(radii.len());
    let mut annulus_ratios = Vec::with_capacity(radii.len());
    for &t in radii {
        let inner = prof.count_disc(t)?;
        let outer = prof.count_disc(t + 1.0)?;
        linear_ratios.push(inner as f64 / t);
        annulus_ratios.push((outer - inner) as f64 / t);
    }
    let sup = |v: &[f64]| v.iter().copied().fold(0.0, f64::max);
    let top = radii.iter().copied().fold(0.0, f64::max);
    let top_decade: Vec<usize> = (0..radii.len()).filter(|&i| radii[i] >= top / 10.0).collect();
    let trend = |values: &[f64]| {
        let xs: Vec<f64> = top_decade.iter().map(|&i| radii[i].log10()).collect();
        let ys: Vec<f64> = top_decade.iter().map(|&i| values[i]).collect();
        least_squares_slope(&xs, &ys)
    };
    Ok(GrowthEstimate {
        linear_ratio_sup: sup(&linear_ratios),
        annulus_increment_max_ratio: sup(&annulus_ratios),
        linear_trend_slope: trend(&linear_ratios),
        annulus_trend_slope: trend(&annulus_ratios),
        sample_radii: radii.to_vec(),
        linear_ratios,
        annulus_ratios,
    })
}

/// Sector densities `R⁻¹ card{0<|a|<R, |arg a| <= α}` and the mirrored count about `π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularDensity {
    pub alpha: f64,
    pub radius: f64,
    pub right: f64,
    pub left: f64,
    /// Sector zeros with `|a| == R`, excluded from both counts.
    pub ties: u64,
}

pub fn angular_density(seq: &ZeroSequence, alpha: f64, radius: f64) -> Result<AngularDensity> {
    if !(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2) {
        return Err(argument(format!("alpha must lie in (0, π/2], got {alpha}")));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(argument(format!("radius must be positive, got {radius}")));
    }
    if !seq.is_complete() && radius > seq.truncation_radius() {
        return Err(Error::Incomplete {
            requested: radius,
            available: seq.truncation_radius(),
        });
    }
    let (mut right, mut left, mut ties) = (0u64, 0u64, 0u64);
    for z in seq.zeros() {
        let r = z.position.norm();
        if r == 0.0 || r > radius {
            continue;
        }
        let in_right = z.position.arg().abs() <= alpha;
        let in_left = (-z.position).arg().abs() <= alpha;
        let m = u64::from(z.multiplicity);
        if r == radius {
            if in_right || in_left {
                ties += m;
            }
            continue;
        }
        if in_right {
            right += m;
        }
        if in_left {
            left += m;
        }
    }
    Ok(AngularDensity {
        alpha,
        radius,
        right: right as f64 / radius,
        left: left as f64 / radius,
        ties,
    })
}

/// `∫_{t_lo}^{t_hi} [n(b,t) - n(x,t)] / t dt`, exactly.
///
/// Each zero `a` enters `n(b,t)` at `d_b = |a-b|` and `n(x,t)` at
/// `d_x = |a-x|`, so it contributes `m · (log clamp(d_x) - log clamp(d_b))` with
/// distances clamped to `[t_lo, t_hi]`. `t_hi = ∞` integrates the finite
/// zero list over the whole half-line.
pub fn step_integral(seq: &ZeroSequence, b: Complex64, x: Complex64, t_lo: f64, t_hi: f64) -> Result<f64> {
    if t_lo.is_nan() || t_lo < 0.0 || !t_lo.is_finite() || t_hi.is_nan() || t_hi <= t_lo {
        return Err(argument(format!("need 0 <= t_lo < t_hi, got [{t_lo}, {t_hi}]")));
    }
    if t_hi.is_finite() {
        if let Some(horizon) = seq.horizon_from(b.norm().max(x.norm())) {
            if t_hi > horizon {
                return Err(Error::Incomplete {
                    requested: t_hi,
                    available: horizon,
                });
            }
        }
    }
    if b == x {
        return Ok(0.0);
    }
    if t_lo == 0.0 {
        for point in [b, x] {
            if seq.contains(point) {
                return Err(Error::Divergent { point, zero: point });
            }
        }
    }
    Ok(event_sum(seq, b, x, t_lo, t_hi))
}

/// Unchecked event sweep behind [`step_integral`]; zeros at distance 0 from a
/// center with `t_lo = 0` yield infinities.
pub(crate) fn event_sum(seq: &ZeroSequence, b: Complex64, x: Complex64, t_lo: f64, t_hi: f64) -> f64 {
    let clamp = |d: f64| d.max(t_lo).min(t_hi);
    let mut acc = NeumaierSum::new();
    for z in seq.zeros() {
        let db = clamp((z.position - b).norm());
        let dx = clamp((z.position - x).norm());
        if db != dx {
            acc.add(f64::from(z.multiplicity) * (dx.ln() - db.ln()));
        }
    }
    acc.value()
}

pub(crate) fn check_ascending(values: &[f64]) -> Result<()> {
    for (i, w) in values.windows(2).enumerate() {
        if !(w[0] < w[1]) {
            return Err(argument(format!("values must be strictly ascending (index {})", i + 1)));
        }
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(argument("values must be finite"));
    }
    Ok(())
}

pub(crate) fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len();
    if n < 2 {
        return None;
    }
    let mx = xs.iter().sum::<f64>() / n as f64;
    let my = ys.iter().sum::<f64>() / n as f64;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_model::Zero;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn three() -> ZeroSequence {
        ZeroSequence::from_points([c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 2.0)], 0.0).unwrap()
    }

    #[test]
    fn profile_merges_equal_distances() {
        let p = profile(&three(), c(0.0, 0.0));
        assert_eq!(p.events(), &[(1.0, 2), (2.0, 1)]);
        assert_eq!(p.total(), 3);
        assert_eq!(p.count_disc(1.5).unwrap(), 2);
    }

    #[test]
    fn profile_of_multiple_zero_at_center() {
        let seq = ZeroSequence::new([Zero::new(c(1.0, 0.0), 2)], 0.0).unwrap();
        let p = profile(&seq, c(1.0, 0.0));
        assert_eq!(p.events(), &[(0.0, 2)]);
        assert_eq!(p.count_disc(0.0).unwrap(), 2);
    }

    #[test]
    fn empty_profile_counts_nothing() {
        let p = profile(&ZeroSequence::empty(), c(3.0, 1.0));
        for t in [0.0, 1.0, 1e9] {
            assert_eq!(p.count_disc(t).unwrap(), 0);
        }
    }

    #[test]
    fn disc_counts_are_closed() {
        let p = profile(&three(), c(0.0, 0.0));
        assert_eq!(p.count_disc(1.0).unwrap(), 2);
        assert_eq!(p.count_disc(0.99).unwrap(), 0);
        assert_eq!(p.count_disc(2.0).unwrap(), 3);
        assert!(p.count_disc(-1.0).is_err());
    }

    #[test]
    fn square_counts() {
        assert_eq!(count_square(&three(), c(0.0, 0.0), 1.0).unwrap(), 2);
        let corner = ZeroSequence::from_points([c(1.0, 1.0)], 0.0).unwrap();
        assert_eq!(count_square(&corner, c(0.0, 0.0), 1.0).unwrap(), 1);
        assert_eq!(count_square(&three(), c(0.0, 0.0), 2.0).unwrap(), 3);
        assert!(count_square(&three(), c(0.0, 0.0), -0.5).is_err());
    }

    #[test]
    fn imaginary_inverse_sums() {
        let real = ZeroSequence::from_reals([1.0, -1.0], 0.0).unwrap();
        assert_eq!(imaginary_inverse_sum(&real).unwrap(), 0.0);
        let i = ZeroSequence::from_points([c(0.0, 1.0)], 0.0).unwrap();
        assert_eq!(imaginary_inverse_sum(&i).unwrap(), 1.0);
        let diag = ZeroSequence::from_points([c(1.0, 1.0)], 0.0).unwrap();
        // 1/(p+iq) = (p-iq)/(p²+q²), written out independently of Complex::inv
        let (p, q) = (1.0f64, 1.0f64);
        let oracle = (-q / (p * p + q * q)).abs();
        assert!((imaginary_inverse_sum(&diag).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 0.5).abs() < 1e-15);
        let origin = ZeroSequence::from_points([c(0.0, 0.0)], 0.0).unwrap();
        assert!(matches!(imaginary_inverse_sum(&origin), Err(Error::OriginZero)));
    }

    #[test]
    fn lindelof_symmetric_vanishes() {
        let seq = ZeroSequence::from_reals([1.0, -1.0, 2.0, -2.0, 3.0, -3.0], 10.0).unwrap();
        let trace = lindelof_sums(&seq, &[1.5, 2.5, 3.5, 5.0]).unwrap();
        assert!(trace.partial_sums.iter().all(|s| s.norm() == 0.0));
        assert!(trace.converged);
    }

    #[test]
    fn lindelof_geometric_partial_sums() {
        let seq = ZeroSequence::from_reals([1.0, 2.0, 4.0, 8.0], 0.0).unwrap();
        let trace = lindelof_sums(&seq, &[1.5, 3.0, 5.0, 9.0]).unwrap();
        // geometric series 1 + 1/2 + 1/4 + ...
        let oracle: Vec<f64> = (1..=4).map(|k| (0..k).map(|j| 0.5f64.powi(j)).sum()).collect();
        for (s, o) in trace.partial_sums.iter().zip(&oracle) {
            assert!((s.re - o).abs() < 1e-15 && s.im == 0.0);
        }
        assert_eq!(oracle, vec![1.0, 1.5, 1.75, 1.875]);
        assert!(!trace.converged);
        assert_eq!(trace.final_value, c(1.875, 0.0));
    }

    #[test]
    fn lindelof_strict_inequality_and_ties() {
        let seq = ZeroSequence::from_reals([1.0, 2.0], 0.0).unwrap();
        let trace = lindelof_sums(&seq, &[1.0, 2.0]).unwrap();
        assert_eq!(trace.partial_sums[0], c(0.0, 0.0));
        assert_eq!(trace.ties, vec![1, 1]);
        assert_eq!(trace.partial_sums[1], c(1.0, 0.0));
    }

    #[test]
    fn lindelof_errors() {
        let seq = ZeroSequence::from_reals([1.0], 5.0).unwrap();
        assert!(lindelof_sums(&seq, &[2.0, 1.0]).is_err());
        assert!(lindelof_sums(&seq, &[6.0]).is_err());
        let origin = ZeroSequence::from_reals([0.0], 0.0).unwrap();
        assert!(lindelof_sums(&origin, &[1.0]).is_err());
    }

    #[test]
    fn growth_on_lattice() {
        let seq = crate::catalog::integer_lattice(1001.0).unwrap();
        let radii: Vec<f64> = (1..=999).map(f64::from).collect();
        let g = growth_check(&seq, &radii).unwrap();
        // n(0,t) = 2⌊t⌋
        assert!((g.linear_ratio_sup - 2.0).abs() < 0.02);
        assert!(g.annulus_ratios.iter().zip(&radii).all(|(r, t)| (r - 2.0 / t).abs() < 1e-12));
        assert!(g.annulus_trend_slope.unwrap() < 0.0);
    }

    #[test]
    fn growth_on_empty_and_squares() {
        let g = growth_check(&ZeroSequence::empty(), &[1.0, 10.0]).unwrap();
        assert_eq!(g.linear_ratio_sup, 0.0);
        assert_eq!(g.annulus_increment_max_ratio, 0.0);

        let squares = ZeroSequence::from_reals((1..=100).map(|k| f64::from(k * k)), 0.0).unwrap();
        let radii: Vec<f64> = (1..=9999).map(f64::from).collect();
        let g = growth_check(&squares, &radii).unwrap();
        let p = profile(&squares, c(0.0, 0.0));
        for &t in &radii {
            assert!(p.count_disc(t + 1.0).unwrap() - p.count_disc(t).unwrap() <= 1);
        }
        assert!(g.annulus_increment_max_ratio <= 1.0);
        let tail_max = g.annulus_ratios[5000..].iter().copied().fold(0.0, f64::max);
        assert!(tail_max < 2e-4);
    }

    #[test]
    fn growth_beyond_completeness_fails() {
        let seq = crate::catalog::integer_lattice(10.0).unwrap();
        assert!(growth_check(&seq, &[9.5]).is_err());
        assert!(growth_check(&seq, &[0.0]).is_err());
    }

    #[test]
    fn angular_density_examples() {
        let lattice = crate::catalog::integer_lattice(1000.0).unwrap();
        let d = angular_density(&lattice, std::f64::consts::FRAC_PI_4, 1000.0).unwrap();
        assert_eq!((d.right, d.left), (0.999, 0.999));

        let axis = ZeroSequence::from_points((1..=100).map(|k| c(0.0, f64::from(k))), 0.0).unwrap();
        let d = angular_density(&axis, std::f64::consts::FRAC_PI_4, 200.0).unwrap();
        assert_eq!((d.right, d.left), (0.0, 0.0));

        let d = angular_density(&ZeroSequence::empty(), 1.0, 5.0).unwrap();
        assert_eq!((d.right, d.left), (0.0, 0.0));
        assert!(angular_density(&axis, 0.0, 5.0).is_err());
        assert!(angular_density(&axis, 2.0, 5.0).is_err());
    }

    #[test]
    fn angular_density_excludes_ties() {
        let seq = ZeroSequence::from_reals([1.0, 2.0, -2.0], 0.0).unwrap();
        let d = angular_density(&seq, 0.5, 2.0).unwrap();
        assert_eq!(d.right, 0.5);
        assert_eq!(d.left, 0.0);
        assert_eq!(d.ties, 2);
    }

    #[test]
    fn step_integral_examples() {
        let seq = three();
        assert_eq!(step_integral(&seq, c(0.5, 0.5), c(0.5, 0.5), 0.0, f64::INFINITY).unwrap(), 0.0);

        let i = ZeroSequence::from_points([c(0.0, 1.0)], 0.0).unwrap();
        let v = step_integral(&i, c(0.0, 0.0), c(1.0, 0.0), 0.0, f64::INFINITY).unwrap();
        assert!((v - 0.5 * 2f64.ln()).abs() < 1e-15);

        let pm = ZeroSequence::from_reals([1.0, -1.0], 0.0).unwrap();
        let v = step_integral(&pm, c(0.0, 0.0), c(2.0, 0.0), 0.0, f64::INFINITY).unwrap();
        assert!((v - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn step_integral_errors() {
        let pm = ZeroSequence::from_reals([1.0, -1.0], 0.0).unwrap();
        match step_integral(&pm, c(0.0, 0.0), c(1.0, 0.0), 0.0, 10.0) {
            Err(Error::Divergent { zero, .. }) => assert_eq!(zero, c(1.0, 0.0)),
            other => panic!("unexpected {other:?}"),
        }
        // away from t = 0 the integrand is bounded
        assert!(step_integral(&pm, c(0.0, 0.0), c(1.0, 0.0), 0.5, 10.0).is_ok());
        assert!(step_integral(&pm, c(0.0, 0.0), c(2.0, 0.0), 2.0, 1.0).is_err());
        let truncated = ZeroSequence::from_reals([1.0], 10.0).unwrap();
        assert!(matches!(
            step_integral(&truncated, c(0.0, 0.0), c(2.0, 0.0), 0.0, 9.0),
            Err(Error::Incomplete { .. })
        ));
        assert!(step_integral(&truncated, c(0.0, 0.0), c(2.0, 0.0), 0.0, 8.0).is_ok());
    }

    fn arb_seq() -> impl Strategy<Value = ZeroSequence> {
        prop::collection::vec((-20.0..20.0f64, -20.0..20.0f64, 1u32..4), 0..30).prop_map(|pts| {
            ZeroSequence::new(pts.into_iter().map(|(re, im, m)| Zero::new(c(re, im), m)), 0.0).unwrap()
        })
    }

    fn closed_form(seq: &ZeroSequence, b: Complex64, x: Complex64) -> f64 {
        seq.zeros()
            .iter()
            .map(|z| f64::from(z.multiplicity) * ((z.position - x).norm().ln() - (z.position - b).norm().ln()))
            .sum()
    }

    proptest! {
        #[test]
        fn full_range_matches_closed_form(seq in arb_seq(), b in (-5.0..5.0f64, -5.0..5.0f64), x in (-5.0..5.0f64, -5.0..5.0f64)) {
            let (b, x) = (c(b.0, b.1), c(x.0, x.1));
            prop_assume!(!seq.contains(b) && !seq.contains(x));
            let v = step_integral(&seq, b, x, 0.0, f64::INFINITY).unwrap();
            let w = closed_form(&seq, b, x);
            let scale: f64 = seq.zeros().iter().map(|z| f64::from(z.multiplicity) * ((z.position - x).norm().ln().abs() + (z.position - b).norm().ln().abs())).sum();
            prop_assert!((v - w).abs() <= 1e-12 * (1.0 + scale));
        }

        #[test]
        fn antisymmetric(seq in arb_seq(), b in (-5.0..5.0f64, 0.0..5.0f64), x in (-5.0..5.0f64, 0.0..5.0f64), lo in 0.1..3.0f64, w in 0.1..50.0f64) {
            let (b, x) = (c(b.0, b.1), c(x.0, x.1));
            let fwd = step_integral(&seq, b, x, lo, lo + w).unwrap();
            let back = step_integral(&seq, x, b, lo, lo + w).unwrap();
            prop_assert_eq!(fwd, -back);
        }

        #[test]
        fn additive_in_range(seq in arb_seq(), x in (-5.0..5.0f64, -5.0..5.0f64), t1 in 0.1..5.0f64, d1 in 0.1..20.0f64, d2 in 0.1..20.0f64) {
            let (b, x) = (c(0.0, 0.0), c(x.0, x.1));
            let (t2, t3) = (t1 + d1, t1 + d1 + d2);
            let whole = step_integral(&seq, b, x, t1, t3).unwrap();
            let parts = step_integral(&seq, b, x, t1, t2).unwrap() + step_integral(&seq, b, x, t2, t3).unwrap();
            let scale: f64 = 2.0 * seq.total_multiplicity() as f64 * (t3 / t1).ln();
            prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + scale));
        }

        #[test]
        fn counts_are_monotone_and_nested(seq in arb_seq(), center in (-5.0..5.0f64, -5.0..5.0f64), t in 0.0..30.0f64, dt in 0.0..5.0f64) {
            let center = c(center.0, center.1);
            let p = profile(&seq, center);
            prop_assert!(p.count_disc(t).unwrap() <= p.count_disc(t + dt).unwrap());
            prop_assert!(count_square(&seq, center, t).unwrap() <= count_square(&seq, center, t + dt).unwrap());
            let sq = count_square(&seq, center, t).unwrap();
            prop_assert!(sq >= p.count_disc(t).unwrap());
            prop_assert!(sq <= p.count_disc(t * std::f64::consts::SQRT_2).unwrap());
        }

        #[test]
        fn counts_are_right_continuous(seq in arb_seq(), center in (-5.0..5.0f64, -5.0..5.0f64)) {
            let center = c(center.0, center.1);
            let p = profile(&seq, center);
            for &(d, _) in p.events() {
                prop_assert_eq!(p.count_disc(d).unwrap(), p.count_disc(d * (1.0 + 1e-15) + 1e-300).unwrap());
                if d > 0.0 {
                    prop_assert!(p.count_disc(d).unwrap() > p.count_disc(d * (1.0 - 1e-12)).unwrap());
                }
            }
        }

        #[test]
        fn growth_estimates_survive_small_shifts(s in -0.5..0.5f64) {
            let lattice = crate::catalog::integer_lattice(2000.0).unwrap();
            let shifted = lattice.shift_origin(c(s, 0.0)).unwrap();
            let radii: Vec<f64> = (1..=18).map(|k| f64::from(k) * 100.0).collect();
            let a = growth_check(&lattice, &radii).unwrap();
            let b = growth_check(&shifted, &radii).unwrap();
            prop_assert!((a.linear_ratio_sup - b.linear_ratio_sup).abs() < 0.02);
            prop_assert!((a.annulus_increment_max_ratio - b.annulus_increment_max_ratio).abs() < 0.02);
        }
    }
}
