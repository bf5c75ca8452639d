//! Canonical products `g(z) = lim ∏_{|a|<R} (1 - z/a)` and the identities
//! tying `log|g|` to the counting functions.
//!
//! Products are accumulated in log space: log-magnitudes and raw arguments
//! are summed with compensation and the argument is normalised once at the
//! end. Factors that are exactly negative reals are tracked by parity, so a
//! real sequence evaluated at a real point has argument exactly `0` or `π`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::event_sum;
use crate::error::{argument, Error, Result};
use crate::summation::NeumaierSum;
use crate::zero_model::ZeroSequence;

/// A complex number stored as `(ln|w|, arg w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogComplex {
    pub log_magnitude: f64,
    /// In `(-π, π]`; `0` when the value is exactly zero.
    pub argument: f64,
}

impl LogComplex {
    pub const ONE: Self = Self {
        log_magnitude: 0.0,
        argument: 0.0,
    };

    pub const ZERO: Self = Self {
        log_magnitude: f64::NEG_INFINITY,
        argument: 0.0,
    };

    pub fn new(log_magnitude: f64, argument: f64) -> Self {
        if log_magnitude == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        Self {
            log_magnitude,
            argument: normalize_angle(argument),
        }
    }

    pub fn from_complex(w: Complex64) -> Self {
        if w.re == 0.0 && w.im == 0.0 {
            Self::ZERO
        } else {
            Self::new(w.norm().ln(), w.arg())
        }
    }

    /// Back to a plain complex number; overflows for huge magnitudes.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.log_magnitude.exp(), self.argument)
    }

    pub fn is_zero(self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }
}

impl std::ops::Mul for LogComplex {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::ZERO;
        }
        Self::new(self.log_magnitude + rhs.log_magnitude, self.argument + rhs.argument)
    }
}

/// Maps an angle to `(-π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    if !theta.is_finite() {
        return theta;
    }
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailFlag {
    /// Every zero of a complete sequence lies inside the radius used.
    Complete,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductEvaluation {
    pub value: LogComplex,
    pub radius_used: f64,
    /// Zeros (with multiplicity) inside `radius_used`.
    pub factor_count: u64,
    pub tail_flag: TailFlag,
    /// Smallest `|1 - z/a|` among the factors; flags near-zeros.
    pub min_factor_magnitude: f64,
    /// First-order tail `-z Σ_{|a|>=R} 1/a` over known zeros outside the radius.
    pub tail_estimate: Option<Complex64>,
    pub tail_applied: bool,
}

/// `∏_{|a|<R} (1 - z/a)^m`, report-only tail.
pub fn evaluate_product(seq: &ZeroSequence, z: Complex64, radius: f64) -> Result<ProductEvaluation> {
    evaluate_product_with(seq, z, radius, false)
}

/// As [`evaluate_product`]; with `tail_correct` the first-order tail estimate
/// is folded into the value.
pub fn evaluate_product_with(
    seq: &ZeroSequence,
    z: Complex64,
    radius: f64,
    tail_correct: bool,
) -> Result<ProductEvaluation> {
    seq.ensure_origin_excluded()?;
    if radius.is_nan() || radius <= 0.0 {
        return Err(argument(format!("radius must be positive, got {radius}")));
    }
    if !seq.is_complete() && radius > seq.truncation_radius() {
        return Err(Error::Incomplete {
            requested: radius,
            available: seq.truncation_radius(),
        });
    }
    let mut log_mag = NeumaierSum::new();
    let mut arg = NeumaierSum::new();
    let mut negative_factors = 0u64;
    let mut factor_count = 0u64;
    let mut exact_zero = false;
    let mut min_factor = f64::INFINITY;
    let mut tail = Complex64::new(0.0, 0.0);
    let mut has_tail = false;
    for zero in seq.zeros() {
        let a = zero.position;
        let m = zero.multiplicity;
        if a.norm() >= radius {
            tail += a.inv() * f64::from(m);
            has_tail = true;
            continue;
        }
        factor_count += u64::from(m);
        if a == z {
            exact_zero = true;
            min_factor = 0.0;
            continue;
        }
        let factor = (a - z) / a;
        let magnitude = (a - z).norm() / a.norm();
        min_factor = min_factor.min(magnitude);
        let weight = f64::from(m);
        log_mag.add(weight * magnitude.ln());
        if factor.im == 0.0 {
            if factor.re < 0.0 {
                negative_factors += u64::from(m);
            }
        } else {
            arg.add(weight * factor.arg());
        }
    }
    let tail_estimate = has_tail.then(|| -z * tail);
    let tail_flag = if seq.is_complete() && !has_tail {
        TailFlag::Complete
    } else {
        TailFlag::Truncated
    };
    let value = if exact_zero {
        LogComplex::ZERO
    } else {
        let mut lm = log_mag.value();
        let mut theta = arg.value();
        if tail_correct {
            if let Some(t) = tail_estimate {
                lm += t.re;
                theta += t.im;
            }
        }
        if negative_factors % 2 == 1 {
            theta = if theta == 0.0 { PI } else { theta + PI };
        }
        LogComplex::new(lm, theta)
    };
    Ok(ProductEvaluation {
        value,
        radius_used: radius,
        factor_count,
        tail_flag,
        min_factor_magnitude: min_factor,
        tail_estimate,
        tail_applied: tail_correct && tail_estimate.is_some(),
    })
}

/// `ln|g(w)|` over every known zero, together with the distance from `w` to
/// the nearest zero.
pub(crate) fn log_modulus_at(seq: &ZeroSequence, w: Complex64) -> (f64, f64) {
    let mut acc = NeumaierSum::new();
    let mut nearest = f64::INFINITY;
    for zero in seq.zeros() {
        let d = (zero.position - w).norm();
        nearest = nearest.min(d);
        acc.add(f64::from(zero.multiplicity) * (d / zero.position.norm()).ln());
    }
    (acc.value(), nearest)
}

/// `log|g(z)| = ∫_0^∞ [n(0,t) - n(z,t)] / t dt`, evaluated event-wise.
pub fn log_modulus_via_counting(seq: &ZeroSequence, z: Complex64) -> Result<f64> {
    seq.ensure_origin_excluded()?;
    if seq.contains(z) {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(event_sum(seq, Complex64::new(0.0, 0.0), z, 0.0, f64::INFINITY))
}

/// `log|g^{(l)}(z0) / l!|` at a zero of multiplicity `l`, from
/// `∫_1^∞ [n(0,t)-n(z0,t)]/t dt + ∫_0^1 [n(0,t)-n(z0,t)+l]/t dt`.
pub fn derivative_at_multiple_zero(seq: &ZeroSequence, z0: Complex64) -> Result<f64> {
    seq.ensure_origin_excluded()?;
    let l = seq.multiplicity_at(z0);
    if l == 0 {
        return Err(Error::NotAZero(z0));
    }
    let origin = Complex64::new(0.0, 0.0);
    let outer = event_sum(seq, origin, z0, 1.0, f64::INFINITY);
    // Over (0, 1] the +l cancels the zero at z0 inside n(z0, t); that zero
    // still enters n(0, t) once t >= |z0|.
    let mut inner = NeumaierSum::new();
    for zero in seq.zeros() {
        let m = f64::from(zero.multiplicity);
        if zero.position == z0 {
            inner.add(-m * z0.norm().min(1.0).ln());
            continue;
        }
        let db = zero.position.norm().min(1.0);
        let dx = (zero.position - z0).norm().min(1.0);
        if db != dx {
            inner.add(m * (dx.ln() - db.ln()));
        }
    }
    Ok(outer + inner.value())
}

/// Minimum node count accepted by the circle quadrature.
pub const MIN_NODES: usize = 16;

/// Distance below which a quadrature node counts as sitting on a zero.
pub const NODE_CLEARANCE: f64 = 1e-9;

/// Trapezoidal mean of `log|g|` over the circle `|w - z| = radius`.
pub fn circle_average(seq: &ZeroSequence, z: Complex64, radius: f64, nodes: usize) -> Result<f64> {
    seq.ensure_origin_excluded()?;
    if nodes < MIN_NODES || !nodes.is_power_of_two() {
        return Err(argument(format!(
            "node count must be a power of two >= {MIN_NODES}, got {nodes}"
        )));
    }
    if radius.is_nan() || radius <= 0.0 || !radius.is_finite() {
        return Err(argument(format!("radius must be positive, got {radius}")));
    }
    let step = 2.0 * PI / nodes as f64;
    let sweep = |offset: f64| -> (Vec<f64>, f64) {
        let evaluated: Vec<(f64, f64)> = (0..nodes)
            .into_par_iter()
            .map(|j| {
                let theta = offset + step * j as f64;
                log_modulus_at(seq, z + Complex64::from_polar(radius, theta))
            })
            .collect();
        let nearest = evaluated.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
        (evaluated.into_iter().map(|e| e.0).collect(), nearest)
    };
    let (mut values, nearest) = sweep(0.0);
    if nearest < NODE_CLEARANCE {
        values = sweep(0.5 * step).0;
    }
    Ok(crate::summation::sum(values) / nodes as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JensenCheck {
    /// Circle average of `log|g|` over `|w - z| = 1`.
    pub left: f64,
    /// `∫_1^∞ [n(0,t)-n(z,t)]/t dt + ∫_0^1 n(0,t)/t dt`.
    pub right: f64,
    pub residual: f64,
}

pub fn jensen_identity_check(seq: &ZeroSequence, z: Complex64, nodes: usize) -> Result<JensenCheck> {
    let left = circle_average(seq, z, 1.0, nodes)?;
    let origin = Complex64::new(0.0, 0.0);
    let outer = event_sum(seq, origin, z, 1.0, f64::INFINITY);
    let inner = crate::summation::sum(
        seq.zeros()
            .iter()
            .filter(|a| a.position.norm() < 1.0)
            .map(|a| -f64::from(a.multiplicity) * a.position.norm().ln()),
    );
    let right = outer + inner;
    Ok(JensenCheck {
        left,
        right,
        residual: (left - right).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zero_model::Zero;
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reals(xs: &[f64]) -> ZeroSequence {
        ZeroSequence::from_reals(xs.iter().copied(), 0.0).unwrap()
    }

    /// `g^{(l)}(z0)/l!` from an N-point circular difference stencil of the
    /// product, `(1/N) Σ g(z0 + ρω^j) ρ^{-l} ω^{-lj}`.
    fn stencil_coefficient(seq: &ZeroSequence, z0: Complex64, l: u32, rho: f64) -> Complex64 {
        let n = 64;
        let mut acc = c(0.0, 0.0);
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            let w = z0 + Complex64::from_polar(rho, theta);
            let g = evaluate_product(seq, w, f64::INFINITY).unwrap().value.to_complex();
            acc += g * Complex64::from_polar(rho.powi(-(l as i32)), -(l as f64) * theta);
        }
        acc / n as f64
    }

    #[test]
    fn angle_normalization() {
        assert_eq!(normalize_angle(PI), PI);
        assert_eq!(normalize_angle(-PI), PI);
        assert!((normalize_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((normalize_angle(-0.5) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn log_complex_multiplies() {
        let a = LogComplex::from_complex(c(0.0, 2.0));
        let b = LogComplex::from_complex(c(0.0, 3.0));
        let p = (a * b).to_complex();
        assert!((p - c(-6.0, 0.0)).norm() < 1e-12);
        assert!((a * LogComplex::ZERO).is_zero());
    }

    #[test]
    fn two_factor_product() {
        let e = evaluate_product(&reals(&[1.0, -1.0]), c(2.0, 0.0), 10.0).unwrap();
        assert!((e.value.log_magnitude - 3f64.ln()).abs() < 1e-15);
        assert_eq!(e.value.argument, PI);
        assert_eq!(e.factor_count, 2);
    }

    #[test]
    fn product_at_origin_is_one() {
        let seq = ZeroSequence::from_points([c(1.0, 2.0), c(-3.0, 0.5), c(0.0, -7.0)], 0.0).unwrap();
        let e = evaluate_product(&seq, c(0.0, 0.0), f64::INFINITY).unwrap();
        assert_eq!(e.value, LogComplex::ONE);
        assert_eq!(e.tail_flag, TailFlag::Complete);
    }

    #[test]
    fn product_at_zero_is_exact_zero() {
        let e = evaluate_product(&reals(&[1.0]), c(1.0, 0.0), 5.0).unwrap();
        assert_eq!(e.value.log_magnitude, f64::NEG_INFINITY);
        assert_eq!(e.value.argument, 0.0);
        assert_eq!(e.min_factor_magnitude, 0.0);
    }

    #[test]
    fn product_truncation_is_strict_and_reports_tail() {
        let seq = reals(&[1.0, 2.0, 4.0]);
        let e = evaluate_product(&seq, c(0.5, 0.0), 2.0).unwrap();
        assert_eq!(e.factor_count, 1);
        assert_eq!(e.tail_flag, TailFlag::Truncated);
        let tail = e.tail_estimate.unwrap();
        assert!((tail - c(-0.5 * 0.75, 0.0)).norm() < 1e-15);
        assert!(!e.tail_applied);
        let corrected = evaluate_product_with(&seq, c(0.5, 0.0), 2.0, true).unwrap();
        assert!(corrected.tail_applied);
        assert!((corrected.value.log_magnitude - (e.value.log_magnitude - 0.375)).abs() < 1e-15);
    }

    #[test]
    fn product_rejects_origin_zero_and_incomplete_radius() {
        assert!(matches!(
            evaluate_product(&reals(&[0.0, 1.0]), c(2.0, 0.0), 10.0),
            Err(Error::OriginZero)
        ));
        let seq = ZeroSequence::from_reals([1.0], 5.0).unwrap();
        assert!(evaluate_product(&seq, c(2.0, 0.0), 6.0).is_err());
    }

    #[test]
    fn million_factor_product_stays_finite() {
        let seq = ZeroSequence::from_reals((1..=1_000_000).map(|k| 1.0 / f64::from(k)), 0.0).unwrap();
        let e = evaluate_product(&seq, c(3.5, 0.0), f64::INFINITY).unwrap();
        assert!(e.value.log_magnitude.is_finite());
        assert!(e.value.log_magnitude > 700.0);
    }

    #[test]
    fn counting_side_examples() {
        let pm = reals(&[1.0, -1.0]);
        let v = log_modulus_via_counting(&pm, c(2.0, 0.0)).unwrap();
        let p = evaluate_product(&pm, c(2.0, 0.0), f64::INFINITY).unwrap();
        assert!((v - p.value.log_magnitude).abs() < 1e-15);

        let i = ZeroSequence::from_points([c(0.0, 1.0)], 0.0).unwrap();
        let v = log_modulus_via_counting(&i, c(1.0, 0.0)).unwrap();
        assert!((v - 0.5 * LN_2).abs() < 1e-15);
        assert!(((c(1.0, 0.0) - c(1.0, 0.0) / c(0.0, 1.0)).norm().ln() - v).abs() < 1e-15);

        assert_eq!(log_modulus_via_counting(&i, c(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(log_modulus_via_counting(&i, c(0.0, 1.0)).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn double_zero_derivative() {
        let seq = ZeroSequence::new([Zero::new(c(1.0, 0.0), 2), Zero::simple(-1.0, 0.0)], 0.0).unwrap();
        let v = derivative_at_multiple_zero(&seq, c(1.0, 0.0)).unwrap();
        assert_eq!(v, LN_2);
        let oracle = stencil_coefficient(&seq, c(1.0, 0.0), 2, 0.5);
        assert!((oracle.norm().ln() - v).abs() < 1e-6);
    }

    #[test]
    fn simple_zero_derivative() {
        let v = derivative_at_multiple_zero(&reals(&[1.0]), c(1.0, 0.0)).unwrap();
        assert_eq!(v, 0.0);

        let seq = reals(&[1.0, 3.0]);
        let v = derivative_at_multiple_zero(&seq, c(1.0, 0.0)).unwrap();
        // g = (1 - z)(1 - z/3), g'(1) = -(1 - 1/3)
        assert!((v - (2.0f64 / 3.0).ln()).abs() < 1e-15);

        assert!(matches!(
            derivative_at_multiple_zero(&seq, c(2.0, 0.0)),
            Err(Error::NotAZero(_))
        ));
    }

    #[test]
    fn circle_average_examples() {
        let v = circle_average(&reals(&[2.0]), c(0.0, 0.0), 1.0, 4096).unwrap();
        assert!(v.abs() < 1e-12);
        let v = circle_average(&reals(&[0.5]), c(0.0, 0.0), 1.0, 4096).unwrap();
        assert!((v - LN_2).abs() < 1e-12);
        assert_eq!(circle_average(&ZeroSequence::empty(), c(1.0, 1.0), 2.0, 16).unwrap(), 0.0);
        assert!(circle_average(&reals(&[2.0]), c(0.0, 0.0), 1.0, 8).is_err());
        assert!(circle_average(&reals(&[2.0]), c(0.0, 0.0), 1.0, 100).is_err());
        assert!(circle_average(&reals(&[2.0]), c(0.0, 0.0), 0.0, 16).is_err());
    }

    #[test]
    fn circle_average_avoids_nodes_on_zeros() {
        // zero exactly at the θ = 0 node
        let seq = reals(&[1.0, 3.0]);
        let v = circle_average(&seq, c(0.0, 0.0), 1.0, 1 << 14).unwrap();
        assert!(v.is_finite());
        // Jensen: log|g(0)| + ∫ over the zero on the circle contributes 0
        assert!(v.abs() < 1e-3);
    }

    #[test]
    fn jensen_examples() {
        let check = jensen_identity_check(&reals(&[2.0]), c(0.0, 0.0), 4096).unwrap();
        assert!(check.residual < 1e-6 && check.right.abs() < 1e-15);
        let check = jensen_identity_check(&reals(&[0.5]), c(0.0, 0.0), 4096).unwrap();
        assert!(check.residual < 1e-6);
        assert!((check.right - LN_2).abs() < 1e-15);
    }

    #[test]
    fn jensen_random_fifty_zero_sequence() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let z = c(3.0, 1.0);
        let mut pts = Vec::new();
        while pts.len() < 50 {
            let a = c(rng.gen_range(-20.0..20.0), rng.gen_range(-20.0..20.0));
            if a.norm() < 20.0 && a.norm() > 0.05 && ((a - z).norm() - 1.0).abs() >= 0.05 {
                pts.push(a);
            }
        }
        let seq = ZeroSequence::from_points(pts, 0.0).unwrap();
        let check = jensen_identity_check(&seq, z, 1 << 16).unwrap();
        assert!(check.residual < 1e-5, "{check:?}");
    }

    #[test]
    fn jensen_residual_shrinks_under_doubling() {
        let seq = ZeroSequence::from_points([c(0.3, 0.2), c(2.0, 0.5), c(-1.0, 1.5)], 0.0).unwrap();
        let z = c(0.5, 0.0);
        let r16 = jensen_identity_check(&seq, z, 16).unwrap().residual;
        let r32 = jensen_identity_check(&seq, z, 32).unwrap().residual;
        let r64 = jensen_identity_check(&seq, z, 64).unwrap().residual;
        assert!(r32 <= r16 / 3.0 || r32 < 1e-12);
        assert!(r64 <= r32 / 3.0 || r64 < 1e-12);
    }

    #[test]
    fn real_sequences_have_real_products_on_the_axis() {
        let seq = crate::catalog::integer_lattice(500.0).unwrap();
        for x in [0.25, 1.5, 2.5, 7.1, 100.3, -3.7, -250.5] {
            let e = evaluate_product(&seq, c(x, 0.0), 500.0).unwrap();
            assert!(e.value.argument == 0.0 || e.value.argument == PI, "{x}: {}", e.value.argument);
        }
        let sign = |x: f64| evaluate_product(&seq, c(x, 0.0), 500.0).unwrap().value.argument;
        // sin(πx)/(πx) changes sign at every integer
        assert_eq!(sign(0.5), 0.0);
        assert_eq!(sign(1.5), PI);
        assert_eq!(sign(2.5), 0.0);
    }

    fn arb_seq() -> impl Strategy<Value = ZeroSequence> {
        let zero = (1.0..50.0f64, -PI..PI, 1u32..4).prop_map(|(r, t, m)| Zero::new(Complex64::from_polar(r, t), m));
        prop::collection::vec(zero, 1..200).prop_map(|zs| ZeroSequence::new(zs, 0.0).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn log_modulus_identity(seq in arb_seq(), r in 0.0..10.0f64, t in -PI..PI) {
            let z = Complex64::from_polar(r, t);
            prop_assume!(seq.zeros().iter().all(|a| (a.position - z).norm() >= 0.01));
            let product = evaluate_product(&seq, z, f64::INFINITY).unwrap().value.log_magnitude;
            let counting = log_modulus_via_counting(&seq, z).unwrap();
            prop_assert!((product - counting).abs() <= 1e-9 * (1.0 + counting.abs()));
        }

        #[test]
        fn derivative_matches_stencil(others in prop::collection::vec((2.0..30.0f64, -PI..PI), 0..20), r0 in 1.0..5.0f64, t0 in -PI..PI, l in 1u32..4) {
            let z0 = Complex64::from_polar(r0, t0);
            let mut zeros: Vec<Zero> = others.into_iter().map(|(r, t)| Zero::new(z0 + Complex64::from_polar(r, t), 1)).collect();
            zeros.push(Zero::new(z0, l));
            let seq = ZeroSequence::new(zeros, 0.0).unwrap();
            prop_assume!(seq.origin_excluded() && seq.zeros().iter().all(|a| a.position.norm() > 0.5));
            let v = derivative_at_multiple_zero(&seq, z0).unwrap();
            let oracle = stencil_coefficient(&seq, z0, l, 0.5).norm().ln();
            prop_assert!((v - oracle).abs() <= 1e-5 * (1.0 + v.abs()));
        }
    }
}
