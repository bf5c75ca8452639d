//! Zero sequences: storage, validation, file formats and origin shifts.
//!
//! A [`ZeroSequence`] is an immutable multiset of points in the plane. Equal
//! positions are merged into one [`Zero`] with the summed multiplicity, using
//! exact equality of the stored coordinates. Zeros are kept in ascending
//! order of modulus, which is the truncation order used by the canonical
//! product.
//!
//! Two on-disk formats are supported:
//!
//! ```text
//! @radius 10
//! # re im multiplicity
//! 1 0 1
//! -1 0 1
//! ```
//!
//! and the JSON form `{"radius": 10, "zeros": [[1, 0, 1], [-1, 0, 1]]}`.
//! Both print doubles with shortest round-trip formatting.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    pub position: Complex64,
    pub multiplicity: u32,
}

impl Zero {
    pub fn new(position: Complex64, multiplicity: u32) -> Self {
        Self {
            position,
            multiplicity,
        }
    }

    pub fn simple(re: f64, im: f64) -> Self {
        Self::new(Complex64::new(re, im), 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSequence {
    zeros: Vec<Zero>,
    truncation_radius: f64,
    provenance: String,
    duplicate_merges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// Number of distinct positions.
    pub total_count: usize,
    /// Sum of multiplicities.
    pub total_multiplicity: u64,
    pub max_radius: f64,
    pub has_origin_zero: bool,
    pub duplicate_merges: usize,
    pub truncation_radius: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonSequence {
    #[serde(default)]
    radius: f64,
    zeros: Vec<(f64, f64, u32)>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    provenance: String,
}

// -0.0 and 0.0 compare equal; store one representation so merging by bits agrees
// with merging by value.
fn canonical(v: f64) -> f64 {
    v + 0.0
}

fn key(z: Complex64) -> (u64, u64) {
    (z.re.to_bits(), z.im.to_bits())
}

impl ZeroSequence {
    /// Builds a sequence, merging equal positions.
    ///
    /// `truncation_radius` is the radius of the disc inside which the list is
    /// claimed complete; `0` means the finite list is the whole zero set.
    pub fn new(zeros: impl IntoIterator<Item = Zero>, truncation_radius: f64) -> Result<Self> {
        if !truncation_radius.is_finite() || truncation_radius < 0.0 {
            return Err(argument(format!(
                "truncation radius must be finite and nonnegative, got {truncation_radius}"
            )));
        }
        let mut merged: Vec<Zero> = Vec::new();
        let mut index: HashMap<(u64, u64), usize> = HashMap::new();
        let mut duplicate_merges = 0;
        for zero in zeros {
            if !zero.position.re.is_finite() || !zero.position.im.is_finite() {
                return Err(argument(format!("non-finite zero position {}", zero.position)));
            }
            if zero.multiplicity == 0 {
                return Err(argument(format!("zero at {} has multiplicity 0", zero.position)));
            }
            let position = Complex64::new(canonical(zero.position.re), canonical(zero.position.im));
            match index.get(&key(position)) {
                Some(&i) => {
                    merged[i].multiplicity = merged[i]
                        .multiplicity
                        .checked_add(zero.multiplicity)
                        .ok_or_else(|| argument("multiplicity overflow"))?;
                    duplicate_merges += 1;
                }
                None => {
                    index.insert(key(position), merged.len());
                    merged.push(Zero::new(position, zero.multiplicity));
                }
            }
        }
        merged.sort_by(|a, b| {
            a.position
                .norm()
                .total_cmp(&b.position.norm())
                .then(a.position.re.total_cmp(&b.position.re))
                .then(a.position.im.total_cmp(&b.position.im))
        });
        Ok(Self {
            zeros: merged,
            truncation_radius,
            provenance: String::new(),
            duplicate_merges,
        })
    }

    pub fn empty() -> Self {
        Self {
            zeros: Vec::new(),
            truncation_radius: 0.0,
            provenance: String::new(),
            duplicate_merges: 0,
        }
    }

    /// Simple zeros at the given points.
    pub fn from_points(points: impl IntoIterator<Item = Complex64>, truncation_radius: f64) -> Result<Self> {
        Self::new(points.into_iter().map(|p| Zero::new(p, 1)), truncation_radius)
    }

    /// Simple zeros on the real axis.
    pub fn from_reals(points: impl IntoIterator<Item = f64>, truncation_radius: f64) -> Result<Self> {
        Self::from_points(points.into_iter().map(|x| Complex64::new(x, 0.0)), truncation_radius)
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    /// Zeros in ascending order of modulus.
    pub fn zeros(&self) -> &[Zero] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn truncation_radius(&self) -> f64 {
        self.truncation_radius
    }

    /// Whether the list is the complete zero set (radius 0).
    pub fn is_complete(&self) -> bool {
        self.truncation_radius == 0.0
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn duplicate_merges(&self) -> usize {
        self.duplicate_merges
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.zeros.iter().map(|z| u64::from(z.multiplicity)).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.zeros.last().map_or(0.0, |z| z.position.norm())
    }

    /// Multiplicity of `z` in the sequence, 0 if absent.
    pub fn multiplicity_at(&self, z: Complex64) -> u32 {
        let z = Complex64::new(canonical(z.re), canonical(z.im));
        self.zeros
            .iter()
            .find(|zero| zero.position == z)
            .map_or(0, |zero| zero.multiplicity)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.multiplicity_at(z) > 0
    }

    pub fn origin_excluded(&self) -> bool {
        !self.contains(Complex64::new(0.0, 0.0))
    }

    pub fn ensure_origin_excluded(&self) -> Result<()> {
        if self.origin_excluded() {
            Ok(())
        } else {
            Err(Error::OriginZero)
        }
    }

    /// Largest disc radius about a point at distance `offset` from the origin
    /// that stays inside the completeness guarantee. `None` means unbounded.
    pub fn horizon_from(&self, offset: f64) -> Option<f64> {
        (!self.is_complete()).then_some(self.truncation_radius - offset)
    }

    /// Sorted real zeros (positions with exactly zero imaginary part).
    pub fn real_zeros(&self) -> Vec<f64> {
        let mut reals: Vec<f64> = self
            .zeros
            .iter()
            .filter(|z| z.position.im == 0.0)
            .map(|z| z.position.re)
            .collect();
        reals.sort_by(f64::total_cmp);
        reals
    }

    /// Whether the sequence equals its negation as a multiset.
    pub fn is_symmetric(&self) -> bool {
        self.zeros
            .iter()
            .all(|z| self.multiplicity_at(-z.position) == z.multiplicity)
    }

    /// Whether the sequence equals its complex conjugate as a multiset.
    pub fn is_conjugate_symmetric(&self) -> bool {
        self.zeros
            .iter()
            .all(|z| self.multiplicity_at(z.position.conj()) == z.multiplicity)
    }

    /// Moves the origin to `c`: every position `a` becomes `a - c`.
    pub fn shift_origin(&self, c: Complex64) -> Result<Self> {
        let radius = if self.is_complete() {
            0.0
        } else {
            let remaining = self.truncation_radius - c.norm();
            if remaining <= 0.0 {
                return Err(Error::Incomplete {
                    requested: c.norm(),
                    available: self.truncation_radius,
                });
            }
            remaining
        };
        let shifted = Self::new(
            self.zeros.iter().map(|z| Zero::new(z.position - c, z.multiplicity)),
            radius,
        )?;
        Ok(Self {
            provenance: self.provenance.clone(),
            duplicate_merges: self.duplicate_merges + shifted.duplicate_merges,
            ..shifted
        })
    }

    /// Reflection `a -> -a`.
    pub fn negated(&self) -> Self {
        Self::new(
            self.zeros.iter().map(|z| Zero::new(-z.position, z.multiplicity)),
            self.truncation_radius,
        )
        .expect("negation preserves validity")
        .with_provenance(self.provenance.clone())
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            total_count: self.zeros.len(),
            total_multiplicity: self.total_multiplicity(),
            max_radius: self.max_modulus(),
            has_origin_zero: !self.origin_excluded(),
            duplicate_merges: self.duplicate_merges,
            truncation_radius: self.truncation_radius,
        }
    }

    /// Text format: `@radius R` header, then `re im multiplicity` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.provenance.is_empty() {
            let _ = writeln!(out, "# {}", self.provenance);
        }
        if !self.is_complete() {
            let _ = writeln!(out, "@radius {}", self.truncation_radius);
        }
        for z in &self.zeros {
            let _ = writeln!(out, "{} {} {}", z.position.re, z.position.im, z.multiplicity);
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonSequence {
            radius: self.truncation_radius,
            zeros: self
                .zeros
                .iter()
                .map(|z| (z.position.re, z.position.im, z.multiplicity))
                .collect(),
            provenance: self.provenance.clone(),
        };
        serde_json::to_string(&doc).expect("sequence serializes")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let body = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => self.to_json(),
            _ => self.to_text(),
        };
        std::fs::write(path, body)?;
        Ok(())
    }
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn load_sequence(source: &str) -> Result<ZeroSequence> {
    if source.trim_start().starts_with('{') {
        parse_json(source)
    } else {
        parse_text(source)
    }
}

pub fn load_path(path: impl AsRef<Path>) -> Result<ZeroSequence> {
    let source = std::fs::read_to_string(path)?;
    load_sequence(&source)
}

fn parse_json(source: &str) -> Result<ZeroSequence> {
    let doc: JsonSequence = serde_json::from_str(source)?;
    let mut zeros = Vec::with_capacity(doc.zeros.len());
    for (i, (re, im, mult)) in doc.zeros.into_iter().enumerate() {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::NonFinite { line: i + 1 });
        }
        if mult == 0 {
            return Err(Error::Parse {
                line: i + 1,
                message: "multiplicity must be at least 1".into(),
            });
        }
        zeros.push(Zero::new(Complex64::new(re, im), mult));
    }
    Ok(ZeroSequence::new(zeros, doc.radius)?.with_provenance(doc.provenance))
}

fn parse_text(source: &str) -> Result<ZeroSequence> {
    let mut radius = None;
    let mut zeros = Vec::new();
    for (i, raw) in source.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("@radius") {
            if radius.is_some() {
                return Err(Error::Parse {
                    line,
                    message: "duplicate @radius header".into(),
                });
            }
            let value: f64 = rest.trim().parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad radius {:?}", rest.trim()),
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(Error::Parse {
                    line,
                    message: format!("radius must be finite and nonnegative, got {value}"),
                });
            }
            radius = Some(value);
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected `re im multiplicity`, got {} fields", fields.len()),
            });
        }
        let coord = |s: &str| -> Result<f64> {
            let v: f64 = s.parse().map_err(|_| Error::Parse {
                line,
                message: format!("bad coordinate {s:?}"),
            })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { line })
            }
        };
        let re = coord(fields[0])?;
        let im = coord(fields[1])?;
        let multiplicity: u32 = fields[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad multiplicity {:?}", fields[2]),
        })?;
        if multiplicity == 0 {
            return Err(Error::Parse {
                line,
                message: "multiplicity must be at least 1".into(),
            });
        }
        zeros.push(Zero::new(Complex64::new(re, im), multiplicity));
    }
    let radius = radius.unwrap_or(0.0);
    if radius > 0.0 {
        if let Some(z) = zeros.iter().find(|z| z.position.norm() >= radius) {
            return Err(argument(format!(
                "zero {} lies outside the declared radius {radius}",
                z.position
            )));
        }
    }
    ZeroSequence::new(zeros, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parses_two_simple_zeros() {
        let seq = load_sequence("1 0 1\n-1 0 1").unwrap();
        assert_eq!(seq.len(), 2);
        assert!(seq.contains(c(1.0, 0.0)));
        assert!(seq.contains(c(-1.0, 0.0)));
        assert_eq!(seq.truncation_radius(), 0.0);
    }

    #[test]
    fn parses_multiplicity() {
        let seq = load_sequence("0.5 0 2").unwrap();
        assert_eq!(seq.zeros(), &[Zero::new(c(0.5, 0.0), 2)]);
    }

    #[test]
    fn merges_identical_positions() {
        let seq = load_sequence("2 3 1\n2 3 2\n").unwrap();
        assert_eq!(seq.zeros(), &[Zero::new(c(2.0, 3.0), 3)]);
        assert_eq!(seq.duplicate_merges(), 1);
    }

    #[test]
    fn negative_zero_merges_with_zero() {
        let seq = load_sequence("-0 1 1\n0 1 1").unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.multiplicity_at(c(0.0, 1.0)), 2);
    }

    #[test]
    fn comments_and_header() {
        let seq = load_sequence("# test\n@radius 10\n3 0 1 # trailing\n\n").unwrap();
        assert_eq!(seq.truncation_radius(), 10.0);
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match load_sequence("1 0 1\n1 0\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load_sequence("1 0 1\nx 0 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match load_sequence("1 0 0") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(load_sequence("1 0 1\nNaN 0 1"), Err(Error::NonFinite { line: 2 })));
        assert!(matches!(load_sequence("inf 0 1"), Err(Error::NonFinite { line: 1 })));
        assert!(load_sequence(r#"{"radius": 0, "zeros": [[1, 0, 0]]}"#).is_err());
    }

    #[test]
    fn rejects_zero_outside_declared_radius() {
        assert!(load_sequence("@radius 2\n3 0 1").is_err());
    }

    #[test]
    fn json_format() {
        let seq = load_sequence(r#"{"radius": 5, "zeros": [[1, 0, 1], [1, 0, 2], [0, -2, 1]]}"#).unwrap();
        assert_eq!(seq.truncation_radius(), 5.0);
        assert_eq!(seq.multiplicity_at(c(1.0, 0.0)), 3);
        assert_eq!(seq.len(), 2);
    }

    #[test]
    fn shift_examples() {
        let seq = ZeroSequence::from_reals([1.0, -1.0], 0.0).unwrap();
        assert_eq!(seq.shift_origin(c(0.0, 0.0)).unwrap().zeros(), seq.zeros());
        let shifted = seq.shift_origin(c(1.0, 0.0)).unwrap();
        assert!(shifted.contains(c(0.0, 0.0)));
        assert!(shifted.contains(c(-2.0, 0.0)));
        assert!(!shifted.origin_excluded());

        let seq = ZeroSequence::from_reals([3.0], 10.0).unwrap();
        let shifted = seq.shift_origin(c(2.0, 0.0)).unwrap();
        assert_eq!(shifted.zeros(), &[Zero::simple(1.0, 0.0)]);
        assert_eq!(shifted.truncation_radius(), 8.0);
    }

    #[test]
    fn shift_beyond_radius_fails() {
        let seq = ZeroSequence::from_reals([3.0], 10.0).unwrap();
        assert!(matches!(seq.shift_origin(c(0.0, 10.0)), Err(Error::Incomplete { .. })));
    }

    #[test]
    fn validation_examples() {
        let report = ZeroSequence::empty().validate();
        assert_eq!(report.total_count, 0);
        assert!(!report.has_origin_zero);

        let report = load_sequence("0 0 1").unwrap().validate();
        assert!(report.has_origin_zero);

        let report = load_sequence("0 1 1\n0 1 1").unwrap().validate();
        assert_eq!(report.duplicate_merges, 1);
        assert_eq!(report.total_count, 1);
        assert_eq!(report.total_multiplicity, 2);
    }

    #[test]
    fn zeros_sorted_by_modulus() {
        let seq = ZeroSequence::from_reals([3.0, -1.0, 2.0], 0.0).unwrap();
        let moduli: Vec<f64> = seq.zeros().iter().map(|z| z.position.norm()).collect();
        assert_eq!(moduli, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn symmetry_flags() {
        let seq = ZeroSequence::from_reals([1.0, -1.0, 2.0, -2.0], 0.0).unwrap();
        assert!(seq.is_symmetric());
        let seq = ZeroSequence::from_points([c(1.0, 1.0), c(1.0, -1.0)], 0.0).unwrap();
        assert!(seq.is_conjugate_symmetric());
        assert!(!seq.is_symmetric());
    }

    fn arb_sequence() -> impl Strategy<Value = ZeroSequence> {
        let zero = (-1e6..1e6f64, -1e6..1e6f64, 1u32..4).prop_map(|(re, im, m)| Zero::new(c(re, im), m));
        (prop::collection::vec(zero, 0..40), prop::bool::ANY).prop_map(|(zeros, bounded)| {
            let radius = if bounded { 2e6 } else { 0.0 };
            ZeroSequence::new(zeros, radius).unwrap()
        })
    }

    fn dyadic() -> impl Strategy<Value = f64> {
        (-4096i32..4096).prop_map(|k| f64::from(k) / 64.0)
    }

    proptest! {
        #[test]
        fn text_and_json_round_trip(seq in arb_sequence()) {
            let seq = seq.with_provenance("prop");
            let text = load_sequence(&seq.to_text()).unwrap();
            prop_assert_eq!(text.zeros(), seq.zeros());
            prop_assert_eq!(text.truncation_radius(), seq.truncation_radius());
            let json = load_sequence(&seq.to_json()).unwrap();
            prop_assert_eq!(json.zeros(), seq.zeros());
            prop_assert_eq!(json.provenance(), "prop");
        }

        #[test]
        fn shift_round_trip_is_exact_on_dyadic_grid(
            pts in prop::collection::vec((dyadic(), dyadic(), 1u32..3), 0..30),
            cr in dyadic(), ci in dyadic(),
        ) {
            let seq = ZeroSequence::new(pts.into_iter().map(|(re, im, m)| Zero::new(c(re, im), m)), 1000.0).unwrap();
            let shift = c(cr, ci);
            let back = seq.shift_origin(shift).unwrap().shift_origin(-shift).unwrap();
            prop_assert_eq!(back.zeros(), seq.zeros());
            prop_assert!(seq.truncation_radius() - back.truncation_radius() <= 2.0 * shift.norm() + 1e-12);
        }

        #[test]
        fn shift_round_trip_general(seq in arb_sequence(), cr in -100.0..100.0f64, ci in -100.0..100.0f64) {
            let shift = c(cr, ci);
            let back = seq.shift_origin(shift).unwrap().shift_origin(-shift).unwrap();
            prop_assert_eq!(back.total_multiplicity(), seq.total_multiplicity());
            for (a, b) in back.zeros().iter().zip(seq.zeros()) {
                prop_assert_eq!(a.multiplicity, b.multiplicity);
                prop_assert!((a.position - b.position).norm() <= 1e-9);
            }
        }
    }
}
