//! Exact geometry of finite interval unions on the unit interval or the circle.
//!
//! Sets are stored in canonical form: half-open spans `[lo, hi)` with exact
//! rational endpoints, sorted, pairwise disjoint, adjacent spans merged.
//! Endpoints given as `f64` are converted losslessly (every finite binary64
//! value is rational), so every operation here — measure, reflection, boolean
//! algebra, and the largest-symmetric-subset functional — is exact.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact coordinate type for endpoints, centers and measures.
pub type Coord = BigRational;

/// Build an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Coord {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Lossless conversion of a finite `f64` into a rational coordinate.
pub fn coord_from_f64(x: f64) -> Result<Coord, IntervalError> {
    BigRational::from_float(x).ok_or(IntervalError::NonFinite)
}

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(Ambient, Ambient),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("element {element} outside 1..={n}")]
    ElementOutOfRange { element: u64, n: u64 },
    #[error("interval endpoints must satisfy lo <= hi (got lo {lo} > hi {hi})")]
    ReversedEndpoints { lo: f64, hi: f64 },
    #[error("endpoint is not a finite number")]
    NonFinite,
    #[error("n must be positive")]
    ZeroModulus,
}

/// The ambient space a set lives in: the unit interval or the circle R/Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Line,
    Circle,
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Line => write!(f, "line"),
            Ambient::Circle => write!(f, "circle"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Span {
    lo: Coord,
    hi: Coord,
}

impl Span {
    fn len(&self) -> Coord {
        &self.hi - &self.lo
    }
}

/// A canonical finite union of half-open intervals.
///
/// Canonical form: spans sorted by `lo`, `lo < hi` for each span, and
/// `hi_i < lo_{i+1}` for consecutive spans (overlapping or abutting spans are
/// merged, empty spans dropped). Canonicalization is idempotent. Values are
/// immutable after construction; all operations are pure functions.
///
/// On the circle, endpoints are reduced modulo 1 and spans crossing 0 are
/// split, so canonical circle sets live inside `[0, 1)`. On the line, sets
/// constructed from integer sets or parsed from JSON also live in `[0, 1)`,
/// but [`IntervalSet::reflect`] deliberately does not clip: the mirror image
/// of a subset of `[0, 1)` is a genuine subset of the real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSet {
    ambient: Ambient,
    spans: Vec<Span>,
}

impl IntervalSet {
    /// The empty set.
    pub fn empty(ambient: Ambient) -> Self {
        IntervalSet { ambient, spans: Vec::new() }
    }

    /// The full unit interval `[0, 1)`.
    pub fn full(ambient: Ambient) -> Self {
        IntervalSet {
            ambient,
            spans: vec![Span { lo: Coord::zero(), hi: Coord::one() }],
        }
    }

    /// Builds a canonical set from arbitrary (possibly overlapping, unsorted)
    /// rational endpoint pairs. Pairs with `lo == hi` are ignored; on the
    /// circle, pairs are reduced modulo 1 and may wrap.
    pub fn from_pairs(
        ambient: Ambient,
        pairs: impl IntoIterator<Item = (Coord, Coord)>,
    ) -> Result<Self, IntervalError> {
        let mut spans = Vec::new();
        for (lo, hi) in pairs {
            match lo.cmp(&hi) {
                Ordering::Greater => {
                    return Err(IntervalError::ReversedEndpoints {
                        lo: lo.to_f64().unwrap_or(f64::NAN),
                        hi: hi.to_f64().unwrap_or(f64::NAN),
                    })
                }
                Ordering::Equal => continue,
                Ordering::Less => {}
            }
            match ambient {
                Ambient::Line => spans.push(Span { lo, hi }),
                Ambient::Circle => push_mod_one(&mut spans, lo, hi),
            }
        }
        Ok(IntervalSet { ambient, spans: canonicalize(spans) })
    }

    /// As [`IntervalSet::from_pairs`], with endpoints converted exactly from `f64`.
    pub fn from_f64_pairs(
        ambient: Ambient,
        pairs: &[(f64, f64)],
    ) -> Result<Self, IntervalError> {
        let converted = pairs
            .iter()
            .map(|&(lo, hi)| Ok((coord_from_f64(lo)?, coord_from_f64(hi)?)))
            .collect::<Result<Vec<_>, IntervalError>>()?;
        Self::from_pairs(ambient, converted)
    }

    /// The block set `A(S)` of an integer set `S ⊆ {1, …, n}`: the union of
    /// `[(s-1)/n, s/n)` over `s ∈ S`, with adjacent blocks merged.
    pub fn from_integer_set(s: &[u64], n: u64) -> Result<Self, IntervalError> {
        Self::blocks(Ambient::Line, s, n, 1)
    }

    /// Circle analogue of [`IntervalSet::from_integer_set`] for residues
    /// `S ⊆ {0, …, n-1}`: the union of `[s/n, (s+1)/n)`.
    pub fn from_residues(s: &[u64], n: u64) -> Result<Self, IntervalError> {
        Self::blocks(Ambient::Circle, s, n, 0)
    }

    fn blocks(ambient: Ambient, s: &[u64], n: u64, base: u64) -> Result<Self, IntervalError> {
        if n == 0 {
            return Err(IntervalError::ZeroModulus);
        }
        let den = BigInt::from(n);
        let mut spans = Vec::with_capacity(s.len());
        for &elem in s {
            let offset = if base == 1 {
                if elem < 1 || elem > n {
                    return Err(IntervalError::ElementOutOfRange { element: elem, n });
                }
                elem - 1
            } else {
                if elem >= n {
                    return Err(IntervalError::ElementOutOfRange { element: elem, n });
                }
                elem
            };
            spans.push(Span {
                lo: BigRational::new(BigInt::from(offset), den.clone()),
                hi: BigRational::new(BigInt::from(offset + 1), den.clone()),
            });
        }
        Ok(IntervalSet { ambient, spans: canonicalize(spans) })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    /// Number of maximal intervals.
    pub fn span_count(&self) -> usize {
        self.spans.len()
    }

    /// The endpoint pairs in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (&Coord, &Coord)> {
        self.spans.iter().map(|s| (&s.lo, &s.hi))
    }

    /// Lebesgue measure: the exact sum of span lengths.
    pub fn measure(&self) -> Coord {
        self.spans.iter().fold(Coord::zero(), |acc, s| acc + s.len())
    }

    pub fn measure_f64(&self) -> f64 {
        self.measure().to_f64().unwrap_or(f64::NAN)
    }

    /// The mirror image `2c - A`.
    ///
    /// Measure is preserved and `reflect(reflect(A, c), c) == A`. On the line
    /// the image is not clipped to `[0, 1)`; on the circle it is reduced
    /// modulo 1. Single points (span endpoints swapping their open/closed
    /// sides) are measure zero and ignored by the half-open convention.
    pub fn reflect(&self, c: &Coord) -> IntervalSet {
        let two_c = c + c;
        let spans = self
            .spans
            .iter()
            .map(|s| Span { lo: &two_c - &s.hi, hi: &two_c - &s.lo })
            .collect::<Vec<_>>();
        let spans = match self.ambient {
            Ambient::Line => canonicalize(spans),
            Ambient::Circle => {
                let mut wrapped = Vec::with_capacity(spans.len());
                for s in spans {
                    push_mod_one(&mut wrapped, s.lo, s.hi);
                }
                canonicalize(wrapped)
            }
        };
        IntervalSet { ambient: self.ambient, spans }
    }

    /// Scaled copy `tA` (line sets). Used by the scaling law `D(tA) = t·D(A)`.
    pub fn scale(&self, t: &Coord) -> IntervalSet {
        assert!(t.is_positive(), "scale factor must be positive");
        let spans = self
            .spans
            .iter()
            .map(|s| Span { lo: t * &s.lo, hi: t * &s.hi })
            .collect();
        IntervalSet { ambient: self.ambient, spans }
    }

    fn check_ambient(&self, other: &IntervalSet) -> Result<(), IntervalError> {
        if self.ambient != other.ambient {
            return Err(IntervalError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &IntervalSet) -> Result<IntervalSet, IntervalError> {
        self.check_ambient(other)?;
        let (a, b) = (&self.spans, &other.spans);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = if a[i].lo >= b[j].lo { a[i].lo.clone() } else { b[j].lo.clone() };
            let hi = if a[i].hi <= b[j].hi { a[i].hi.clone() } else { b[j].hi.clone() };
            if lo < hi {
                out.push(Span { lo, hi });
            }
            if a[i].hi <= b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        Ok(IntervalSet { ambient: self.ambient, spans: out })
    }

    pub fn union(&self, other: &IntervalSet) -> Result<IntervalSet, IntervalError> {
        self.check_ambient(other)?;
        let mut spans = self.spans.clone();
        spans.extend(other.spans.iter().cloned());
        Ok(IntervalSet { ambient: self.ambient, spans: canonicalize(spans) })
    }

    /// Set difference `self \ other`.
    pub fn subtract(&self, other: &IntervalSet) -> Result<IntervalSet, IntervalError> {
        self.check_ambient(other)?;
        let mut out = Vec::new();
        let b = &other.spans;
        let mut j = 0;
        for s in &self.spans {
            let mut lo = s.lo.clone();
            while j < b.len() && b[j].hi <= lo {
                j += 1;
            }
            let mut k = j;
            while k < b.len() && b[k].lo < s.hi {
                if b[k].lo > lo {
                    out.push(Span { lo: lo.clone(), hi: b[k].lo.clone() });
                }
                if b[k].hi > lo {
                    lo = b[k].hi.clone();
                }
                if lo >= s.hi {
                    break;
                }
                k += 1;
            }
            if lo < s.hi {
                out.push(Span { lo, hi: s.hi.clone() });
            }
        }
        Ok(IntervalSet { ambient: self.ambient, spans: out })
    }

    /// Symmetric difference `(A \ B) ∪ (B \ A)`. Its measure equals
    /// `measure(A) + measure(B) - 2·measure(A ∩ B)`.
    pub fn symdiff(&self, other: &IntervalSet) -> Result<IntervalSet, IntervalError> {
        let left = self.subtract(other)?;
        let right = other.subtract(self)?;
        left.union(&right)
    }

    /// Measure of `A ∩ (2c - A)`: the largest symmetric subset of `A` with
    /// center `c`. Piecewise linear as a function of `c`.
    pub fn overlap_at(&self, c: &Coord) -> Coord {
        let mirrored = self.reflect(c);
        self.intersect(&mirrored)
            .expect("reflection preserves ambient")
            .measure()
    }

    /// The exact largest-symmetric-subset functional `D(A)` together with a
    /// maximizing center (the smallest one).
    ///
    /// `c ↦ overlap_at(A, c)` is piecewise linear, so its maximum is attained
    /// at a breakpoint; every breakpoint is a midpoint `(e_i + e_j)/2` of two
    /// endpoints of `A`. On the circle, midpoints are taken modulo 1 and each
    /// candidate is considered with the offsets `{0, ½}`: `x ↦ 2c - x` and
    /// `x ↦ 2(c + ½) - x` coincide on the circle, so the offset changes the
    /// reported center but not the subset.
    pub fn largest_symmetric(&self) -> Result<(Coord, Coord), IntervalError> {
        if self.spans.is_empty() {
            return Err(IntervalError::EmptySet);
        }
        let endpoints: Vec<&Coord> = self
            .spans
            .iter()
            .flat_map(|s| [&s.lo, &s.hi])
            .collect();
        let half = rat(1, 2);
        let mut candidates = BTreeSet::new();
        for (idx, a) in endpoints.iter().enumerate() {
            for b in &endpoints[idx..] {
                let mid = (*a + *b) * &half;
                match self.ambient {
                    Ambient::Line => {
                        candidates.insert(mid);
                    }
                    Ambient::Circle => {
                        candidates.insert(mod_one(&(&mid + &half)));
                        candidates.insert(mod_one(&mid));
                    }
                }
            }
        }
        let mut best: Option<(Coord, Coord)> = None;
        for c in candidates {
            let value = self.overlap_at(&c);
            match &best {
                Some((best_value, _)) if *best_value >= value => {}
                _ => best = Some((value, c)),
            }
        }
        Ok(best.expect("nonempty candidate set"))
    }

    /// Serializes to the canonical JSON form
    /// `{"ambient": "...", "intervals": [[lo, hi], ...]}` with `f64` endpoints.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialization cannot fail")
    }

    /// Lenient parse: intervals may be unsorted, overlapping or adjacent, and
    /// endpoints may be JSON numbers or exact `"p/q"` strings. A missing
    /// `ambient` field defaults to the line.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, serde_json::Error> {
        serde_json::from_value(value.clone())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S>(&self, serializer: S) -> Result<S::Ok, S::Error>
    where
        S: Serializer,
    {
        #[derive(Serialize)]
        struct Repr {
            ambient: Ambient,
            intervals: Vec<[f64; 2]>,
        }
        let repr = Repr {
            ambient: self.ambient,
            intervals: self
                .spans
                .iter()
                .map(|s| {
                    [
                        s.lo.to_f64().unwrap_or(f64::NAN),
                        s.hi.to_f64().unwrap_or(f64::NAN),
                    ]
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(default = "default_ambient")]
            ambient: Ambient,
            intervals: Vec<[serde_json::Value; 2]>,
        }
        fn default_ambient() -> Ambient {
            Ambient::Line
        }
        fn endpoint<E: serde::de::Error>(v: &serde_json::Value) -> Result<Coord, E> {
            match v {
                serde_json::Value::Number(n) => {
                    let x = n.as_f64().ok_or_else(|| E::custom("endpoint out of f64 range"))?;
                    coord_from_f64(x).map_err(|e| E::custom(e.to_string()))
                }
                serde_json::Value::String(s) => parse_fraction(s)
                    .ok_or_else(|| E::custom(format!("cannot parse endpoint {s:?}"))),
                other => Err(E::custom(format!("endpoint must be number or string, got {other}"))),
            }
        }
        let repr = Repr::deserialize(deserializer)?;
        let pairs = repr
            .intervals
            .iter()
            .map(|[lo, hi]| Ok((endpoint(lo)?, endpoint(hi)?)))
            .collect::<Result<Vec<_>, D::Error>>()?;
        IntervalSet::from_pairs(repr.ambient, pairs).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// Parses `"p/q"`, `"p"`, or a decimal string into an exact rational.
pub fn parse_fraction(s: &str) -> Option<Coord> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else if let Ok(int) = s.parse::<BigInt>() {
        Some(BigRational::from_integer(int))
    } else {
        let x: f64 = s.parse().ok()?;
        BigRational::from_float(x)
    }
}

fn mod_one(x: &Coord) -> Coord {
    let f = x.floor();
    x - f
}

/// Splits `[lo, hi)` into spans inside `[0, 1)`, reducing modulo 1.
/// Spans of length >= 1 cover the whole circle.
fn push_mod_one(out: &mut Vec<Span>, lo: Coord, hi: Coord) {
    if &hi - &lo >= Coord::one() {
        out.push(Span { lo: Coord::zero(), hi: Coord::one() });
        return;
    }
    let shift = lo.floor();
    let lo = &lo - &shift;
    let hi = &hi - &shift;
    if hi <= Coord::one() {
        out.push(Span { lo, hi });
    } else {
        out.push(Span { lo, hi: Coord::one() });
        out.push(Span { lo: Coord::zero(), hi: hi - Coord::one() });
    }
}

fn canonicalize(mut spans: Vec<Span>) -> Vec<Span> {
    spans.retain(|s| s.lo < s.hi);
    spans.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
    let mut out: Vec<Span> = Vec::with_capacity(spans.len());
    for s in spans {
        match out.last_mut() {
            Some(last) if s.lo <= last.hi => {
                if s.hi > last.hi {
                    last.hi = s.hi;
                }
            }
            _ => out.push(s),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pairs: &[(i64, i64, i64)]) -> IntervalSet {
        // (num_lo, num_hi, den) triples
        IntervalSet::from_pairs(
            Ambient::Line,
            pairs.iter().map(|&(lo, hi, den)| (rat(lo, den), rat(hi, den))),
        )
        .unwrap()
    }

    #[test]
    fn measure_examples() {
        assert_eq!(IntervalSet::full(Ambient::Line).measure(), rat(1, 1));
        assert_eq!(IntervalSet::empty(Ambient::Line).measure(), rat(0, 1));
        assert_eq!(set(&[(0, 1, 4), (3, 4, 4)]).measure(), rat(1, 2));
    }

    #[test]
    fn canonicalization_merges_and_is_idempotent() {
        let a = set(&[(0, 2, 5), (2, 3, 5), (1, 2, 5)]);
        assert_eq!(a.span_count(), 1);
        assert_eq!(a.measure(), rat(3, 5));
        let again = IntervalSet::from_pairs(
            Ambient::Line,
            a.pairs().map(|(lo, hi)| (lo.clone(), hi.clone())),
        )
        .unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn reflect_examples() {
        let quarter = set(&[(0, 1, 4)]);
        assert_eq!(quarter.reflect(&rat(1, 2)), set(&[(3, 4, 4)]));
        let full = IntervalSet::full(Ambient::Line);
        assert_eq!(full.reflect(&rat(1, 2)), full);
        let tenth = IntervalSet::from_f64_pairs(Ambient::Line, &[(0.1, 0.2)]).unwrap();
        let mirrored = tenth.reflect(&coord_from_f64(0.3).unwrap());
        let expect = IntervalSet::from_f64_pairs(Ambient::Line, &[(0.4, 0.5)]).unwrap();
        assert_eq!(mirrored, expect);
        assert_eq!(mirrored.reflect(&coord_from_f64(0.3).unwrap()), tenth);
    }

    #[test]
    fn boolean_algebra_examples() {
        let a = set(&[(0, 2, 4)]);
        let b = set(&[(1, 4, 4)]);
        assert_eq!(a.intersect(&b).unwrap(), set(&[(1, 2, 4)]));
        assert!(a.symdiff(&a).unwrap().is_empty());
        assert_eq!(a.symdiff(&b).unwrap(), set(&[(0, 1, 4), (2, 4, 4)]));
        let m = |s: &IntervalSet| s.measure();
        assert_eq!(
            m(&a.symdiff(&b).unwrap()),
            m(&a) + m(&b) - rat(2, 1) * m(&a.intersect(&b).unwrap())
        );
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = IntervalSet::full(Ambient::Line);
        let b = IntervalSet::full(Ambient::Circle);
        assert!(matches!(
            a.intersect(&b),
            Err(IntervalError::AmbientMismatch(_, _))
        ));
    }

    #[test]
    fn overlap_examples() {
        let full = IntervalSet::full(Ambient::Line);
        assert_eq!(full.overlap_at(&rat(1, 2)), rat(1, 1));
        let half = set(&[(0, 1, 2)]);
        assert_eq!(half.overlap_at(&rat(0, 1)), rat(0, 1));
        // A(S) for S = {1,2,3,5,8,13}, n = 13, center with 2nc + 1 = 6:
        // overlap equals (ordered representations of 6) / 13 = 3/13.
        let a = IntervalSet::from_integer_set(&[1, 2, 3, 5, 8, 13], 13).unwrap();
        assert_eq!(a.overlap_at(&rat(5, 26)), rat(3, 13));
    }

    #[test]
    fn largest_symmetric_examples() {
        let full = IntervalSet::full(Ambient::Line);
        assert_eq!(full.largest_symmetric().unwrap(), (rat(1, 1), rat(1, 2)));

        let quarters = set(&[(0, 1, 4), (3, 4, 4)]);
        let (delta, c) = quarters.largest_symmetric().unwrap();
        assert_eq!(delta, rat(1, 2));
        assert_eq!(quarters.overlap_at(&c), delta);

        let a = IntervalSet::from_integer_set(&[1, 2, 3, 5, 8, 13], 13).unwrap();
        let (delta, c) = a.largest_symmetric().unwrap();
        assert_eq!(delta, rat(3, 13));
        // 2nc + 1 must be one of the maximizing sums 4, 6, 16.
        let sum = rat(2 * 13, 1) * &c + rat(1, 1);
        assert!(sum == rat(4, 1) || sum == rat(6, 1) || sum == rat(16, 1), "sum = {sum}");
    }

    #[test]
    fn empty_set_has_no_center() {
        assert!(matches!(
            IntervalSet::empty(Ambient::Line).largest_symmetric(),
            Err(IntervalError::EmptySet)
        ));
    }

    #[test]
    fn from_integer_set_examples() {
        let all = IntervalSet::from_integer_set(&[1, 2, 3, 4], 4).unwrap();
        assert_eq!(all, IntervalSet::full(Ambient::Line));
        assert_eq!(
            IntervalSet::from_integer_set(&[1], 4).unwrap(),
            set(&[(0, 1, 4)])
        );
        let merged = IntervalSet::from_integer_set(&[1, 2, 5], 5).unwrap();
        assert_eq!(merged, set(&[(0, 2, 5), (4, 5, 5)]));
        assert_eq!(merged.measure(), rat(3, 5));
        assert!(IntervalSet::from_integer_set(&[6], 5).is_err());
    }

    #[test]
    fn circle_reflection_wraps() {
        let a = IntervalSet::from_pairs(Ambient::Circle, [(rat(7, 10), rat(9, 10))]).unwrap();
        // Symmetric about 0.8, equivalently about 0.3 on the circle.
        let (delta, c) = a.largest_symmetric().unwrap();
        assert_eq!(delta, rat(1, 5));
        assert_eq!(a.overlap_at(&c), delta);
        // Reflection about c and c + 1/2 coincide on the circle.
        let c2 = mod_one(&(&c + &rat(1, 2)));
        assert_eq!(a.overlap_at(&c2), delta);

        // A set crossing zero.
        let b = IntervalSet::from_pairs(Ambient::Circle, [(rat(9, 10), rat(11, 10))]).unwrap();
        assert_eq!(b.span_count(), 2);
        assert_eq!(b.measure(), rat(1, 5));
        let (delta, _) = b.largest_symmetric().unwrap();
        assert_eq!(delta, rat(1, 5));
    }

    #[test]
    fn json_round_trip_and_lenient_parse() {
        let a = set(&[(0, 1, 4), (3, 4, 4)]);
        let json = a.to_json();
        let back = IntervalSet::from_json(&json).unwrap();
        assert_eq!(a, back);

        let lenient: IntervalSet = serde_json::from_str(
            r#"{"intervals": [["1/2", "3/4"], [0.25, 0.5], ["0", "1/4"]]}"#,
        )
        .unwrap();
        assert_eq!(lenient, IntervalSet::full(Ambient::Line));
    }
}
