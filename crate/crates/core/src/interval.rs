//! Finite unions of half-open intervals and their Lebesgue measure.
//!
//! An [`IntervalSet`] is kept in canonical form: parts sorted by `lo`,
//! pairwise disjoint and non-adjacent. All set algebra only compares stored
//! endpoints, so it is exact. Closed and open variants of a set differ from
//! the half-open form by finitely many points and have the same measure.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{finite, positive, Error, Result};

/// Half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        finite(lo)?;
        finite(hi)?;
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Reversed { lo, hi })
        }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }

    /// Intersection, `None` when it has empty interior.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo < hi).then_some(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Canonical finite union of disjoint, non-adjacent half-open intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(iv: Interval) -> Self {
        IntervalSet { parts: alloc::vec![iv] }
    }

    /// Builds the canonical set equal to the union of `raw` pairs.
    ///
    /// Pairs with `lo >= hi` are dropped; non-finite endpoints are rejected.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut parts = Vec::new();
        for (lo, hi) in raw {
            finite(lo)?;
            finite(hi)?;
            if lo < hi {
                parts.push(Interval { lo, hi });
            }
        }
        Ok(Self::from_unsorted(parts))
    }

    /// Same as [`normalize`](Self::normalize) for already validated intervals.
    pub fn from_intervals<I>(parts: I) -> Self
    where
        I: IntoIterator<Item = Interval>,
    {
        Self::from_unsorted(parts.into_iter().collect())
    }

    fn from_unsorted(mut parts: Vec<Interval>) -> Self {
        parts.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for iv in parts {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks the canonical-form invariant.
    pub fn is_canonical(&self) -> bool {
        self.parts.iter().all(|p| p.lo < p.hi && p.lo.is_finite() && p.hi.is_finite())
            && self.parts.windows(2).all(|w| w[0].hi < w[1].lo)
    }

    /// Lebesgue measure: the sum of part lengths.
    pub fn measure(&self) -> f64 {
        self.parts.iter().map(Interval::len).fold(0.0, |acc, v| acc + v)
    }

    pub fn contains(&self, x: f64) -> bool {
        // parts are sorted; find the last part starting at or before x
        let idx = self.parts.partition_point(|p| p.lo <= x);
        idx > 0 && x < self.parts[idx - 1].hi
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Option<Interval> {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => Some(Interval { lo: a.lo, hi: b.hi }),
            _ => None,
        }
    }

    /// Endpoints of every part, in increasing order.
    pub fn endpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.parts.iter().flat_map(|p| [p.lo, p.hi])
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Self::from_unsorted(parts)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let (a, b) = (&self.parts, &other.parts);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            if let Some(iv) = a[i].intersect(&b[j]) {
                out.push(iv);
            }
            if a[i].hi < b[j].hi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // pieces of two canonical sets never touch each other after clipping
        IntervalSet { parts: out }
    }

    pub fn intersect_interval(&self, iv: Interval) -> IntervalSet {
        self.intersect(&IntervalSet::from_interval(iv))
    }

    pub fn diff(&self, other: &IntervalSet) -> IntervalSet {
        let Some(hull) = self.hull() else {
            return IntervalSet::empty();
        };
        self.intersect(&other.complement_within(hull))
    }

    /// `window \ self`.
    pub fn complement_within(&self, window: Interval) -> IntervalSet {
        let mut out = Vec::new();
        let mut cursor = window.lo;
        for p in &self.parts {
            if p.hi <= window.lo {
                continue;
            }
            if p.lo >= window.hi {
                break;
            }
            if p.lo > cursor {
                out.push(Interval { lo: cursor, hi: p.lo });
            }
            cursor = cursor.max(p.hi);
        }
        if cursor < window.hi {
            out.push(Interval { lo: cursor, hi: window.hi });
        }
        IntervalSet { parts: out }
    }

    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        self.diff(other).is_empty()
    }

    /// Open `radius`-neighbourhood, as a half-open canonical set.
    pub fn dilate(&self, radius: f64) -> IntervalSet {
        Self::from_unsorted(self.parts.iter().map(|p| Interval { lo: p.lo - radius, hi: p.hi + radius }).collect())
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" ∪ ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Open ball `B(center, radius)` on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    center: f64,
    radius: f64,
}

impl Ball {
    pub fn new(center: f64, radius: f64) -> Result<Self> {
        finite(center)?;
        positive("radius", radius)?;
        Ok(Ball { center, radius })
    }

    #[inline]
    pub fn center(&self) -> f64 {
        self.center
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.center - self.radius
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.center + self.radius
    }

    /// `(center - r, center + r)` as a canonical set.
    pub fn to_set(&self) -> IntervalSet {
        IntervalSet::from_interval(Interval { lo: self.lo(), hi: self.hi() })
    }

    /// The concentric ball with radius scaled by `k`.
    pub fn scaled(&self, k: f64) -> Result<Ball> {
        positive("scale", k)?;
        Ball::new(self.center, k * self.radius)
    }

    /// Open balls sharing a point of positive length; touching balls are disjoint.
    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lo() < other.hi() && other.lo() < self.hi()
    }

    pub fn is_within(&self, other: &Ball) -> bool {
        other.lo() <= self.lo() && self.hi() <= other.hi()
    }
}

pub fn ball_to_set(b: &Ball) -> IntervalSet {
    b.to_set()
}

/// `sball k b`: same center, radius `k * r`.
pub fn sball(k: f64, b: &Ball) -> Result<Ball> {
    b.scaled(k)
}

/// Open superset `U ⊇ d` with `μ(U \ d) < eps`.
///
/// Each of the `2n` endpoints is pushed outward by `eps / (4n)`, so the
/// slack is at most `eps / 2`.
pub fn outer_regularize(d: &IntervalSet, eps: f64) -> Result<IntervalSet> {
    positive("eps", eps)?;
    if d.is_empty() {
        return Ok(IntervalSet::empty());
    }
    let pad = eps / (4.0 * d.parts.len() as f64);
    Ok(d.dilate(pad))
}

/// Compact subset `V ⊆ d` (closed parts, stored half-open) with `μ(d \ V) < eps`.
///
/// Each endpoint moves inward by `eps / (4n)`; parts too short to survive vanish.
pub fn inner_regularize(d: &IntervalSet, eps: f64) -> Result<IntervalSet> {
    positive("eps", eps)?;
    if d.is_empty() {
        return Ok(IntervalSet::empty());
    }
    let shrink = eps / (4.0 * d.parts.len() as f64);
    let parts = d
        .parts
        .iter()
        .filter_map(|p| {
            let (lo, hi) = (p.lo + shrink, p.hi - shrink);
            (lo < hi).then_some(Interval { lo, hi })
        })
        .collect();
    Ok(IntervalSet { parts })
}

/// `K_n ⊆ d` with `μ(d) - μ(K_n) <= 1/n`.
pub fn compact_exhaustion(d: &IntervalSet, n: u32) -> Result<IntervalSet> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n", value: 0.0 });
    }
    inner_regularize(d, 1.0 / n as f64)
}
