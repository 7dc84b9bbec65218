//! Step functions, continuous piecewise-linear functions and their exact
//! integrals over interval sets.
//!
//! [`PiecewiseAffine`] is the common carrier: affine on each piece, possibly
//! jumping at breakpoints, constant on both tails. Step functions and
//! piecewise-linear functions convert into it losslessly, and mixed
//! differences such as `f - g` are evaluated on the merged grid.

use alloc::vec::Vec;

use crate::error::{finite, positive, Error, Result};
use crate::interval::{Interval, IntervalSet};

/// Strict or non-strict comparison for superlevel sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `{x | f(x) > c}`
    Above,
    /// `{x | f(x) >= c}`
    AtLeast,
}

impl Level {
    #[inline]
    fn test(self, v: f64, c: f64) -> bool {
        match self {
            Level::Above => v > c,
            Level::AtLeast => v >= c,
        }
    }
}

fn check_increasing(xs: &[f64]) -> Result<()> {
    for &x in xs {
        finite(x)?;
    }
    if xs.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::Unsorted)
    }
}

/// Finitely many constant pieces `values[i]` on `[breakpoints[i], breakpoints[i+1])`,
/// zero outside `[breakpoints[0], breakpoints[m])`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() && values.is_empty() {
            return Ok(Self::zero());
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::LengthMismatch { expected: breakpoints.len().saturating_sub(1), got: values.len() });
        }
        check_increasing(&breakpoints)?;
        for &v in &values {
            finite(v)?;
        }
        Ok(StepFunction { breakpoints, values })
    }

    pub fn zero() -> Self {
        StepFunction::default()
    }

    /// `value · 1_[lo, hi)`.
    pub fn indicator(lo: f64, hi: f64, value: f64) -> Result<Self> {
        Self::new(alloc::vec![lo, hi], alloc::vec![value])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> Option<Interval> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(&lo), Some(&hi)) => Interval::new(lo, hi).ok(),
            _ => None,
        }
    }

    /// `(piece, value)` pairs in order.
    pub fn pieces(&self) -> impl Iterator<Item = (Interval, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (Interval::new(w[0], w[1]).expect("validated breakpoints"), v))
    }

    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&b| b <= x);
        if idx == 0 || idx == self.breakpoints.len() {
            0.0
        } else {
            self.values[idx - 1]
        }
    }

    /// `lim_{y -> x-} f(y)`.
    pub fn left_limit(&self, x: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&b| b < x);
        if idx == 0 || idx > self.values.len() {
            0.0
        } else {
            self.values[idx - 1]
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Jump points `(x, left value, right value)` where the one-sided values differ,
    /// including the ends of the support.
    pub fn jumps(&self) -> Vec<(f64, f64, f64)> {
        let m = self.values.len();
        let mut out = Vec::new();
        for (i, &b) in self.breakpoints.iter().enumerate() {
            let left = if i == 0 { 0.0 } else { self.values[i - 1] };
            let right = if i == m { 0.0 } else { self.values[i] };
            if left != right {
                out.push((b, left, right));
            }
        }
        out
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> StepFunction {
        StepFunction { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|&v| f(v)).collect() }
    }

    pub fn abs(&self) -> StepFunction {
        self.map_values(f64::abs)
    }

    pub fn scale(&self, alpha: f64) -> StepFunction {
        self.map_values(|v| alpha * v)
    }

    /// `self + other`, on the merged breakpoint grid.
    pub fn add(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &StepFunction) -> StepFunction {
        self.combine(other, |a, b| a - b)
    }

    /// Pointwise combination `op(self, other)` on the merged grid; `op(0, 0)` must be 0.
    pub fn combine(&self, other: &StepFunction, op: impl Fn(f64, f64) -> f64) -> StepFunction {
        let grid = merge_sorted(&self.breakpoints, &other.breakpoints);
        if grid.len() < 2 {
            return StepFunction::zero();
        }
        let values = grid.windows(2).map(|w| op(self.eval(w[0]), other.eval(w[0]))).collect();
        StepFunction { breakpoints: grid, values }
    }

    /// `∫_{[lo, hi)} f`.
    pub fn integrate_interval(&self, lo: f64, hi: f64) -> f64 {
        let mut total = 0.0;
        for (w, &v) in self.breakpoints.windows(2).zip(&self.values) {
            if w[1] <= lo {
                continue;
            }
            if w[0] >= hi {
                break;
            }
            let len = w[1].min(hi) - w[0].max(lo);
            total += v * len;
        }
        total
    }

    /// `∫_{[lo, hi)} |f|`.
    pub fn abs_integrate_interval(&self, lo: f64, hi: f64) -> f64 {
        let mut total = 0.0;
        for (w, &v) in self.breakpoints.windows(2).zip(&self.values) {
            if w[1] <= lo {
                continue;
            }
            if w[0] >= hi {
                break;
            }
            total += v.abs() * (w[1].min(hi) - w[0].max(lo));
        }
        total
    }

    /// `Σ v_i · μ([b_{i-1}, b_i) ∩ s)`.
    pub fn integrate(&self, s: &IntervalSet) -> f64 {
        s.parts().iter().map(|p| self.integrate_interval(p.lo(), p.hi())).fold(0.0, |acc, v| acc + v)
    }

    /// `∫_s |f|`.
    pub fn l1_norm(&self, s: &IntervalSet) -> f64 {
        s.parts().iter().map(|p| self.abs_integrate_interval(p.lo(), p.hi())).fold(0.0, |acc, v| acc + v)
    }

    /// `∫_ℝ |f|`.
    pub fn l1_norm_total(&self) -> f64 {
        self.pieces().map(|(p, v)| v.abs() * p.len()).fold(0.0, |acc, v| acc + v)
    }

    /// `{x ∈ support | f(x) > c}` (or `>=`), canonical.
    pub fn superlevel_set(&self, c: f64, level: Level) -> IntervalSet {
        IntervalSet::from_intervals(self.pieces().filter(|&(_, v)| level.test(v, c)).map(|(p, _)| p))
    }

    /// `f · 1_window`.
    pub fn restrict(&self, window: Interval) -> StepFunction {
        let mut bps = Vec::new();
        let mut vals = Vec::new();
        for (p, v) in self.pieces() {
            let Some(q) = p.intersect(&window) else { continue };
            // pieces are contiguous, so the kept ones are too
            if bps.is_empty() {
                bps.push(q.lo());
            }
            bps.push(q.hi());
            vals.push(v);
        }
        StepFunction { breakpoints: bps, values: vals }
    }

    pub fn to_affine(&self) -> PiecewiseAffine {
        PiecewiseAffine {
            breaks: self.breakpoints.clone(),
            starts: self.values.clone(),
            ends: self.values.clone(),
            tail_lo: 0.0,
            tail_hi: 0.0,
        }
    }
}

impl core::ops::Neg for &StepFunction {
    type Output = StepFunction;
    fn neg(self) -> StepFunction {
        self.map_values(|v| -v)
    }
}

fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), Some(&y)) if y < x => {
                j += 1;
                y
            }
            (Some(&x), Some(_)) => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

/// Continuous piecewise-linear function through `(knots[i], values[i])`,
/// constant beyond the first and last knot.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::Invalid("piecewise-linear function needs at least one knot"));
        }
        if knots.len() != values.len() {
            return Err(Error::LengthMismatch { expected: knots.len(), got: values.len() });
        }
        check_increasing(&knots)?;
        for &v in &values {
            finite(v)?;
        }
        Ok(PiecewiseLinear { knots, values })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(alloc::vec![0.0], alloc::vec![value])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.knots.len();
        if x <= self.knots[0] {
            return self.values[0];
        }
        if x >= self.knots[n - 1] {
            return self.values[n - 1];
        }
        let i = self.knots.partition_point(|&k| k <= x);
        let (x0, x1) = (self.knots[i - 1], self.knots[i]);
        let (y0, y1) = (self.values[i - 1], self.values[i]);
        if x == x0 {
            y0
        } else {
            y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
        }
    }

    /// Slopes of the interior segments.
    pub fn slopes(&self) -> impl Iterator<Item = f64> + '_ {
        self.knots.windows(2).zip(self.values.windows(2)).map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
    }

    /// Largest absolute slope, i.e. the Lipschitz constant.
    pub fn lipschitz(&self) -> f64 {
        self.slopes().fold(0.0, |m, s| m.max(s.abs()))
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn inf(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Exact `∫_s g` via the trapezoid rule on each piece.
    pub fn integrate(&self, s: &IntervalSet) -> f64 {
        self.to_affine().integrate(s)
    }

    /// `{x ∈ window | g(x) > c}` (or `>=`), crossings solved linearly.
    pub fn superlevel_set(&self, c: f64, level: Level, window: Interval) -> IntervalSet {
        self.to_affine().superlevel_set(c, level, window)
    }

    pub fn to_affine(&self) -> PiecewiseAffine {
        let n = self.values.len();
        PiecewiseAffine {
            breaks: self.knots.clone(),
            starts: self.values[..n - 1].to_vec(),
            ends: self.values[1..].to_vec(),
            tail_lo: self.values[0],
            tail_hi: self.values[n - 1],
        }
    }
}

/// Affine on each `[breaks[i], breaks[i+1])` (running from `starts[i]` to the
/// left limit `ends[i]`), constant `tail_lo` / `tail_hi` outside.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseAffine {
    breaks: Vec<f64>,
    starts: Vec<f64>,
    ends: Vec<f64>,
    tail_lo: f64,
    tail_hi: f64,
}

/// One affine segment `[lo, hi)` running from `start` to the limit `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub start: f64,
    pub end: f64,
}

impl Segment {
    fn at(&self, x: f64) -> f64 {
        if x == self.lo {
            self.start
        } else if x == self.hi {
            self.end
        } else {
            self.start + (self.end - self.start) * ((x - self.lo) / (self.hi - self.lo))
        }
    }

    /// Sub-segment on `[lo, hi) ∩ [a, b)`.
    fn clip(&self, a: f64, b: f64) -> Option<Segment> {
        let lo = self.lo.max(a);
        let hi = self.hi.min(b);
        (lo < hi).then(|| Segment { lo, hi, start: self.at(lo), end: self.at(hi) })
    }

    fn integral(&self) -> f64 {
        0.5 * (self.start + self.end) * (self.hi - self.lo)
    }

    fn abs_integral(&self) -> f64 {
        let (a, b) = (self.start, self.end);
        let w = self.hi - self.lo;
        if a * b >= 0.0 {
            0.5 * (a.abs() + b.abs()) * w
        } else {
            // sign change: two triangles
            0.5 * (a * a + b * b) / (a.abs() + b.abs()) * w
        }
    }
}

impl PiecewiseAffine {
    pub fn breaks(&self) -> &[f64] {
        &self.breaks
    }

    pub fn tails(&self) -> (f64, f64) {
        (self.tail_lo, self.tail_hi)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let idx = self.breaks.partition_point(|&b| b <= x);
        if idx == 0 {
            self.tail_lo
        } else if idx == self.breaks.len() {
            self.tail_hi
        } else {
            self.segment(idx - 1).at(x)
        }
    }

    fn segment(&self, i: usize) -> Segment {
        Segment { lo: self.breaks[i], hi: self.breaks[i + 1], start: self.starts[i], end: self.ends[i] }
    }

    /// Segments covering `[lo, hi)`, tails included as flat segments.
    pub fn segments_on(&self, lo: f64, hi: f64) -> Vec<Segment> {
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        let (first, last) = match (self.breaks.first(), self.breaks.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => {
                out.push(Segment { lo, hi, start: self.tail_lo, end: self.tail_lo });
                return out;
            }
        };
        if lo < first {
            let h = hi.min(first);
            out.push(Segment { lo, hi: h, start: self.tail_lo, end: self.tail_lo });
        }
        for i in 0..self.starts.len() {
            if self.breaks[i + 1] <= lo {
                continue;
            }
            if self.breaks[i] >= hi {
                break;
            }
            if let Some(s) = self.segment(i).clip(lo, hi) {
                out.push(s);
            }
        }
        if hi > last {
            let l = lo.max(last);
            out.push(Segment { lo: l, hi, start: self.tail_hi, end: self.tail_hi });
        }
        out
    }

    pub fn integrate(&self, s: &IntervalSet) -> f64 {
        s.parts()
            .iter()
            .flat_map(|p| self.segments_on(p.lo(), p.hi()))
            .map(|seg| seg.integral())
            .fold(0.0, |acc, v| acc + v)
    }

    /// `∫_s |h|`, exact for each affine piece.
    pub fn abs_integrate(&self, s: &IntervalSet) -> f64 {
        s.parts()
            .iter()
            .flat_map(|p| self.segments_on(p.lo(), p.hi()))
            .map(|seg| seg.abs_integral())
            .fold(0.0, |acc, v| acc + v)
    }

    pub fn abs_integrate_interval(&self, lo: f64, hi: f64) -> f64 {
        self.segments_on(lo, hi).iter().map(Segment::abs_integral).fold(0.0, |acc, v| acc + v)
    }

    /// `{x ∈ window | h(x) > c}` (or `>=`).
    pub fn superlevel_set(&self, c: f64, level: Level, window: Interval) -> IntervalSet {
        self.level_set_by(window, |v| level.test(v, c), c)
    }

    /// `{x ∈ window | |h(x)| > c}` (or `>=`).
    pub fn abs_superlevel_set(&self, c: f64, level: Level, window: Interval) -> IntervalSet {
        let upper = self.superlevel_set(c, level, window);
        let lower = self.negated().superlevel_set(c, level, window);
        upper.union(&lower)
    }

    fn level_set_by(&self, window: Interval, inside: impl Fn(f64) -> bool, c: f64) -> IntervalSet {
        let mut parts = Vec::new();
        for seg in self.segments_on(window.lo(), window.hi()) {
            let (a, b) = (inside(seg.start), inside(seg.end));
            match (a, b) {
                (true, true) => parts.push((seg.lo, seg.hi)),
                (false, false) => {
                    // an affine segment crosses a level at most once, so the
                    // interior is inside only if an endpoint is
                }
                _ => {
                    let x = if seg.start == seg.end {
                        seg.lo
                    } else {
                        seg.lo + (c - seg.start) / (seg.end - seg.start) * (seg.hi - seg.lo)
                    };
                    let x = x.clamp(seg.lo, seg.hi);
                    if a {
                        parts.push((seg.lo, x));
                    } else {
                        parts.push((x, seg.hi));
                    }
                }
            }
        }
        IntervalSet::normalize(parts).expect("segment endpoints are finite")
    }

    pub fn negated(&self) -> PiecewiseAffine {
        PiecewiseAffine {
            breaks: self.breaks.clone(),
            starts: self.starts.iter().map(|v| -v).collect(),
            ends: self.ends.iter().map(|v| -v).collect(),
            tail_lo: -self.tail_lo,
            tail_hi: -self.tail_hi,
        }
    }

    /// `self - other` on the merged grid.
    pub fn sub(&self, other: &PiecewiseAffine) -> PiecewiseAffine {
        self.combine(other, |a, b| a - b)
    }

    pub fn add(&self, other: &PiecewiseAffine) -> PiecewiseAffine {
        self.combine(other, |a, b| a + b)
    }

    fn combine(&self, other: &PiecewiseAffine, op: impl Fn(f64, f64) -> f64) -> PiecewiseAffine {
        let grid = merge_sorted(&self.breaks, &other.breaks);
        let mut starts = Vec::with_capacity(grid.len());
        let mut ends = Vec::with_capacity(grid.len());
        for w in grid.windows(2) {
            let a = self.segments_on(w[0], w[1]);
            let b = other.segments_on(w[0], w[1]);
            // the merged grid refines both, so each side is a single segment
            starts.push(op(a[0].start, b[0].start));
            ends.push(op(a[0].end, b[0].end));
        }
        PiecewiseAffine {
            breaks: grid,
            starts,
            ends,
            tail_lo: op(self.tail_lo, other.tail_lo),
            tail_hi: op(self.tail_hi, other.tail_hi),
        }
    }

    /// `(inf, sup)` of `h` over the open interval `(lo, hi)`.
    pub fn extrema_open(&self, lo: f64, hi: f64) -> (f64, f64) {
        let mut inf = f64::INFINITY;
        let mut sup = f64::NEG_INFINITY;
        for seg in self.segments_on(lo, hi) {
            for v in [seg.start, seg.end] {
                inf = inf.min(v);
                sup = sup.max(v);
            }
        }
        (inf, sup)
    }

    /// `sup_{x ∈ s} |h(x)|`, taken over the closure of each part.
    pub fn sup_abs_over(&self, s: &IntervalSet) -> f64 {
        s.parts()
            .iter()
            .flat_map(|p| self.segments_on(p.lo(), p.hi()))
            .fold(0.0, |m, seg| m.max(seg.start.abs()).max(seg.end.abs()))
    }
}

/// Result of [`markov_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovReport {
    pub threshold: f64,
    /// `μ{|f| >= a}`
    pub lhs: f64,
    /// `‖f‖₁ / a`
    pub rhs: f64,
    pub holds: bool,
}

/// Markov's inequality `μ{|f| >= a} <= ‖f‖₁ / a`.
pub fn markov_check(f: &StepFunction, a: f64) -> Result<MarkovReport> {
    positive("a", a)?;
    let lhs = f.abs().superlevel_set(a, Level::AtLeast).measure();
    let rhs = f.l1_norm_total() / a;
    Ok(MarkovReport { threshold: a, lhs, rhs, holds: lhs <= rhs })
}

/// Radius `2(k+1)` of the ball `B_k` centred at the origin.
pub fn ball_radius(k: u32) -> f64 {
    2.0 * (k as f64 + 1.0)
}

/// `f · 1_{B(0, 2(k+1))}`.
pub fn restrict_to_ball(f: &StepFunction, k: u32) -> StepFunction {
    let r = ball_radius(k);
    f.restrict(Interval::new(-r, r).expect("positive radius"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn step(b: &[f64], v: &[f64]) -> StepFunction {
        StepFunction::new(b.to_vec(), v.to_vec()).unwrap()
    }

    fn set(raw: &[(f64, f64)]) -> IntervalSet {
        IntervalSet::normalize(raw.iter().copied()).unwrap()
    }

    fn pairs(s: &IntervalSet) -> Vec<(f64, f64)> {
        s.parts().iter().map(|p| (p.lo(), p.hi())).collect()
    }

    #[test]
    fn construction_errors() {
        assert!(StepFunction::new(vec![0.0, 1.0], vec![]).is_err());
        assert_eq!(StepFunction::new(vec![1.0, 0.0], vec![1.0]), Err(Error::Unsorted));
        assert!(StepFunction::new(vec![0.0, 1.0], vec![f64::NAN]).is_err());
        assert!(PiecewiseLinear::new(vec![], vec![]).is_err());
        assert!(PiecewiseLinear::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn eval_and_limits() {
        let f = step(&[0.0, 1.0, 2.0], &[2.0, 3.0]);
        assert_eq!(f.eval(-0.5), 0.0);
        assert_eq!(f.eval(0.0), 2.0);
        assert_eq!(f.eval(1.0), 3.0);
        assert_eq!(f.eval(2.0), 0.0);
        assert_eq!(f.left_limit(1.0), 2.0);
        assert_eq!(f.left_limit(0.0), 0.0);
        assert_eq!(f.left_limit(2.0), 3.0);
        assert_eq!(f.left_limit(5.0), 0.0);
        assert_eq!(f.jumps(), vec![(0.0, 0.0, 2.0), (1.0, 2.0, 3.0), (2.0, 3.0, 0.0)]);
    }

    #[test]
    fn integrate_examples() {
        let ind = step(&[0.0, 1.0], &[1.0]);
        assert_eq!(ind.integrate(&set(&[(-5.0, 5.0)])), 1.0);
        let f = step(&[0.0, 1.0, 2.0], &[2.0, 3.0]);
        assert_eq!(f.integrate(&set(&[(0.5, 1.5)])), 2.5);
        assert_eq!(f.integrate(&IntervalSet::empty()), 0.0);
    }

    #[test]
    fn l1_examples() {
        assert_eq!(step(&[0.0, 1.0], &[1.0]).l1_norm(&set(&[(-10.0, 10.0)])), 1.0);
        assert_eq!(step(&[0.0, 3.0], &[-2.0]).l1_norm(&set(&[(-10.0, 10.0)])), 6.0);
        assert_eq!(step(&[0.0, 3.0], &[-2.0]).l1_norm(&IntervalSet::empty()), 0.0);
        assert_eq!(step(&[0.0, 3.0], &[-2.0]).l1_norm_total(), 6.0);
    }

    #[test]
    fn superlevel_examples() {
        let f = step(&[0.0, 1.0, 2.0], &[2.0, 3.0]);
        assert_eq!(pairs(&f.superlevel_set(2.5, Level::Above)), [(1.0, 2.0)]);
        assert_eq!(pairs(&f.superlevel_set(-1.0, Level::Above)), [(0.0, 2.0)]);
        assert_eq!(pairs(&f.superlevel_set(3.0, Level::Above)), []);
        assert_eq!(pairs(&f.superlevel_set(3.0, Level::AtLeast)), [(1.0, 2.0)]);

        let ramp = PiecewiseLinear::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        let w = Interval::new(-1.0, 2.0).unwrap();
        assert_eq!(pairs(&ramp.superlevel_set(0.5, Level::Above, w)), [(0.5, 2.0)]);
        assert_eq!(pairs(&ramp.superlevel_set(-0.5, Level::Above, w)), [(-1.0, 2.0)]);
    }

    #[test]
    fn markov_examples() {
        let f = step(&[0.0, 1.0], &[1.0]);
        let r = markov_check(&f, 0.5).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (1.0, 2.0, true));
        let r = markov_check(&f, 2.0).unwrap();
        assert_eq!((r.lhs, r.rhs, r.holds), (0.0, 0.5, true));
        assert!(markov_check(&f, 0.0).is_err());
    }

    #[test]
    fn restriction_examples() {
        let f = step(&[0.0, 5.0], &[1.0]);
        assert_eq!(restrict_to_ball(&f, 0), step(&[0.0, 2.0], &[1.0]));
        let g = step(&[-1.0, 0.0, 1.5], &[4.0, -1.0]);
        assert_eq!(restrict_to_ball(&g, 0), g);
        let wide = step(&[-9.0, 9.0], &[1.0]);
        assert_eq!(restrict_to_ball(&wide, 0), step(&[-2.0, 2.0], &[1.0]));
        // a hole in the middle survives as an explicit zero piece
        let gappy = step(&[-3.0, -1.0, 1.0, 3.0], &[1.0, 0.0, 2.0]);
        assert_eq!(restrict_to_ball(&gappy, 0), step(&[-2.0, -1.0, 1.0, 2.0], &[1.0, 0.0, 2.0]));
    }

    #[test]
    fn pwl_eval_and_integral() {
        let g = PiecewiseLinear::new(vec![0.0, 1.0, 3.0], vec![0.0, 2.0, 0.0]).unwrap();
        assert_eq!(g.eval(-4.0), 0.0);
        assert_eq!(g.eval(0.5), 1.0);
        assert_eq!(g.eval(2.0), 1.0);
        assert_eq!(g.eval(9.0), 0.0);
        assert_eq!(g.integrate(&set(&[(-1.0, 4.0)])), 3.0);
        assert_eq!(g.lipschitz(), 2.0);
        let c = PiecewiseLinear::constant(2.0).unwrap();
        assert_eq!(c.integrate(&set(&[(5.0, 6.0)])), 2.0);
    }

    #[test]
    fn mixed_difference_abs_integral() {
        // f = 1_[0,1), g ramps 0 -> 1 on [-1, 1]
        let f = step(&[0.0, 1.0], &[1.0]);
        let g = PiecewiseLinear::new(vec![-1.0, 1.0], vec![0.0, 1.0]).unwrap();
        let d = f.to_affine().sub(&g.to_affine());
        // on [-1,0): -(x+1)/2 ; on [0,1): 1-(x+1)/2 ; beyond 1: -1
        assert_eq!(d.eval(-1.0), 0.0);
        assert_eq!(d.eval(0.0), 0.5);
        assert_eq!(d.eval(2.0), -1.0);
        let w = set(&[(-2.0, 2.0)]);
        assert_eq!(d.abs_integrate(&w), 0.25 + 0.25 + 1.0);
        assert_eq!(d.integrate(&w), -0.25 + 0.25 - 1.0);
        assert_eq!(d.sup_abs_over(&set(&[(-1.0, 1.0)])), 0.5);
    }

    #[test]
    fn sign_change_abs_integral() {
        let g = PiecewiseLinear::new(vec![0.0, 1.0], vec![-1.0, 1.0]).unwrap();
        assert_eq!(g.to_affine().abs_integrate(&set(&[(0.0, 1.0)])), 0.5);
        let h = PiecewiseLinear::new(vec![0.0, 4.0], vec![-1.0, 3.0]).unwrap();
        // triangles: width 1 height 1, width 3 height 3
        assert_eq!(h.to_affine().abs_integrate(&set(&[(0.0, 4.0)])), 0.5 + 4.5);
    }

    #[test]
    fn abs_superlevel_of_difference() {
        let d = PiecewiseLinear::new(vec![0.0, 2.0], vec![-2.0, 2.0]).unwrap().to_affine();
        let w = Interval::new(0.0, 2.0).unwrap();
        assert_eq!(pairs(&d.abs_superlevel_set(1.0, Level::AtLeast, w)), [(0.0, 0.5), (1.5, 2.0)]);
    }
}
