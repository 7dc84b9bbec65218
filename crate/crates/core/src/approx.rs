//! Separation, extension and approximation constructions on the real line:
//! Urysohn separating functions, Tietze extensions, Lusin compacts,
//! continuous L¹ approximants and Egorov exceptional sets.

use alloc::vec::Vec;

use crate::error::{finite, positive, Error, Result};
use crate::function::{Level, PiecewiseAffine, PiecewiseLinear, StepFunction};
use crate::interval::{Interval, IntervalSet};

/// Finite union of closed intervals `[lo, hi]`; single points are allowed.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ClosedSet {
    parts: Vec<(f64, f64)>,
}

impl ClosedSet {
    /// Sorts the parts and merges any that meet.
    pub fn new<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut parts = Vec::new();
        for (lo, hi) in raw {
            finite(lo)?;
            finite(hi)?;
            if lo > hi {
                return Err(Error::Reversed { lo, hi });
            }
            parts.push((lo, hi));
        }
        Ok(Self::merged(parts))
    }

    fn merged(mut parts: Vec<(f64, f64)>) -> Self {
        parts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match out.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => out.push((lo, hi)),
            }
        }
        ClosedSet { parts: out }
    }

    /// Closure of a half-open interval set.
    pub fn closure_of(s: &IntervalSet) -> Self {
        Self::merged(s.parts().iter().map(|p| (p.lo(), p.hi())).collect())
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.parts.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// The same point set up to finitely many points.
    pub fn to_interval_set(&self) -> IntervalSet {
        IntervalSet::normalize(self.parts.iter().copied()).expect("finite endpoints")
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|&(lo, hi)| hi - lo).fold(0.0, |acc, v| acc + v)
    }

    /// `self \ (lo, hi)`, still closed.
    pub fn remove_open(&self, lo: f64, hi: f64) -> ClosedSet {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        for &(a, b) in &self.parts {
            if b <= lo || a >= hi {
                out.push((a, b));
                continue;
            }
            if a <= lo {
                out.push((a, lo));
            }
            if b >= hi {
                out.push((hi, b));
            }
        }
        ClosedSet { parts: out }
    }
}

/// Distance from `x` to the nearest point of `a`.
pub fn dist_to_set(x: f64, a: &ClosedSet) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(a.parts
        .iter()
        .map(|&(lo, hi)| {
            if x < lo {
                lo - x
            } else if x > hi {
                x - hi
            } else {
                0.0
            }
        })
        .fold(f64::INFINITY, f64::min))
}

/// `inf {|a - b| : a ∈ A, b ∈ B}`, from interval endpoints.
pub fn set_distance(a: &ClosedSet, b: &ClosedSet) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best = f64::INFINITY;
    for &(alo, ahi) in &a.parts {
        for &(blo, bhi) in &b.parts {
            let d = if bhi < alo {
                alo - bhi
            } else if ahi < blo {
                blo - ahi
            } else {
                0.0
            };
            best = best.min(d);
        }
    }
    Ok(best)
}

/// A separating function together with its scale `eps = dist(A, B)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Separator {
    pub function: PiecewiseLinear,
    pub eps: f64,
}

/// `x ↦ min(dist(x, A), ε) / ε` with `ε = dist(A, B)`.
///
/// The result is 0 on `A`, 1 on `B`, takes values in `[0, 1]` and is
/// `1/ε`-Lipschitz.
pub fn urysohn_function(a: &ClosedSet, b: &ClosedSet) -> Result<Separator> {
    let eps = set_distance(a, b)?;
    if eps <= 0.0 {
        return Err(Error::NotSeparated);
    }
    // every kink of min(d_A, ε) is among these; B's endpoints pin the value 1 exactly
    let mut knots = Vec::with_capacity(6 * a.parts.len() + 2 * b.parts.len());
    for (i, &(lo, hi)) in a.parts.iter().enumerate() {
        knots.extend_from_slice(&[lo - eps, lo, hi, hi + eps]);
        if let Some(&(next, _)) = a.parts.get(i + 1) {
            knots.push(hi + 0.5 * (next - hi));
        }
    }
    for &(lo, hi) in &b.parts {
        knots.push(lo);
        knots.push(hi);
    }
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    let values = knots.iter().map(|&x| dist_to_set(x, a).map(|d| d.min(eps) / eps)).collect::<Result<Vec<_>>>()?;
    Ok(Separator { function: PiecewiseLinear::new(knots, values)?, eps })
}

/// Extends `f|_A` to a continuous `g` on ℝ with `g = f` on `A` and `|g| <= bound`.
///
/// Gaps between consecutive parts of `A` are bridged linearly; beyond the
/// extremes `g` is constant.
pub fn tietze_extend(a: &ClosedSet, f: &PiecewiseLinear, bound: f64) -> Result<PiecewiseLinear> {
    positive("bound", bound)?;
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut knots = Vec::new();
    for &(lo, hi) in &a.parts {
        knots.push(lo);
        knots.extend(f.knots().iter().copied().filter(|&k| lo < k && k < hi));
        if hi > lo {
            knots.push(hi);
        }
    }
    let mut values = Vec::with_capacity(knots.len());
    for &x in &knots {
        let v = f.eval(x);
        if v.abs() > bound {
            return Err(Error::BoundViolated { at: x, value: v, bound });
        }
        values.push(v);
    }
    PiecewiseLinear::new(knots, values)
}

/// Output of [`lusin_compact`].
#[derive(Debug, Clone, PartialEq)]
pub struct LusinCompact {
    pub compact: ClosedSet,
    /// Jump points of `f` cut out of `closure(A)`.
    pub excluded: Vec<f64>,
    /// Half-width of each removed open neighbourhood.
    pub margin: f64,
    /// `μ(A \ K)`
    pub gap: f64,
}

/// Compact `K ⊆ closure(A)` avoiding every jump of `f`, with `μ(A \ K) < eps`.
///
/// Each jump point lying in `closure(A)` is removed with an open margin of
/// `eps / (4P)`, `P` being the number of such points.
pub fn lusin_compact(f: &StepFunction, a: &IntervalSet, eps: f64) -> Result<LusinCompact> {
    positive("eps", eps)?;
    let closure = ClosedSet::closure_of(a);
    let excluded: Vec<f64> = f.jumps().into_iter().map(|j| j.0).filter(|&x| closure.contains(x)).collect();
    if excluded.is_empty() {
        let gap = a.diff(&closure.to_interval_set()).measure();
        return Ok(LusinCompact { compact: closure, excluded, margin: 0.0, gap });
    }
    let margin = eps / (4.0 * excluded.len() as f64);
    let compact = excluded.iter().fold(closure, |k, &x| k.remove_open(x - margin, x + margin));
    let gap = a.diff(&compact.to_interval_set()).measure();
    Ok(LusinCompact { compact, excluded, margin, gap })
}

/// A continuous approximant `g_n` of a step function and its L¹ error.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub n: u32,
    pub function: PiecewiseLinear,
    /// `∫_E |f - g_n|`, integrated piecewise.
    pub l1_error: f64,
    /// The same quantity from the triangle-area formula (valid when `E` covers every ramp).
    pub ramp_error: f64,
    pub jump_count: usize,
    pub max_jump: f64,
}

impl Approximant {
    /// `J · V / (2n)`.
    pub fn bound(&self) -> f64 {
        self.jump_count as f64 * self.max_jump / (2.0 * self.n as f64)
    }
}

/// Replaces each jump of `f` by a linear ramp reaching `1/n` to each side of it.
///
/// Ramps of neighbouring jumps never overlap: a ramp stops at the midpoint
/// to the next jump. A full ramp of height `h` costs `|h| / (2n)` in L¹.
pub fn continuous_approx_l1(f: &StepFunction, e: &IntervalSet, n: u32) -> Result<Approximant> {
    if n == 0 {
        return Err(Error::NonPositive { name: "n", value: 0.0 });
    }
    let reach = 1.0 / n as f64;
    let jumps = f.jumps();
    let mut knots = Vec::with_capacity(2 * jumps.len());
    let mut values = Vec::with_capacity(2 * jumps.len());
    let mut ramp_error = 0.0;
    let mut max_jump: f64 = 0.0;
    for (i, &(x, left, right)) in jumps.iter().enumerate() {
        let lo = match i.checked_sub(1).map(|p| jumps[p].0) {
            Some(prev) => (x - reach).max(prev + 0.5 * (x - prev)),
            None => x - reach,
        };
        let hi = match jumps.get(i + 1) {
            Some(&(next, _, _)) => (x + reach).min(x + 0.5 * (next - x)),
            None => x + reach,
        };
        if knots.last() != Some(&lo) {
            knots.push(lo);
            values.push(left);
        }
        knots.push(hi);
        values.push(right);

        let h = (right - left).abs();
        let (wl, wr) = (x - lo, hi - x);
        ramp_error += h * (wl * wl + wr * wr) / (2.0 * (wl + wr));
        max_jump = max_jump.max(h);
    }
    let function =
        if knots.is_empty() { PiecewiseLinear::constant(0.0)? } else { PiecewiseLinear::new(knots, values)? };
    let l1_error = f.to_affine().sub(&function.to_affine()).abs_integrate(e);
    Ok(Approximant { n, function, l1_error, ramp_error, jump_count: jumps.len(), max_jump })
}

/// Built-in sequence families for Egorov's construction.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceKind {
    /// `f_j(x) = x^j`; limit 0 almost everywhere on `[-1, 1]`.
    Power,
    /// `f_j` rises linearly from 0 at `at` to `height` at `at + 1/j`;
    /// limit `height · 1_[at, ∞)`.
    ShiftedRamp { at: f64, height: f64 },
    /// Explicit terms `f_1, f_2, …` and their limit.
    Steps { terms: Vec<StepFunction>, limit: StepFunction },
}

/// A sequence `f_j → g` on a domain `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSequence {
    pub kind: SequenceKind,
    pub domain: IntervalSet,
    /// Trust `|f_j - g|` to be pointwise non-increasing in `j`.
    pub tail_monotone: bool,
}

impl FunctionSequence {
    /// Whether `sup_{j >= n} |f_j - g| = |f_n - g|` is known without scanning.
    fn monotone_tail(&self) -> bool {
        match self.kind {
            SequenceKind::Power | SequenceKind::ShiftedRamp { .. } => true,
            SequenceKind::Steps { .. } => self.tail_monotone,
        }
    }

    /// Number of terms available, `None` when unbounded.
    fn available(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Steps { terms, .. } => Some(terms.len()),
            _ => None,
        }
    }

    fn window(&self) -> Option<Interval> {
        let hull = self.domain.hull()?;
        Interval::new(hull.lo() - 1.0, hull.hi() + 1.0).ok()
    }

    /// `f_j - g` as a piecewise-affine function (not used for `Power`).
    fn difference(&self, j: usize) -> Option<PiecewiseAffine> {
        match &self.kind {
            SequenceKind::Power => None,
            &SequenceKind::ShiftedRamp { at, height } => {
                let term = PiecewiseLinear::new(alloc::vec![at, at + 1.0 / j as f64], alloc::vec![0.0, height]).ok()?;
                let end = self.window().map_or(at + 1.0, |w| w.hi().max(at + 1.0));
                let limit = StepFunction::indicator(at, end, height).ok()?;
                Some(term.to_affine().sub(&limit.to_affine()))
            }
            SequenceKind::Steps { terms, limit } => {
                let term = terms.get(j.checked_sub(1)?)?;
                Some(term.to_affine().sub(&limit.to_affine()))
            }
        }
    }

    /// `{x ∈ A | |f_j(x) - g(x)| > t}`.
    pub fn exceedance(&self, j: usize, t: f64) -> IntervalSet {
        let Some(window) = self.window() else {
            return IntervalSet::empty();
        };
        match &self.kind {
            SequenceKind::Power => {
                let r = power_root(t, j);
                let outside = IntervalSet::normalize([(window.lo(), -r), (r, window.hi())]).expect("finite window");
                // the point -r itself is null
                self.domain.intersect(&outside)
            }
            _ => match self.difference(j) {
                Some(d) => self.domain.intersect(&d.abs_superlevel_set(t, Level::Above, window)),
                None => IntervalSet::empty(),
            },
        }
    }

    /// `sup_{x ∈ s} |f_j(x) - g(x)|` over the closure of `s`.
    pub fn sup_deviation(&self, j: usize, s: &IntervalSet) -> f64 {
        match &self.kind {
            SequenceKind::Power => s.endpoints().map(|x| libm::pow(x.abs(), j as f64)).fold(0.0, f64::max),
            _ => self.difference(j).map_or(0.0, |d| d.sup_abs_over(s)),
        }
    }
}

/// Largest `r` with `r^j <= t`, for `t > 0`.
fn power_root(t: f64, j: usize) -> f64 {
    let mut r = libm::pow(t, 1.0 / j as f64);
    while libm::pow(r, j as f64) > t {
        r = r.next_down();
    }
    r
}

/// One precision level `1/k` of the Egorov construction.
#[derive(Debug, Clone, PartialEq)]
pub struct EgorovLevel {
    pub k: usize,
    /// First index from which `|f_j - g| <= 1/k` off the exceptional set.
    pub n: usize,
    /// `eps / 2^k`
    pub budget: f64,
    /// Measure of this level's contribution to `B`.
    pub measure: f64,
    /// `sup_{A \ B} |f_n - g|`
    pub sup_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EgorovResult {
    pub exceptional: IntervalSet,
    pub measure: f64,
    pub levels: Vec<EgorovLevel>,
    /// Tail suprema were only verified up to a finite index.
    pub truncated: bool,
}

/// Builds `B = ∪_k {x ∈ A | sup_{j >= n_k} |f_j - g| > 1/k}` with each level
/// costing less than `eps / 2^k`, so `μ(B) < eps`.
pub fn egorov_exceptional(seq: &FunctionSequence, eps: f64, levels: usize, j_max: usize) -> Result<EgorovResult> {
    positive("eps", eps)?;
    if levels == 0 || j_max == 0 {
        return Err(Error::Invalid("levels and j_max must be at least 1"));
    }
    let last = seq.available().map_or(j_max, |len| len.min(j_max));
    let monotone = seq.monotone_tail();
    let truncated = !monotone;

    let tail_set = |n: usize, t: f64| -> IntervalSet {
        if monotone {
            seq.exceedance(n, t)
        } else {
            (n..=last).fold(IntervalSet::empty(), |acc, j| acc.union(&seq.exceedance(j, t)))
        }
    };

    let mut exceptional = IntervalSet::empty();
    let mut level_sets = Vec::with_capacity(levels);
    for k in 1..=levels {
        let t = 1.0 / k as f64;
        let budget = eps / libm::pow(2.0, k as f64);
        let fits = |n: usize| tail_set(n, t).measure() < budget;
        if last == 0 || !fits(last) {
            let best = if last == 0 { f64::INFINITY } else { tail_set(last, t).measure() };
            return Err(Error::BudgetUnattainable { level: k, j_max, budget, best });
        }
        // tail measures are non-increasing in n: binary search for the first fit
        let n = if monotone && seq.available().is_some() {
            (1..=last).find(|&n| fits(n)).unwrap_or(last)
        } else {
            let (mut lo, mut hi) = (1usize, last);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if fits(mid) {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo
        };
        let set = tail_set(n, t);
        exceptional = exceptional.union(&set);
        level_sets.push((k, n, budget, set.measure()));
    }

    let rest = seq.domain.diff(&exceptional);
    let levels = level_sets
        .into_iter()
        .map(|(k, n, budget, measure)| EgorovLevel {
            k,
            n,
            budget,
            measure,
            sup_deviation: seq.sup_deviation(n, &rest),
        })
        .collect();
    Ok(EgorovResult { measure: exceptional.measure(), exceptional, levels, truncated })
}
