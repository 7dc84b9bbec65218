//! Finite Vitali covering and the Hardy–Littlewood maximal operator.

use alloc::vec::Vec;

use crate::error::{positive, Result};
use crate::function::{PiecewiseAffine, StepFunction};
use crate::interval::{Ball, Interval, IntervalSet};

/// Greedy finite Vitali selection.
///
/// Repeatedly takes the largest ball disjoint from every ball already taken,
/// ties going to the lower index. Balls are open, so touching balls are
/// disjoint. Returns the selected indices in increasing order.
pub fn vitali_finite(balls: &[Ball]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..balls.len()).collect();
    order.sort_by(|&i, &j| balls[j].radius().total_cmp(&balls[i].radius()).then(i.cmp(&j)));
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        if chosen.iter().all(|&j| !balls[i].overlaps(&balls[j])) {
            chosen.push(i);
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Outcome of [`verify_vitali`].
#[derive(Debug, Clone, PartialEq)]
pub struct VitaliCheck {
    /// Every index of the candidate refers to an input ball.
    pub in_range: bool,
    /// Selected balls are pairwise disjoint.
    pub disjoint: bool,
    /// For each input ball, a selected ball that meets it, is at least as
    /// large, and whose 3× enlargement contains it.
    pub witnesses: Vec<Option<usize>>,
}

impl VitaliCheck {
    pub fn valid(&self) -> bool {
        self.in_range && self.disjoint && self.witnesses.iter().all(Option::is_some)
    }
}

/// Checks the three covering conditions for any candidate selection.
pub fn verify_vitali(balls: &[Ball], selection: &[usize]) -> VitaliCheck {
    let in_range = selection.iter().all(|&j| j < balls.len());
    let sel: Vec<usize> = selection.iter().copied().filter(|&j| j < balls.len()).collect();
    let disjoint =
        sel.iter().enumerate().all(|(a, &i)| sel[a + 1..].iter().all(|&j| i != j && !balls[i].overlaps(&balls[j])));
    let witnesses = balls
        .iter()
        .map(|bi| {
            sel.iter().copied().find(|&j| {
                let bj = &balls[j];
                bi.overlaps(bj) && bj.radius() >= bi.radius() && within_triple(bi, bj)
            })
        })
        .collect();
    VitaliCheck { in_range, disjoint, witnesses }
}

/// `inner ⊆ sball 3 outer`, on endpoints.
fn within_triple(inner: &Ball, outer: &Ball) -> bool {
    let r3 = 3.0 * outer.radius();
    outer.center() - r3 <= inner.lo() && inner.hi() <= outer.center() + r3
}

/// `(1/μ(B(x,r))) ∫_{B(x,r)} |f|`.
pub fn hl_max(f: &StepFunction, x: f64, r: f64) -> Result<f64> {
    positive("r", r)?;
    Ok(f.abs_integrate_interval(x - r, x + r) / (2.0 * r))
}

/// `sup_{r > 0} hl_max(f, x, r)`, exactly.
///
/// Between consecutive critical radii `|x - b|` the integral is affine in
/// `r`, so the average is monotone there; the supremum is attained at a
/// critical radius or approached as `r → 0⁺`.
pub fn hl_maximal(f: &StepFunction, x: f64) -> f64 {
    let at_zero = 0.5 * (f.left_limit(x).abs() + f.eval(x).abs());
    f.breakpoints()
        .iter()
        .map(|&b| (x - b).abs())
        .filter(|&r| r > 0.0)
        .map(|r| f.abs_integrate_interval(x - r, x + r) / (2.0 * r))
        .fold(at_zero, f64::max)
}

/// Maximal function of a piecewise-affine `h`, sampled on the critical radii
/// and the given radii. A lower bound for the true supremum.
pub fn hl_maximal_sampled(h: &PiecewiseAffine, x: f64, radii: impl IntoIterator<Item = f64>) -> f64 {
    let critical = h.breaks().iter().map(|&b| (x - b).abs());
    radii
        .into_iter()
        .chain(critical)
        .filter(|&r| r > 0.0)
        .map(|r| h.abs_integrate_interval(x - r, x + r) / (2.0 * r))
        .fold(0.0, f64::max)
}

/// Result of [`maximal_inequality_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalReport {
    pub c: f64,
    /// Measure of a certified superset of `{Mf > c}`.
    pub superlevel_measure: f64,
    /// Measure of a certified subset of `{Mf > c}`.
    pub lower_measure: f64,
    /// `3/c · ‖f‖₁`
    pub bound: f64,
    pub holds: bool,
    /// The certified superset itself.
    pub superlevel: IntervalSet,
}

/// Checks `μ{Mf > c} <= (3/c)‖f‖₁` with a certified over-approximation of the superlevel set.
///
/// Outside the support enlarged by `‖f‖₁/(2c)` the tail bound
/// `Mf(x) <= ‖f‖₁ / (2 dist(x, supp f))` rules every point out. Inside, cells
/// are bisected down to `grid_step` and classified by per-cell upper and
/// lower bounds on `Mf`; undecided cells of the finest size count as inside.
pub fn maximal_inequality_check(f: &StepFunction, c: f64, grid_step: f64) -> Result<MaximalReport> {
    positive("c", c)?;
    positive("grid_step", grid_step)?;
    let norm = f.l1_norm_total();
    let bound = 3.0 / c * norm;
    let Some(support) = f.support().filter(|_| norm > 0.0) else {
        return Ok(MaximalReport {
            c,
            superlevel_measure: 0.0,
            lower_measure: 0.0,
            bound,
            holds: true,
            superlevel: IntervalSet::empty(),
        });
    };
    let reach = norm / (2.0 * c);
    let lo = support.lo() - reach;
    let hi = support.hi() + reach;

    let mut width = grid_step;
    while (hi - lo) / width > 256.0 {
        width *= 2.0;
    }
    let bounds = CellBounds::new(f);
    let mut surely = Vec::new();
    let mut maybe = Vec::new();
    let mut stack: Vec<(f64, f64)> = Vec::new();
    let mut p = lo;
    while p < hi {
        let q = (p + width).min(hi);
        stack.push((p, q));
        p = q;
    }
    while let Some((p, q)) = stack.pop() {
        if bounds.upper(p, q) <= c {
            continue;
        }
        if bounds.lower(p, q) > c {
            surely.push((p, q));
        } else if q - p <= grid_step {
            maybe.push((p, q));
        } else {
            let mid = p + 0.5 * (q - p);
            stack.push((mid, q));
            stack.push((p, mid));
        }
    }
    let lower = IntervalSet::normalize(surely.iter().copied()).expect("finite cells");
    let superlevel = lower.union(&IntervalSet::normalize(maybe).expect("finite cells"));
    let superlevel_measure = superlevel.measure();
    Ok(MaximalReport {
        c,
        superlevel_measure,
        lower_measure: lower.measure(),
        bound,
        holds: superlevel_measure <= bound,
        superlevel,
    })
}

/// Per-cell bounds on `Mf` over `x ∈ [p, q]`.
struct CellBounds<'a> {
    f: &'a StepFunction,
    /// `Mf <= sup |f|` everywhere.
    sup: f64,
}

impl<'a> CellBounds<'a> {
    fn new(f: &'a StepFunction) -> Self {
        CellBounds { f, sup: f.max_abs() }
    }

    fn mass(&self, a: f64, b: f64) -> f64 {
        if a < b {
            self.f.abs_integrate_interval(a, b)
        } else {
            0.0
        }
    }

    /// `sup_{r >= r_min} mass(a - r, b + r) / (2r)`; the ratio is monotone
    /// between the radii where an end crosses a breakpoint.
    fn widening_sup(&self, a: f64, b: f64, r_min: f64, include_min: bool) -> f64 {
        let kinks = self.f.breakpoints().iter().flat_map(|&bp| [a - bp, bp - b]);
        let start = include_min.then_some(r_min);
        kinks.filter(|&r| r > r_min).chain(start).map(|r| self.mass(a - r, b + r) / (2.0 * r)).fold(0.0, f64::max)
    }

    /// Small balls see at most the local essential sup; large balls around
    /// any `x ∈ [p, q]` sit inside `(p - r, q + r)`.
    fn upper(&self, p: f64, q: f64) -> f64 {
        let reach = 2.0 * (q - p);
        let (lo, hi) = (p - reach, q + reach);
        let window = Interval::new(lo, hi).expect("non-empty cell");
        let local = self
            .f
            .pieces()
            .filter(|(piece, _)| piece.intersect(&window).is_some())
            .fold(0.0, |m: f64, (_, v)| m.max(v.abs()));
        local.max(self.widening_sup(p, q, reach, true)).min(self.sup)
    }

    /// Balls of radius `r > (q-p)/2` around any `x ∈ [p, q]` contain `(q - r, p + r)`.
    fn lower(&self, p: f64, q: f64) -> f64 {
        self.widening_sup(q, p, 0.5 * (q - p), false)
    }
}
