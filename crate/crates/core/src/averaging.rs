//! Ball averages, Lebesgue points, and limsup/liminf along shrinking punctured balls.
//!
//! Limits `r → 0⁺` are taken along a finite geometric [`RadiusSchedule`].
//! Step and piecewise-linear functions stabilise after finitely many radii,
//! so the tail of the schedule decides the limit.

use alloc::vec::Vec;

use crate::error::{positive, Error, Result};
use crate::function::{PiecewiseAffine, PiecewiseLinear, StepFunction};
use crate::interval::{Interval, IntervalSet};

/// Radii `r0 · factor^i` for `i < steps`, with a stabilisation tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusSchedule {
    r0: f64,
    factor: f64,
    steps: usize,
    tol: f64,
}

impl Default for RadiusSchedule {
    fn default() -> Self {
        RadiusSchedule { r0: 1.0, factor: 0.5, steps: 24, tol: 1e-9 }
    }
}

impl RadiusSchedule {
    pub fn new(r0: f64, factor: f64, steps: usize, tol: f64) -> Result<Self> {
        positive("r0", r0)?;
        positive("tol", tol)?;
        if !(factor > 0.0 && factor < 1.0) {
            return Err(Error::Schedule("factor must lie in (0, 1)"));
        }
        if steps < 4 {
            return Err(Error::Schedule("at least 4 steps are required"));
        }
        Ok(RadiusSchedule { r0, factor, steps, tol })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn factor(&self) -> f64 {
        self.factor
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Same radii, different tolerance.
    pub fn with_tol(self, tol: f64) -> Result<Self> {
        Self::new(self.r0, self.factor, self.steps, tol)
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        let mut r = self.r0;
        (0..self.steps).map(move |_| {
            let out = r;
            r *= self.factor;
            out
        })
    }

    /// Length of the deciding tail, `⌈steps / 4⌉`.
    pub fn tail_len(&self) -> usize {
        self.steps.div_ceil(4)
    }

    /// Largest radius in the deciding tail.
    pub fn tail_start_radius(&self) -> f64 {
        self.radii().nth(self.steps - self.tail_len()).expect("steps >= 4")
    }

    pub fn last_radius(&self) -> f64 {
        self.radii().last().expect("steps >= 4")
    }
}

/// `(1/μ(A)) ∫_A |f|`, or 0 when `μ(A) = 0`.
pub fn iavg(f: &StepFunction, a: &IntervalSet) -> f64 {
    let m = a.measure();
    if m > 0.0 {
        f.l1_norm(a) / m
    } else {
        0.0
    }
}

/// Average of `|f(y) - f(x)|` over `B(x, r)`.
pub fn davg(f: &StepFunction, x: f64, r: f64) -> Result<f64> {
    positive("r", r)?;
    let fx = f.eval(x);
    let (lo, hi) = (x - r, x + r);
    // pieces inside the ball, plus the zero tails the ball reaches
    let mut total = 0.0;
    let mut covered = 0.0;
    for (p, v) in f.pieces() {
        if let Some(q) = p.intersect(&Interval::new(lo, hi).expect("r > 0")) {
            total += (v - fx).abs() * q.len();
            covered += q.len();
        }
    }
    total += fx.abs() * ((hi - lo) - covered);
    Ok(total / (hi - lo))
}

/// Verdict of [`is_lebesgue_pt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointStatus {
    Lebesgue,
    NotLebesgue,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueTrace {
    pub status: PointStatus,
    /// `(radius, davg)` for every radius in the schedule.
    pub trace: Vec<(f64, f64)>,
}

/// Decides whether `davg(f, x, r) → 0` along the schedule.
///
/// The last `⌈steps/4⌉` averages decide: all below `tol` and non-increasing
/// up to `2·tol` means yes, all at least `tol` means no.
pub fn is_lebesgue_pt(f: &StepFunction, x: f64, sched: &RadiusSchedule) -> LebesgueTrace {
    let trace: Vec<(f64, f64)> =
        sched.radii().map(|r| (r, davg(f, x, r).expect("schedule radii are positive"))).collect();
    let tail = &trace[trace.len() - sched.tail_len()..];
    let tol = sched.tol();
    let small = tail.iter().all(|&(_, d)| d < tol);
    let settling = tail.windows(2).all(|w| w[1].1 <= w[0].1 + 2.0 * tol);
    let away = tail.iter().all(|&(_, d)| d >= tol);
    let status = if small && settling {
        PointStatus::Lebesgue
    } else if away {
        PointStatus::NotLebesgue
    } else {
        PointStatus::Undecided
    };
    LebesgueTrace { status, trace }
}

/// Functions whose extrema over punctured balls are computable exactly.
pub trait PuncturedExtrema {
    /// `(inf, sup)` of `f` over `B(a, r) \ {a}`.
    fn punctured_extrema(&self, a: f64, r: f64) -> (f64, f64);
}

impl PuncturedExtrema for PiecewiseAffine {
    fn punctured_extrema(&self, a: f64, r: f64) -> (f64, f64) {
        // pieces are affine on open sets, so deleting `a` leaves the bounds unchanged
        self.extrema_open(a - r, a + r)
    }
}

impl PuncturedExtrema for StepFunction {
    fn punctured_extrema(&self, a: f64, r: f64) -> (f64, f64) {
        self.to_affine().punctured_extrema(a, r)
    }
}

impl PuncturedExtrema for PiecewiseLinear {
    fn punctured_extrema(&self, a: f64, r: f64) -> (f64, f64) {
        self.to_affine().punctured_extrema(a, r)
    }
}

/// `lim sup_{x → a, x ≠ a} f(x)` as the stabilised tail of punctured-ball suprema.
pub fn lime_sup<F: PuncturedExtrema + ?Sized>(f: &F, a: f64, sched: &RadiusSchedule) -> f64 {
    sched.radii().map(|r| f.punctured_extrema(a, r).1).last().expect("steps >= 4")
}

/// `lim inf_{x → a, x ≠ a} f(x)`.
pub fn lime_inf<F: PuncturedExtrema + ?Sized>(f: &F, a: f64, sched: &RadiusSchedule) -> f64 {
    sched.radii().map(|r| f.punctured_extrema(a, r).0).last().expect("steps >= 4")
}

/// Grid estimate of the set of non-Lebesgue points.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    /// Grid points judged not Lebesgue or undecided.
    pub flagged_points: Vec<f64>,
    /// Union of `[x - step, x + step)` over flagged points.
    pub flagged: IntervalSet,
    pub measure: f64,
}

/// Grid points `i · step` covering `[lo, hi]` (one extra step on each side).
pub fn grid_points(lo: f64, hi: f64, step: f64) -> impl Iterator<Item = f64> {
    let first = libm::floor(lo / step) as i64 - 1;
    let last = libm::ceil(hi / step) as i64 + 1;
    (first..=last).map(move |i| i as f64 * step)
}

/// Neighbourhood union `∪ [x - step, x + step)`.
pub fn neighbourhoods(points: &[f64], step: f64) -> IntervalSet {
    IntervalSet::normalize(points.iter().map(|&x| (x - step, x + step))).expect("finite points")
}

/// Scans the support of `f` on a grid and collects points that fail the detector.
pub fn non_lebesgue_scan(f: &StepFunction, grid_step: f64, sched: &RadiusSchedule) -> Result<ScanResult> {
    positive("grid_step", grid_step)?;
    let Some(support) = f.support() else {
        return Ok(ScanResult { flagged_points: Vec::new(), flagged: IntervalSet::empty(), measure: 0.0 });
    };
    let flagged_points: Vec<f64> = grid_points(support.lo(), support.hi(), grid_step)
        .filter(|&x| is_lebesgue_pt(f, x, sched).status != PointStatus::Lebesgue)
        .collect();
    let flagged = neighbourhoods(&flagged_points, grid_step);
    Ok(ScanResult { measure: flagged.measure(), flagged, flagged_points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn set(raw: &[(f64, f64)]) -> IntervalSet {
        IntervalSet::normalize(raw.iter().copied()).unwrap()
    }

    fn indicator() -> StepFunction {
        StepFunction::indicator(0.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn schedule_validation() {
        assert!(RadiusSchedule::new(1.0, 1.0, 10, 1e-9).is_err());
        assert!(RadiusSchedule::new(1.0, 0.5, 3, 1e-9).is_err());
        assert!(RadiusSchedule::new(0.0, 0.5, 10, 1e-9).is_err());
        let s = RadiusSchedule::default();
        assert_eq!(s.radii().count(), 24);
        assert_eq!(s.last_radius(), libm::pow(0.5, 23.0));
        assert_eq!(s.tail_len(), 6);
        assert_eq!(s.tail_start_radius(), libm::pow(0.5, 18.0));
    }

    #[test]
    fn iavg_examples() {
        let five = StepFunction::indicator(-10.0, 10.0, 5.0).unwrap();
        assert_eq!(iavg(&five, &set(&[(0.0, 2.0)])), 5.0);
        assert_eq!(iavg(&indicator(), &set(&[(0.0, 2.0)])), 0.5);
        assert_eq!(iavg(&indicator(), &IntervalSet::empty()), 0.0);
    }

    #[test]
    fn davg_examples() {
        let five = StepFunction::indicator(-10.0, 10.0, 5.0).unwrap();
        assert_eq!(davg(&five, 1.0, 0.5).unwrap(), 0.0);
        let heaviside = StepFunction::indicator(0.0, 100.0, 1.0).unwrap();
        for r in [0.5, 0.25, 1e-3] {
            assert_eq!(davg(&heaviside, 0.0, r).unwrap(), 0.5);
        }
        assert_eq!(davg(&indicator(), 0.5, 0.25).unwrap(), 0.0);
        // ball sticks out of the support: the zero tail counts
        assert_eq!(davg(&indicator(), 0.5, 1.0).unwrap(), 0.5);
        assert!(davg(&indicator(), 0.5, 0.0).is_err());
    }

    #[test]
    fn lebesgue_point_detector() {
        let s = RadiusSchedule::default();
        let five = StepFunction::indicator(-10.0, 10.0, 5.0).unwrap();
        assert_eq!(is_lebesgue_pt(&five, 3.0, &s).status, PointStatus::Lebesgue);
        let heaviside = StepFunction::indicator(0.0, 100.0, 1.0).unwrap();
        let t = is_lebesgue_pt(&heaviside, 0.0, &s);
        assert_eq!(t.status, PointStatus::NotLebesgue);
        assert!(t.trace.iter().all(|&(_, d)| d == 0.5));
        assert_eq!(is_lebesgue_pt(&indicator(), 0.5, &s).status, PointStatus::Lebesgue);
    }

    #[test]
    fn undecided_when_breakpoint_inside_tail() {
        // breakpoint at distance 2^-20 sits between tail radii 2^-18 and 2^-23
        let x = libm::pow(0.5, 20.0);
        let s = RadiusSchedule::default();
        assert_eq!(is_lebesgue_pt(&indicator(), x, &s).status, PointStatus::Undecided);
    }

    #[test]
    fn lime_examples() {
        let s = RadiusSchedule::default();
        let heaviside = StepFunction::indicator(0.0, 100.0, 1.0).unwrap();
        assert_eq!(lime_sup(&heaviside, 0.0, &s), 1.0);
        assert_eq!(lime_inf(&heaviside, 0.0, &s), 0.0);
        assert_eq!(lime_sup(&indicator(), 0.5, &s), 1.0);
        assert_eq!(lime_inf(&indicator(), 0.5, &s), 1.0);
        let ramp = PiecewiseLinear::new(vec![0.0, 1.0], vec![0.0, 1.0]).unwrap();
        assert!((lime_sup(&ramp, 0.5, &s) - 0.5).abs() < 1e-6);
        assert!((lime_inf(&ramp, 0.5, &s) - 0.5).abs() < 1e-6);
        assert_eq!(lime_sup(&-&heaviside, 0.0, &s), -lime_inf(&heaviside, 0.0, &s));
    }

    /// `base` except at one point.
    struct Spiked {
        base: StepFunction,
        at: f64,
    }

    impl PuncturedExtrema for Spiked {
        fn punctured_extrema(&self, a: f64, r: f64) -> (f64, f64) {
            let (mut lo, mut hi) = self.base.punctured_extrema(a, r);
            if self.at != a && (a - r) < self.at && self.at < a + r {
                lo = lo.min(1.0);
                hi = hi.max(1.0);
            }
            (lo, hi)
        }
    }

    #[test]
    fn punctured_ball_ignores_spike_at_centre() {
        let s = RadiusSchedule::default();
        let f = Spiked { base: StepFunction::zero(), at: 2.0 };
        assert_eq!(lime_sup(&f, 2.0, &s), 0.0);
        // seen from a neighbouring centre the spike is inside every ball
        let near = 2.0 - libm::pow(0.5, 30.0);
        assert_eq!(lime_sup(&f, near, &s), 1.0);
    }

    #[test]
    fn scan_examples() {
        let s = RadiusSchedule::default();
        let five = StepFunction::indicator(-10.0, 10.0, 5.0).unwrap();
        // the support ends are jumps of the constant-on-support function
        let scan = non_lebesgue_scan(&five, 0.25, &s).unwrap();
        assert_eq!(scan.flagged_points, vec![-10.0, 10.0]);
        assert!(non_lebesgue_scan(&StepFunction::zero(), 0.25, &s).unwrap().flagged.is_empty());

        let step = 1.0 / 64.0;
        let scan = non_lebesgue_scan(&indicator(), step, &s).unwrap();
        assert_eq!(scan.flagged_points, vec![0.0, 1.0]);
        assert!(scan.measure <= 4.0 * (step + s.r0()));
        assert_eq!(scan.measure, 4.0 * step);
        let finer = non_lebesgue_scan(&indicator(), step / 2.0, &s.with_tol(0.5e-9).unwrap()).unwrap();
        assert!(finer.measure <= scan.measure / 2.0);
        assert!(non_lebesgue_scan(&indicator(), 0.0, &s).is_err());
    }
}
