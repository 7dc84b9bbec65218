//! Derivative of the indefinite integral at Lebesgue points, and Lebesgue densities.

use alloc::vec::Vec;

use crate::averaging::{grid_points, is_lebesgue_pt, neighbourhoods, PointStatus, RadiusSchedule};
use crate::error::{finite, positive, Error, Result};
use crate::function::StepFunction;
use crate::interval::{Interval, IntervalSet};

/// Lower end of the integration interval `(a, x]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowerBound {
    NegInfinity,
    At(f64),
}

impl LowerBound {
    fn below(&self, x: f64) -> bool {
        match *self {
            LowerBound::NegInfinity => true,
            LowerBound::At(a) => a < x,
        }
    }
}

/// `F(x) = ∫_{(a, x]} f`; zero when `x <= a`.
pub fn primitive(f: &StepFunction, a: LowerBound, x: f64) -> f64 {
    let Some(support) = f.support() else { return 0.0 };
    let lo = match a {
        LowerBound::NegInfinity => support.lo(),
        LowerBound::At(a) => a,
    };
    // endpoints are null, so (a, x] and [a, x) integrate alike
    if x <= lo {
        0.0
    } else {
        f.integrate_interval(lo, x)
    }
}

/// Difference-quotient probe at `x` with decreasing steps `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeProbe {
    x: f64,
    steps: Vec<f64>,
    symmetric: bool,
}

impl DerivativeProbe {
    pub fn new(x: f64, steps: Vec<f64>, symmetric: bool) -> Result<Self> {
        finite(x)?;
        if steps.is_empty() {
            return Err(Error::Invalid("probe needs at least one step"));
        }
        for &h in &steps {
            positive("h", h)?;
        }
        if !steps.windows(2).all(|w| w[1] < w[0]) {
            return Err(Error::Invalid("probe steps must strictly decrease"));
        }
        Ok(DerivativeProbe { x, steps, symmetric })
    }

    /// Steps `h0 · 2^-i`, `i < count`.
    pub fn halving(x: f64, h0: f64, count: usize, symmetric: bool) -> Result<Self> {
        let steps = (0..count).map(|i| h0 * libm::pow(0.5, i as f64)).collect();
        Self::new(x, steps, symmetric)
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn symmetric(&self) -> bool {
        self.symmetric
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtcVerdict {
    Pass,
    Fail,
    /// `x` is not a Lebesgue point, so the theorem says nothing.
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FtcReport {
    pub x: f64,
    /// Quotient at the smallest step.
    pub derivative_estimate: f64,
    pub f_at_x: f64,
    pub status: PointStatus,
    pub verdict: FtcVerdict,
    /// `(h, quotient)` per step.
    pub trace: Vec<(f64, f64)>,
}

/// Compares difference quotients of `F(x) = ∫_{(a,x]} f` with `f(x)` at a Lebesgue point.
pub fn ftc1_check(
    f: &StepFunction,
    a: LowerBound,
    probe: &DerivativeProbe,
    sched: &RadiusSchedule,
    tol: f64,
) -> Result<FtcReport> {
    let x = probe.x;
    if !a.below(x) {
        let LowerBound::At(a) = a else { unreachable!() };
        return Err(Error::BelowLowerBound { x, a });
    }
    let big_f = |t: f64| primitive(f, a, t);
    let trace: Vec<(f64, f64)> = probe
        .steps
        .iter()
        .map(|&h| {
            let q =
                if probe.symmetric { (big_f(x + h) - big_f(x - h)) / (2.0 * h) } else { (big_f(x + h) - big_f(x)) / h };
            (h, q)
        })
        .collect();
    let derivative_estimate = trace.last().expect("non-empty probe").1;
    let f_at_x = f.eval(x);
    let status = is_lebesgue_pt(f, x, sched).status;
    let verdict = match status {
        PointStatus::Lebesgue if (derivative_estimate - f_at_x).abs() <= tol => FtcVerdict::Pass,
        PointStatus::Lebesgue => FtcVerdict::Fail,
        _ => FtcVerdict::Skipped,
    };
    Ok(FtcReport { x, derivative_estimate, f_at_x, status, verdict, trace })
}

/// `μ(A ∩ B(x,r)) / μ(B(x,r))`.
pub fn density_ratio(a: &IntervalSet, x: f64, r: f64) -> Result<f64> {
    positive("r", r)?;
    let ball = Interval::new(x - r, x + r)?;
    Ok(a.intersect_interval(ball).measure() / (2.0 * r))
}

/// Density of `a` at `x`: the ratio at the smallest scheduled radius, with the trace.
pub fn density(a: &IntervalSet, x: f64, sched: &RadiusSchedule) -> (f64, Vec<(f64, f64)>) {
    let trace: Vec<(f64, f64)> =
        sched.radii().map(|r| (r, density_ratio(a, x, r).expect("scheduled radii are positive"))).collect();
    (trace.last().expect("steps >= 4").1, trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityClass {
    Zero,
    One,
    Exceptional,
}

pub fn classify_density(d: f64, tol: f64) -> DensityClass {
    if d.abs() <= tol {
        DensityClass::Zero
    } else if (d - 1.0).abs() <= tol {
        DensityClass::One
    } else {
        DensityClass::Exceptional
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    /// `(x, class)` per grid point.
    pub grid: Vec<(f64, DensityClass)>,
    pub exceptional_points: Vec<f64>,
    /// Union of `[x - step, x + step)` over exceptional grid points.
    pub exceptional_set: IntervalSet,
    pub exceptional_measure: f64,
}

/// Classifies grid points around `a` by density 0, 1 or neither.
pub fn density_check(a: &IntervalSet, grid_step: f64, sched: &RadiusSchedule) -> Result<DensityReport> {
    positive("grid_step", grid_step)?;
    let Some(hull) = a.hull() else {
        return Ok(DensityReport {
            grid: Vec::new(),
            exceptional_points: Vec::new(),
            exceptional_set: IntervalSet::empty(),
            exceptional_measure: 0.0,
        });
    };
    let grid: Vec<(f64, DensityClass)> = grid_points(hull.lo(), hull.hi(), grid_step)
        .map(|x| (x, classify_density(density(a, x, sched).0, sched.tol())))
        .collect();
    let exceptional_points: Vec<f64> =
        grid.iter().filter(|(_, c)| *c == DensityClass::Exceptional).map(|&(x, _)| x).collect();
    let exceptional_set = neighbourhoods(&exceptional_points, grid_step);
    Ok(DensityReport { exceptional_measure: exceptional_set.measure(), exceptional_set, exceptional_points, grid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn indicator() -> StepFunction {
        StepFunction::indicator(0.0, 1.0, 1.0).unwrap()
    }

    fn unit() -> IntervalSet {
        IntervalSet::normalize([(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn primitive_examples() {
        let f = indicator();
        assert_eq!(primitive(&f, LowerBound::NegInfinity, 0.5), 0.5);
        assert_eq!(primitive(&f, LowerBound::NegInfinity, -1.0), 0.0);
        assert_eq!(primitive(&f, LowerBound::NegInfinity, 2.0), 1.0);
        assert_eq!(primitive(&f, LowerBound::At(0.25), 2.0), 0.75);
        assert_eq!(primitive(&f, LowerBound::At(3.0), 2.0), 0.0);
        assert_eq!(primitive(&StepFunction::zero(), LowerBound::NegInfinity, 2.0), 0.0);
    }

    #[test]
    fn ftc_examples() {
        let f = indicator();
        let s = RadiusSchedule::default();
        let probe = |x| DerivativeProbe::halving(x, 0.125, 10, true).unwrap();

        let r = ftc1_check(&f, LowerBound::NegInfinity, &probe(0.5), &s, 1e-9).unwrap();
        assert_eq!(r.derivative_estimate, 1.0);
        assert_eq!(r.verdict, FtcVerdict::Pass);

        let r = ftc1_check(&f, LowerBound::NegInfinity, &probe(2.0), &s, 1e-9).unwrap();
        assert_eq!(r.derivative_estimate, 0.0);
        assert_eq!(r.verdict, FtcVerdict::Pass);

        let r = ftc1_check(&f, LowerBound::NegInfinity, &probe(0.0), &s, 1e-9).unwrap();
        assert_eq!(r.status, PointStatus::NotLebesgue);
        assert_eq!(r.verdict, FtcVerdict::Skipped);
        assert_eq!(r.derivative_estimate, 0.5);

        let one_sided = DerivativeProbe::halving(0.5, 0.125, 4, false).unwrap();
        let r = ftc1_check(&f, LowerBound::At(-1.0), &one_sided, &s, 1e-9).unwrap();
        assert_eq!(r.verdict, FtcVerdict::Pass);

        assert!(ftc1_check(&f, LowerBound::At(1.0), &probe(0.5), &s, 1e-9).is_err());
    }

    #[test]
    fn probe_validation() {
        assert!(DerivativeProbe::new(0.0, vec![], true).is_err());
        assert!(DerivativeProbe::new(0.0, vec![0.1, 0.2], true).is_err());
        assert!(DerivativeProbe::new(0.0, vec![0.1, 0.0], true).is_err());
    }

    #[test]
    fn density_examples() {
        let s = RadiusSchedule::default();
        assert_eq!(density(&unit(), 0.5, &s).0, 1.0);
        assert_eq!(density(&unit(), 2.0, &s).0, 0.0);
        assert_eq!(density(&unit(), 0.0, &s).0, 0.5);
        assert!(density(&unit(), 0.0, &s).1.iter().all(|&(_, d)| (0.0..=1.0).contains(&d)));
    }

    #[test]
    fn density_check_examples() {
        let s = RadiusSchedule::default();
        let empty = density_check(&IntervalSet::empty(), 0.1, &s).unwrap();
        assert!(empty.exceptional_set.is_empty());

        let step = 1.0 / 64.0;
        let r = density_check(&unit(), step, &s).unwrap();
        assert_eq!(r.exceptional_points, vec![0.0, 1.0]);
        assert!(r.exceptional_measure <= 4.0 * step);
        let finer = density_check(&unit(), step / 2.0, &s).unwrap();
        assert_eq!(finer.exceptional_measure, r.exceptional_measure / 2.0);
        for &(x, c) in &r.grid {
            if x > 0.0 && x < 1.0 {
                assert_eq!(c, DensityClass::One);
            } else if !(0.0..=1.0).contains(&x) {
                assert_eq!(c, DensityClass::Zero);
            }
        }
    }
}
