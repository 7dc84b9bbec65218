//! End-to-end Lebesgue differentiation workflow on the balls `B_k = B(0, 2(k+1))`.
//!
//! For each approximant `g_n` of `f_k = f·1_{B_k}`, the non-Lebesgue points
//! of `f_k` with `limsup davg > a` lie in
//! `{|f_k - g_n| >= a/2} ∪ {M(f_k - g_n) > a/2}`. Markov's inequality and the
//! maximal inequality bound the two sets by `(2/a)‖f_k - g_n‖₁` and
//! `(6/a)‖f_k - g_n‖₁`. The report sets those bounds next to a direct grid
//! scan of the non-Lebesgue points.

use alloc::vec::Vec;

use crate::approx::continuous_approx_l1;
use crate::averaging::{non_lebesgue_scan, RadiusSchedule};
use crate::error::{positive, Error, Result};
use crate::function::{ball_radius, restrict_to_ball, Level, StepFunction};
use crate::interval::{Interval, IntervalSet};

/// Per-`n` terms of the bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxBound {
    pub n: u32,
    /// `‖f_k - g_n‖₁`
    pub l1_error: f64,
    /// `(2/a) ‖f_k - g_n‖₁`
    pub markov: f64,
    /// `(3/(a/2)) ‖f_k - g_n‖₁`
    pub maximal: f64,
    /// Exact `μ(B_k ∩ {|f_k - g_n| >= a/2})`, never above `markov`.
    pub markov_set_measure: f64,
}

impl ApproxBound {
    pub fn combined(&self) -> f64 {
        self.markov + self.maximal
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdtReport {
    pub k: u32,
    pub threshold: f64,
    pub approximant_count: u32,
    pub bounds: Vec<ApproxBound>,
    /// Measure of the scanned non-Lebesgue neighbourhoods inside `B_k`.
    pub flagged_measure: f64,
    pub flagged: IntervalSet,
    /// `4 · grid_step · #breakpoints(f_k)`
    pub grid_slack: f64,
    /// `flagged_measure <= combined + grid_slack` for every `n`.
    pub consistent: bool,
}

impl LdtReport {
    pub fn markov_bounds(&self) -> Vec<f64> {
        self.bounds.iter().map(|b| b.markov).collect()
    }

    pub fn maximal_bounds(&self) -> Vec<f64> {
        self.bounds.iter().map(|b| b.maximal).collect()
    }

    pub fn final_bound(&self) -> f64 {
        self.bounds.last().map_or(0.0, ApproxBound::combined)
    }

    /// Combined bounds never increase with `n`.
    pub fn monotone(&self) -> bool {
        self.bounds.windows(2).all(|w| w[1].combined() <= w[0].combined())
    }
}

/// Runs the bounded-case decomposition for one `k`.
pub fn ldt_bounded_check(
    f: &StepFunction,
    k: u32,
    a: f64,
    n_approx: u32,
    grid_step: f64,
    sched: &RadiusSchedule,
) -> Result<LdtReport> {
    positive("a", a)?;
    positive("grid_step", grid_step)?;
    if n_approx == 0 {
        return Err(Error::NonPositive { name: "n_approx", value: 0.0 });
    }
    let radius = ball_radius(k);
    let ball = Interval::new(-radius, radius)?;
    let ball_set = IntervalSet::from_interval(ball);
    let fk = restrict_to_ball(f, k);
    // ramps reach at most 1 past the support of f_k
    let everywhere = IntervalSet::from_interval(Interval::new(-radius - 2.0, radius + 2.0)?);

    let mut bounds = Vec::with_capacity(n_approx as usize);
    for n in 1..=n_approx {
        let ap = continuous_approx_l1(&fk, &everywhere, n)?;
        let diff = fk.to_affine().sub(&ap.function.to_affine());
        let markov_set = diff.abs_superlevel_set(0.5 * a, Level::AtLeast, ball);
        bounds.push(ApproxBound {
            n,
            l1_error: ap.l1_error,
            markov: 2.0 / a * ap.l1_error,
            maximal: 3.0 / (0.5 * a) * ap.l1_error,
            markov_set_measure: markov_set.measure(),
        });
    }

    let scan = non_lebesgue_scan(&fk, grid_step, sched)?;
    let flagged = scan.flagged.intersect(&ball_set);
    let flagged_measure = flagged.measure();
    let grid_slack = 4.0 * grid_step * fk.breakpoints().len() as f64;
    let consistent = bounds.iter().all(|b| flagged_measure <= b.combined() + grid_slack);
    Ok(LdtReport {
        k,
        threshold: a,
        approximant_count: n_approx,
        bounds,
        flagged_measure,
        flagged,
        grid_slack,
        consistent,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LdtScan {
    pub reports: Vec<LdtReport>,
    /// Largest flagged measure over `k`.
    pub flagged_measure: f64,
}

/// [`ldt_bounded_check`] for every `k <= k_max`.
pub fn ldt_full_scan(
    f: &StepFunction,
    k_max: u32,
    a: f64,
    n_approx: u32,
    grid_step: f64,
    sched: &RadiusSchedule,
) -> Result<LdtScan> {
    let reports =
        (0..=k_max).map(|k| ldt_bounded_check(f, k, a, n_approx, grid_step, sched)).collect::<Result<Vec<_>>>()?;
    let flagged_measure = reports.iter().map(|r| r.flagged_measure).fold(0.0, f64::max);
    Ok(LdtScan { reports, flagged_measure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_function_has_empty_report() {
        let s = RadiusSchedule::default();
        let r = ldt_bounded_check(&StepFunction::zero(), 0, 0.1, 8, 1.0 / 64.0, &s).unwrap();
        assert!(r.bounds.iter().all(|b| b.combined() == 0.0));
        assert_eq!(r.flagged_measure, 0.0);
        assert!(r.consistent);
    }

    #[test]
    fn indicator_bounds_decay_like_one_over_n() {
        let s = RadiusSchedule::default();
        let f = StepFunction::indicator(0.0, 1.0, 1.0).unwrap();
        let step = 1.0 / 64.0;
        let r = ldt_bounded_check(&f, 0, 0.1, 16, step, &s).unwrap();
        assert!(r.consistent && r.monotone());
        for b in &r.bounds[1..] {
            assert!((b.l1_error * b.n as f64 - 1.0).abs() < 1e-12);
            assert!(b.markov_set_measure <= b.markov);
        }
        assert_eq!(r.flagged_measure, 4.0 * step);
        let r32 = ldt_bounded_check(&f, 0, 0.1, 32, step, &s).unwrap();
        assert_eq!(r32.final_bound(), r.final_bound() / 2.0);
    }

    #[test]
    fn full_scan_matches_first_ball_for_small_support() {
        let s = RadiusSchedule::default();
        let f = StepFunction::new(vec![-1.5, 0.0, 1.0], vec![2.0, -1.0]).unwrap();
        let scan = ldt_full_scan(&f, 2, 0.2, 4, 1.0 / 32.0, &s).unwrap();
        assert_eq!(scan.reports.len(), 3);
        for r in &scan.reports {
            assert_eq!(r.flagged_measure, scan.reports[0].flagged_measure);
            for (b, b0) in r.bounds.iter().zip(&scan.reports[0].bounds) {
                assert_eq!(b.l1_error, b0.l1_error);
            }
        }
        assert_eq!(scan.flagged_measure, scan.reports[0].flagged_measure);
    }

    #[test]
    fn rejects_bad_parameters() {
        let s = RadiusSchedule::default();
        let f = StepFunction::indicator(0.0, 1.0, 1.0).unwrap();
        assert!(ldt_bounded_check(&f, 0, 0.0, 4, 0.1, &s).is_err());
        assert!(ldt_bounded_check(&f, 0, 0.1, 0, 0.1, &s).is_err());
    }
}
