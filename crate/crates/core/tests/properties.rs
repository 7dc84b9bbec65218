use ldt_core::approx::{FunctionSequence, SequenceKind};
use ldt_core::averaging::{lime_inf, lime_sup, PointStatus};
use ldt_core::covering::hl_maximal_sampled;
use ldt_core::ftc::density_ratio;
use ldt_core::*;
use proptest::prelude::*;

const GRID: f64 = 64.0;

fn grid(n: i32) -> f64 {
    n as f64 / GRID
}

fn step_function() -> impl Strategy<Value = StepFunction> {
    (1usize..=10)
        .prop_flat_map(|m| {
            (proptest::collection::btree_set(-640i32..=640, m + 1), proptest::collection::vec(-640i32..=640, m))
        })
        .prop_map(|(bs, vs)| {
            StepFunction::new(bs.into_iter().map(grid).collect(), vs.into_iter().map(grid).collect()).unwrap()
        })
}

fn interval_set() -> impl Strategy<Value = IntervalSet> {
    proptest::collection::vec((-640i32..=640, 1i32..=320), 0..6)
        .prop_map(|raw| IntervalSet::normalize(raw.into_iter().map(|(lo, len)| (grid(lo), grid(lo + len)))).unwrap())
}

fn nonempty_set() -> impl Strategy<Value = IntervalSet> {
    interval_set().prop_filter("non-empty", |s| !s.is_empty())
}

fn ball() -> impl Strategy<Value = Ball> {
    (-640i32..=640, 1i32..=320).prop_map(|(c, r)| Ball::new(grid(c), grid(r)).unwrap())
}

fn window() -> Interval {
    Interval::new(-20.0, 20.0).unwrap()
}

fn sched() -> RadiusSchedule {
    RadiusSchedule::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn measure_is_additive(s in interval_set(), t in interval_set()) {
        let t = t.diff(&s);
        prop_assert!(s.intersect(&t).is_empty());
        prop_assert_eq!(s.union(&t).measure(), s.measure() + t.measure());
    }

    #[test]
    fn de_morgan(s in interval_set(), t in interval_set()) {
        let w = window();
        prop_assert_eq!(
            s.union(&t).complement_within(w),
            s.complement_within(w).intersect(&t.complement_within(w))
        );
        prop_assert_eq!(
            s.intersect(&t).complement_within(w),
            s.complement_within(w).union(&t.complement_within(w))
        );
    }

    #[test]
    fn set_algebra_stays_canonical(s in interval_set(), t in interval_set()) {
        for r in [s.union(&t), s.intersect(&t), s.diff(&t), s.complement_within(window())] {
            prop_assert!(r.is_canonical());
            let again = IntervalSet::normalize(r.parts().iter().map(|p| (p.lo(), p.hi()))).unwrap();
            prop_assert_eq!(again, r);
        }
    }

    #[test]
    fn regularity(d in interval_set(), eps in 0.001f64..1.0) {
        let u = outer_regularize(&d, eps).unwrap();
        let v = inner_regularize(&d, eps).unwrap();
        prop_assert!(d.is_subset(&u));
        prop_assert!(v.is_subset(&d));
        prop_assert!(u.diff(&d).measure() < eps);
        prop_assert!(d.diff(&v).measure() < eps);
    }

    #[test]
    fn compact_exhaustion_gap(d in interval_set(), n in 1u32..50) {
        let k = compact_exhaustion(&d, n).unwrap();
        prop_assert!(k.is_subset(&d));
        prop_assert!(d.measure() - k.measure() <= 1.0 / n as f64);
    }

    #[test]
    fn integral_is_linear(f in step_function(), g in step_function(), s in interval_set(),
                          a in -8i32..=8, b in -8i32..=8) {
        let (a, b) = (a as f64 / 4.0, b as f64 / 4.0);
        let h = f.scale(a).add(&g.scale(b));
        prop_assert_eq!(h.integrate(&s), a * f.integrate(&s) + b * g.integrate(&s));
    }

    #[test]
    fn integral_is_monotone(f in step_function(), h in step_function(), s in interval_set()) {
        let g = f.add(&h.abs());
        prop_assert!(f.integrate(&s) <= g.integrate(&s));
        prop_assert!(f.integrate(&s).abs() <= f.l1_norm(&s));
    }

    #[test]
    fn markov_holds_exactly(f in step_function(), a in 1i32..=1280) {
        let r = markov_check(&f, grid(a)).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.lhs <= r.rhs);
    }

    #[test]
    fn superlevel_measure_non_increasing(f in step_function()) {
        let mut last = f64::INFINITY;
        for i in -40..=40 {
            let m = f.superlevel_set(i as f64 / 4.0, Level::Above).measure();
            prop_assert!(m <= last);
            last = m;
        }
    }

    #[test]
    fn davg_triangle(f in step_function(), x in -700i32..=700, r in 1i32..=640) {
        let (x, r) = (grid(x), grid(r));
        let ball = IntervalSet::from_interval(Interval::new(x - r, x + r).unwrap());
        let d = davg(&f, x, r).unwrap();
        prop_assert!(d <= iavg(&f, &ball) + f.eval(x).abs() + 1e-12);
    }

    #[test]
    fn off_breakpoints_are_lebesgue(f in step_function(), x in -700i32..=700) {
        // odd multiples of 1/128 are never breakpoints
        let x = (2 * x + 1) as f64 / (2.0 * GRID);
        prop_assert_eq!(is_lebesgue_pt(&f, x, &sched()).status, PointStatus::Lebesgue);
    }

    #[test]
    fn lime_inf_below_lime_sup(f in step_function(), x in -700i32..=700) {
        let s = sched();
        let x = grid(x);
        let (lo, hi) = (lime_inf(&f, x, &s), lime_sup(&f, x, &s));
        prop_assert!(lo <= hi);
        prop_assert_eq!(lime_sup(&-&f, x, &s), -lo);
        let off = x + 1.0 / (2.0 * GRID);
        prop_assert_eq!(lime_inf(&f, off, &s), lime_sup(&f, off, &s));
    }

    #[test]
    fn maximal_function_dominates_and_is_sublinear(f in step_function(), g in step_function(),
                                                   x in -700i32..=700) {
        let x = grid(x);
        let mf = hl_maximal(&f, x);
        for r in [1.0 / 128.0, 0.25, 1.0, 3.0, 17.0] {
            prop_assert!(hl_max(&f, x, r).unwrap() <= mf + 1e-12);
        }
        let mfg = hl_maximal(&f.add(&g), x);
        prop_assert!(mfg <= mf + hl_maximal(&g, x) + 1e-12);
        let sampled = hl_maximal_sampled(&f.to_affine(), x, [0.5, 1.0, 2.0]);
        prop_assert!(sampled <= mf + 1e-12);
    }

    #[test]
    fn vitali_selection_is_valid(balls in proptest::collection::vec(ball(), 1..=12)) {
        let sel = vitali_finite(&balls);
        prop_assert!(verify_vitali(&balls, &sel).valid());
    }

    #[test]
    fn primitive_is_lipschitz(f in step_function(), x in -700i32..=700, y in -700i32..=700) {
        let (x, y) = (grid(x), grid(y));
        let diff = primitive(&f, LowerBound::NegInfinity, x) - primitive(&f, LowerBound::NegInfinity, y);
        prop_assert!(diff.abs() <= f.max_abs() * (x - y).abs());
    }

    #[test]
    fn densities_complement(a in interval_set(), x in -640i32..=640, e in 0u32..20) {
        let x = grid(x);
        let r = 0.5f64.powi(e as i32);
        let c = a.complement_within(window());
        let (da, dc) = (density_ratio(&a, x, r).unwrap(), density_ratio(&c, x, r).unwrap());
        prop_assert!((0.0..=1.0).contains(&da) && (0.0..=1.0).contains(&dc));
        prop_assert_eq!(da + dc, 1.0);
    }

    #[test]
    fn urysohn_separates(parts in proptest::collection::vec((1i32..=64, 1i32..=64), 2..8)) {
        let mut lo = -320;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (i, (len, gap)) in parts.into_iter().enumerate() {
            let part = (grid(lo), grid(lo + len));
            if i % 2 == 0 { a.push(part) } else { b.push(part) }
            lo += len + gap;
        }
        let (a, b) = (ClosedSet::new(a).unwrap(), ClosedSet::new(b).unwrap());
        let sep = urysohn_function(&a, &b).unwrap();
        let g = &sep.function;
        for &(lo, hi) in a.parts() {
            prop_assert_eq!(g.eval(lo), 0.0);
            prop_assert_eq!(g.eval(hi), 0.0);
            prop_assert_eq!(g.eval(0.5 * (lo + hi)), 0.0);
        }
        for &(lo, hi) in b.parts() {
            prop_assert_eq!(g.eval(lo), 1.0);
            prop_assert_eq!(g.eval(hi), 1.0);
            prop_assert_eq!(g.eval(0.5 * (lo + hi)), 1.0);
        }
        prop_assert!(g.values().iter().all(|v| (0.0..=1.0).contains(v)));
        prop_assert!(g.lipschitz() <= (1.0 / sep.eps) * (1.0 + 1e-12));
    }

    #[test]
    fn tietze_extends(parts in proptest::collection::vec((1i32..=64, 1i32..=64), 1..6),
                      ys in proptest::collection::vec(-64i32..=64, 8)) {
        let mut lo = -320;
        let mut raw = Vec::new();
        for (len, gap) in parts {
            raw.push((grid(lo), grid(lo + len)));
            lo += len + gap;
        }
        let a = ClosedSet::new(raw).unwrap();
        let (first, last) = (a.parts()[0].0, a.parts()[a.parts().len() - 1].1);
        let knots: Vec<f64> = (0..8).map(|i| first + (last - first) * i as f64 / 7.0).collect();
        let f = PiecewiseLinear::new(knots, ys.iter().map(|&y| grid(y)).collect()).unwrap();
        let g = tietze_extend(&a, &f, 1.0).unwrap();
        for &(lo, hi) in a.parts() {
            for t in 0..=16 {
                let x = lo + (hi - lo) * t as f64 / 16.0;
                prop_assert!((g.eval(x) - f.eval(x)).abs() <= 1e-12);
            }
        }
        prop_assert!(g.sup() <= 1.0 && g.inf() >= -1.0);
    }

    #[test]
    fn lusin_avoids_jumps(f in step_function(), a in nonempty_set(), eps in 0.001f64..1.0) {
        let l = lusin_compact(&f, &a, eps).unwrap();
        prop_assert!(l.gap < eps);
        for (x, _, _) in f.jumps() {
            prop_assert!(!l.compact.contains(x));
        }
        prop_assert!(l.compact.to_interval_set().diff(&ClosedSet::closure_of(&a).to_interval_set()).is_empty());
    }

    #[test]
    fn approximant_improves_with_n(f in step_function()) {
        let e = IntervalSet::from_interval(Interval::new(-15.0, 15.0).unwrap());
        let mut last = f64::INFINITY;
        for n in 1..=16u32 {
            let ap = continuous_approx_l1(&f, &e, n).unwrap();
            prop_assert!(ap.l1_error <= last);
            prop_assert!(ap.l1_error <= ap.bound() * (1.0 + 1e-12));
            prop_assert!((ap.l1_error - ap.ramp_error).abs() <= 1e-9 * (1.0 + ap.l1_error));
            last = ap.l1_error;
        }
    }

    #[test]
    fn egorov_budget(eps in 0.001f64..1.0, lo in -64i32..0, hi in 1i32..=64) {
        let seq = FunctionSequence {
            kind: SequenceKind::Power,
            domain: IntervalSet::normalize([(grid(lo), grid(hi))]).unwrap(),
            tail_monotone: true,
        };
        let r = egorov_exceptional(&seq, eps, 6, 1 << 20).unwrap();
        prop_assert!(r.measure < eps);
        for lvl in &r.levels {
            prop_assert!(lvl.sup_deviation <= 1.0 / lvl.k as f64);
        }
    }

    #[test]
    fn ldt_scan_within_bound(f in step_function(), a in 1i32..=64) {
        let r = ldt_bounded_check(&f, 4, grid(a) * 4.0, 8, 1.0 / 32.0, &sched()).unwrap();
        prop_assert!(r.consistent);
        prop_assert!(r.monotone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn maximal_inequality_holds(f in step_function(), e in -4i32..=4) {
        let c = 2f64.powi(e);
        let r = maximal_inequality_check(&f, c, 1.0 / 64.0).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.lower_measure <= r.superlevel_measure);
        prop_assert!(r.superlevel_measure <= r.bound);
        let finer = maximal_inequality_check(&f, c, 1.0 / 128.0).unwrap();
        prop_assert!(finer.superlevel.is_subset(&r.superlevel));
        prop_assert!(r.lower_measure <= finer.superlevel_measure);
    }
}
