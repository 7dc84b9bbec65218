//! Seeded random instances.
//!
//! Every coordinate lies on the grid `i/64`, which keeps sums, lengths and
//! products of generated data exact in `f64`. Step functions have at most
//! 10 pieces with breakpoints and values in `[-10, 10]`; ball collections
//! have at most 12 balls with centres in `[-10, 10]` and radii in `(0, 5]`.

use ldt_core::{Ball, ClosedSet, IntervalSet, PiecewiseLinear, StepFunction};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GRID: f64 = 64.0;
const SPAN: i32 = 640;

/// Generator for instance `index` of a sweep; instances are independent of each other.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn grid_value(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-SPAN..=SPAN) as f64 / GRID
}

pub fn step_function(rng: &mut impl Rng) -> StepFunction {
    let pieces = rng.gen_range(1..=10);
    let mut ticks: Vec<usize> = sample(rng, 2 * SPAN as usize + 1, pieces + 1).into_vec();
    ticks.sort_unstable();
    let breakpoints = ticks.iter().map(|&t| (t as i32 - SPAN) as f64 / GRID).collect();
    let values = (0..pieces).map(|_| grid_value(rng)).collect();
    StepFunction::new(breakpoints, values).expect("sorted distinct grid breakpoints")
}

pub fn interval_set(rng: &mut impl Rng) -> IntervalSet {
    let parts = rng.gen_range(1..=6);
    let raw: Vec<(f64, f64)> = (0..parts)
        .map(|_| {
            let lo = rng.gen_range(-SPAN..SPAN);
            let len = rng.gen_range(1..=128).min(SPAN - lo);
            (lo as f64 / GRID, (lo + len) as f64 / GRID)
        })
        .collect();
    IntervalSet::normalize(raw).expect("finite endpoints")
}

pub fn balls(rng: &mut impl Rng) -> Vec<Ball> {
    let count = rng.gen_range(1..=12);
    (0..count)
        .map(|_| {
            let radius = rng.gen_range(1..=SPAN / 2) as f64 / GRID;
            Ball::new(grid_value(rng), radius).expect("positive radius")
        })
        .collect()
}

/// Alternating disjoint closed parts, split into two separated sets.
pub fn closed_pair(rng: &mut impl Rng) -> (ClosedSet, ClosedSet) {
    let parts = rng.gen_range(2..=8);
    let mut lo = -SPAN / 2;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for i in 0..parts {
        let len = rng.gen_range(0..=64);
        let part = (lo as f64 / GRID, (lo + len) as f64 / GRID);
        if i % 2 == 0 {
            a.push(part);
        } else {
            b.push(part);
        }
        lo += len + rng.gen_range(1..=64);
    }
    (ClosedSet::new(a).expect("ordered parts"), ClosedSet::new(b).expect("ordered parts"))
}

/// A closed set and a piecewise-linear function bounded by 10 on it.
pub fn closed_with_function(rng: &mut impl Rng) -> (ClosedSet, PiecewiseLinear) {
    let (a, _) = closed_pair(rng);
    let knots = rng.gen_range(1..=8);
    let mut ticks: Vec<usize> = sample(rng, 2 * SPAN as usize + 1, knots).into_vec();
    ticks.sort_unstable();
    let xs = ticks.iter().map(|&t| (t as i32 - SPAN) as f64 / GRID).collect();
    let ys = (0..knots).map(|_| grid_value(rng)).collect();
    (a, PiecewiseLinear::new(xs, ys).expect("sorted distinct knots"))
}
