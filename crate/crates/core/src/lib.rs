//! Exact computational measure theory on the real line.
//!
//! Sets are finite unions of intervals, integrands are step functions, and
//! continuous objects are piecewise linear. On these carriers Lebesgue
//! measure, integrals, ball averages and the Hardy–Littlewood maximal
//! function are all computable in closed form, which lets the classical
//! theorems around Lebesgue differentiation be checked numerically:
//! regularity, Markov and maximal inequalities, finite Vitali covering,
//! Urysohn and Tietze constructions, Lusin and Egorov sets, density of
//! continuous functions in L¹, the first fundamental theorem of calculus
//! and the density theorem.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approx;
pub mod averaging;
pub mod covering;
pub mod error;
pub mod ftc;
pub mod function;
pub mod interval;
pub mod pipeline;

pub use approx::{
    continuous_approx_l1, dist_to_set, egorov_exceptional, lusin_compact, set_distance, tietze_extend,
    urysohn_function, Approximant, ClosedSet, EgorovResult, FunctionSequence, SequenceKind,
};
pub use averaging::{davg, iavg, is_lebesgue_pt, lime_inf, lime_sup, non_lebesgue_scan, PointStatus, RadiusSchedule};
pub use covering::{hl_max, hl_maximal, maximal_inequality_check, verify_vitali, vitali_finite, MaximalReport};
pub use error::{Error, Result};
pub use ftc::{density, density_check, ftc1_check, primitive, DerivativeProbe, FtcVerdict, LowerBound};
pub use function::{markov_check, restrict_to_ball, Level, PiecewiseAffine, PiecewiseLinear, StepFunction};
pub use interval::{
    ball_to_set, compact_exhaustion, inner_regularize, outer_regularize, sball, Ball, Interval, IntervalSet,
};
pub use pipeline::{ldt_bounded_check, ldt_full_scan, LdtReport};
