use thiserror::Error;

/// Errors reported by the core operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("interval [{lo}, {hi}] is reversed")]
    Reversed { lo: f64, hi: f64 },

    #[error("breakpoints must be strictly increasing")]
    Unsorted,

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("closed set is empty")]
    EmptySet,

    #[error("closed sets are not separated (distance 0)")]
    NotSeparated,

    #[error("|f({at})| = {value} exceeds the bound {bound}")]
    BoundViolated { at: f64, value: f64, bound: f64 },

    #[error("exceptional budget {budget} unattainable at level {level} within {j_max} terms (best {best})")]
    BudgetUnattainable { level: usize, j_max: usize, budget: f64, best: f64 },

    #[error("invalid radius schedule: {0}")]
    Schedule(&'static str),

    #[error("point {x} does not lie above the lower bound {a}")]
    BelowLowerBound { x: f64, a: f64 },

    #[error("{0}")]
    Invalid(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite(v))
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
