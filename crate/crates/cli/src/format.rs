//! Serialized forms of the core types used in scenario and report files.

use ldt_core::approx::{FunctionSequence, SequenceKind};
use ldt_core::{Ball, ClosedSet, Error, IntervalSet, PiecewiseLinear, RadiusSchedule, StepFunction};
use serde::{Deserialize, Serialize};

/// Sorted `[lo, hi]` pairs of a half-open interval set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetDto(pub Vec<[f64; 2]>);

impl SetDto {
    /// Rejects reversed pairs; empty pairs are dropped.
    pub fn to_core(&self) -> Result<IntervalSet, Error> {
        for &[lo, hi] in &self.0 {
            if hi < lo {
                return Err(Error::Reversed { lo, hi });
            }
        }
        IntervalSet::normalize(self.0.iter().map(|&[lo, hi]| (lo, hi)))
    }
}

impl From<&IntervalSet> for SetDto {
    fn from(s: &IntervalSet) -> Self {
        SetDto(s.parts().iter().map(|p| [p.lo(), p.hi()]).collect())
    }
}

/// Closed parts `[lo, hi]`, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClosedDto(pub Vec<[f64; 2]>);

impl ClosedDto {
    pub fn to_core(&self) -> Result<ClosedSet, Error> {
        ClosedSet::new(self.0.iter().map(|&[lo, hi]| (lo, hi)))
    }
}

impl From<&ClosedSet> for ClosedDto {
    fn from(s: &ClosedSet) -> Self {
        ClosedDto(s.parts().iter().map(|&(lo, hi)| [lo, hi]).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDto {
    pub breakpoints: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepDto {
    pub fn to_core(&self) -> Result<StepFunction, Error> {
        StepFunction::new(self.breakpoints.clone(), self.values.clone())
    }
}

impl From<&StepFunction> for StepDto {
    fn from(f: &StepFunction) -> Self {
        StepDto { breakpoints: f.breakpoints().to_vec(), values: f.values().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwlDto {
    pub knots: Vec<f64>,
    pub values: Vec<f64>,
}

impl PwlDto {
    pub fn to_core(&self) -> Result<PiecewiseLinear, Error> {
        PiecewiseLinear::new(self.knots.clone(), self.values.clone())
    }
}

impl From<&PiecewiseLinear> for PwlDto {
    fn from(f: &PiecewiseLinear) -> Self {
        PwlDto { knots: f.knots().to_vec(), values: f.values().to_vec() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDto {
    pub center: f64,
    pub radius: f64,
}

impl BallDto {
    pub fn to_core(self) -> Result<Ball, Error> {
        Ball::new(self.center, self.radius)
    }
}

impl From<&Ball> for BallDto {
    fn from(b: &Ball) -> Self {
        BallDto { center: b.center(), radius: b.radius() }
    }
}

pub fn balls_to_core(balls: &[BallDto]) -> Result<Vec<Ball>, Error> {
    balls.iter().map(|b| b.to_core()).collect()
}

/// Geometric radius schedule; omitted fields take the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDto {
    #[serde(default = "default_r0")]
    pub r0: f64,
    #[serde(default = "default_factor")]
    pub factor: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
}

fn default_r0() -> f64 {
    RadiusSchedule::default().r0()
}

fn default_factor() -> f64 {
    RadiusSchedule::default().factor()
}

fn default_steps() -> usize {
    RadiusSchedule::default().steps()
}

fn default_tol() -> f64 {
    RadiusSchedule::default().tol()
}

impl Default for ScheduleDto {
    fn default() -> Self {
        ScheduleDto { r0: default_r0(), factor: default_factor(), steps: default_steps(), tol: default_tol() }
    }
}

impl ScheduleDto {
    pub fn to_core(&self) -> Result<RadiusSchedule, Error> {
        RadiusSchedule::new(self.r0, self.factor, self.steps, self.tol)
    }
}

/// Built-in sequence families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "kebab-case")]
pub enum SequenceKindDto {
    Power,
    ShiftedRamp { at: f64, height: f64 },
    Steps { terms: Vec<StepDto> },
}

/// A sequence `f_j → g` on `A`; `g` is required for explicit step terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceDto {
    #[serde(flatten)]
    pub kind: SequenceKindDto,
    #[serde(rename = "A")]
    pub domain: SetDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<StepDto>,
    #[serde(default)]
    pub tail_monotone: bool,
    #[serde(rename = "J_max")]
    pub j_max: usize,
}

impl SequenceDto {
    pub fn to_core(&self) -> Result<FunctionSequence, Error> {
        let kind = match &self.kind {
            SequenceKindDto::Power => SequenceKind::Power,
            &SequenceKindDto::ShiftedRamp { at, height } => SequenceKind::ShiftedRamp { at, height },
            SequenceKindDto::Steps { terms } => {
                let limit = self.g.as_ref().ok_or(Error::Invalid("step sequences need the limit g"))?;
                SequenceKind::Steps {
                    terms: terms.iter().map(StepDto::to_core).collect::<Result<_, _>>()?,
                    limit: limit.to_core()?,
                }
            }
        };
        Ok(FunctionSequence { kind, domain: self.domain.to_core()?, tail_monotone: self.tail_monotone })
    }
}
