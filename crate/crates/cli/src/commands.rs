//! Per-command input schemas and their evaluation.

use clap::ValueEnum;
use ldt_core::approx::Separator;
use ldt_core::averaging::PointStatus;
use ldt_core::covering::VitaliCheck;
use ldt_core::ftc::{classify_density, DensityClass, FtcVerdict};
use ldt_core::{
    compact_exhaustion, continuous_approx_l1, density, density_check, egorov_exceptional, ftc1_check, hl_maximal,
    inner_regularize, is_lebesgue_pt, ldt_full_scan, lusin_compact, markov_check, maximal_inequality_check,
    non_lebesgue_scan, outer_regularize, tietze_extend, urysohn_function, verify_vitali, vitali_finite, ClosedSet,
    DerivativeProbe, Error, Interval, IntervalSet, LowerBound, PiecewiseLinear, RadiusSchedule,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::format::{balls_to_core, BallDto, ClosedDto, PwlDto, ScheduleDto, SequenceDto, SetDto, StepDto};
use crate::oracle::vitali_oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Measure,
    Integrate,
    Markov,
    Vitali,
    Maximal,
    Urysohn,
    Tietze,
    Lusin,
    #[value(name = "approx-l1")]
    #[serde(rename = "approx-l1")]
    ApproxL1,
    Egorov,
    LebesgueScan,
    Ftc,
    Density,
    Ldt,
}

impl Command {
    pub const ALL: [Command; 14] = [
        Command::Measure,
        Command::Integrate,
        Command::Markov,
        Command::Vitali,
        Command::Maximal,
        Command::Urysohn,
        Command::Tietze,
        Command::Lusin,
        Command::ApproxL1,
        Command::Egorov,
        Command::LebesgueScan,
        Command::Ftc,
        Command::Density,
        Command::Ldt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Measure => "measure",
            Command::Integrate => "integrate",
            Command::Markov => "markov",
            Command::Vitali => "vitali",
            Command::Maximal => "maximal",
            Command::Urysohn => "urysohn",
            Command::Tietze => "tietze",
            Command::Lusin => "lusin",
            Command::ApproxL1 => "approx-l1",
            Command::Egorov => "egorov",
            Command::LebesgueScan => "lebesgue-scan",
            Command::Ftc => "ftc",
            Command::Density => "density",
            Command::Ldt => "ldt",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// CSV rows with a header, written next to the report.
#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub results: Value,
    pub pass: bool,
    pub traces: Vec<Trace>,
}

impl Outcome {
    fn new(results: impl Serialize, pass: bool) -> Outcome {
        let results = serde_json::to_value(results).expect("results serialize");
        Outcome { results, pass, traces: Vec::new() }
    }

    fn with_trace(mut self, name: &'static str, header: &[&'static str], rows: Vec<Vec<f64>>) -> Outcome {
        self.traces.push(Trace { name, header: header.to_vec(), rows });
        self
    }
}

fn inputs<T: DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Validation(e.to_string()))
}

/// Validates `value` against the schema of `command` and evaluates it.
pub fn dispatch(command: Command, value: Value) -> Result<Outcome, CliError> {
    match command {
        Command::Measure => measure(&inputs(value)?),
        Command::Integrate => integrate(&inputs(value)?),
        Command::Markov => markov(&inputs(value)?),
        Command::Vitali => vitali(&inputs(value)?),
        Command::Maximal => maximal(&inputs(value)?),
        Command::Urysohn => urysohn(&inputs(value)?),
        Command::Tietze => tietze(&inputs(value)?),
        Command::Lusin => lusin(&inputs(value)?),
        Command::ApproxL1 => approx_l1(&inputs(value)?),
        Command::Egorov => egorov(&inputs(value)?),
        Command::LebesgueScan => lebesgue_scan(&inputs(value)?),
        Command::Ftc => ftc(&inputs(value)?),
        Command::Density => density_cmd(&inputs(value)?),
        Command::Ldt => ldt(&inputs(value)?),
    }
}

fn schedule(s: &Option<ScheduleDto>) -> Result<RadiusSchedule, CliError> {
    Ok(s.unwrap_or_default().to_core()?)
}

fn window(w: [f64; 2]) -> Result<Interval, CliError> {
    Ok(Interval::new(w[0], w[1])?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureInputs {
    pub set: SetDto,
    #[serde(default)]
    pub other: Option<SetDto>,
    #[serde(default)]
    pub window: Option<[f64; 2]>,
    #[serde(default)]
    pub eps: Option<f64>,
    #[serde(default)]
    pub n: Option<u32>,
}

#[derive(Serialize)]
struct SetReport {
    set: SetDto,
    measure: f64,
}

impl From<&IntervalSet> for SetReport {
    fn from(s: &IntervalSet) -> Self {
        SetReport { set: s.into(), measure: s.measure() }
    }
}

#[derive(Serialize)]
struct Pairwise {
    union: SetReport,
    intersection: SetReport,
    difference: SetReport,
    additive: bool,
}

#[derive(Serialize)]
struct Regularity {
    eps: f64,
    outer: SetReport,
    outer_gap: f64,
    inner: SetReport,
    inner_gap: f64,
    holds: bool,
}

#[derive(Serialize)]
struct Exhaustion {
    n: u32,
    compact: SetReport,
    gap: f64,
    holds: bool,
}

#[derive(Serialize)]
struct MeasureResults {
    canonical: SetDto,
    measure: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pairwise: Option<Pairwise>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement: Option<SetReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    regularity: Option<Regularity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exhaustion: Option<Exhaustion>,
}

pub fn measure(i: &MeasureInputs) -> Result<Outcome, CliError> {
    let s = i.set.to_core()?;
    let pairwise = match &i.other {
        Some(t) => {
            let t = t.to_core()?;
            let fresh = t.diff(&s);
            Some(Pairwise {
                union: (&s.union(&t)).into(),
                intersection: (&s.intersect(&t)).into(),
                difference: (&s.diff(&t)).into(),
                additive: s.union(&fresh).measure() == s.measure() + fresh.measure(),
            })
        }
        None => None,
    };
    let complement = match i.window {
        Some(w) => Some((&s.complement_within(window(w)?)).into()),
        None => None,
    };
    let regularity = match i.eps {
        Some(eps) => {
            let u = outer_regularize(&s, eps)?;
            let v = inner_regularize(&s, eps)?;
            let (outer_gap, inner_gap) = (u.diff(&s).measure(), s.diff(&v).measure());
            Some(Regularity {
                eps,
                holds: s.is_subset(&u) && v.is_subset(&s) && outer_gap < eps && inner_gap < eps,
                outer: (&u).into(),
                outer_gap,
                inner: (&v).into(),
                inner_gap,
            })
        }
        None => None,
    };
    let exhaustion = match i.n {
        Some(n) => {
            let k = compact_exhaustion(&s, n)?;
            let gap = s.measure() - k.measure();
            Some(Exhaustion { n, holds: k.is_subset(&s) && gap <= 1.0 / n as f64, compact: (&k).into(), gap })
        }
        None => None,
    };
    let pass = pairwise.as_ref().is_none_or(|p| p.additive)
        && regularity.as_ref().is_none_or(|r| r.holds)
        && exhaustion.as_ref().is_none_or(|e| e.holds);
    let results =
        MeasureResults { canonical: (&s).into(), measure: s.measure(), pairwise, complement, regularity, exhaustion };
    Ok(Outcome::new(results, pass))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegrateInputs {
    pub f: StepDto,
    pub set: SetDto,
}

pub fn integrate(i: &IntegrateInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let s = i.set.to_core()?;
    let integral = f.integrate(&s);
    let l1_norm = f.l1_norm(&s);
    let pass = integral.abs() <= l1_norm;
    Ok(Outcome::new(json!({ "integral": integral, "l1_norm": l1_norm, "l1_norm_total": f.l1_norm_total() }), pass))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkovInputs {
    pub f: StepDto,
    pub thresholds: Vec<f64>,
}

#[derive(Serialize)]
struct MarkovRow {
    threshold: f64,
    lhs: f64,
    rhs: f64,
    holds: bool,
}

pub fn markov(i: &MarkovInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let rows = i
        .thresholds
        .iter()
        .map(|&a| markov_check(&f, a).map(|r| MarkovRow { threshold: a, lhs: r.lhs, rhs: r.rhs, holds: r.holds }))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = rows.iter().all(|r| r.holds);
    let csv = rows.iter().map(|r| vec![r.threshold, r.lhs, r.rhs]).collect();
    Ok(Outcome::new(json!({ "checks": rows }), pass).with_trace("markov", &["threshold", "lhs", "rhs"], csv))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VitaliInputs {
    pub balls: Vec<BallDto>,
}

#[derive(Serialize)]
struct VitaliResults {
    selected: Vec<usize>,
    selected_balls: Vec<BallDto>,
    disjoint: bool,
    in_range: bool,
    witnesses: Vec<Option<usize>>,
    verified: bool,
    oracle_agrees: bool,
}

pub fn vitali(i: &VitaliInputs) -> Result<Outcome, CliError> {
    if i.balls.len() > 20 {
        return Err(CliError::Validation("at most 20 balls are supported".into()));
    }
    let balls = balls_to_core(&i.balls)?;
    let selected = vitali_finite(&balls);
    let VitaliCheck { in_range, disjoint, witnesses } = verify_vitali(&balls, &selected);
    let verified = in_range && disjoint && witnesses.iter().all(Option::is_some);
    let oracle_agrees = vitali_oracle(&balls, &selected);
    let results = VitaliResults {
        selected_balls: selected.iter().map(|&j| BallDto::from(&balls[j])).collect(),
        selected,
        disjoint,
        in_range,
        witnesses,
        verified,
        oracle_agrees,
    };
    Ok(Outcome::new(results, verified && oracle_agrees))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalInputs {
    pub f: StepDto,
    pub c: Vec<f64>,
    pub grid_step: f64,
    #[serde(default)]
    pub points: Vec<f64>,
}

#[derive(Serialize)]
struct MaximalRow {
    c: f64,
    superlevel: SetDto,
    superlevel_measure: f64,
    lower_measure: f64,
    bound: f64,
    holds: bool,
}

pub fn maximal(i: &MaximalInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let rows =
        i.c.iter()
            .map(|&c| {
                maximal_inequality_check(&f, c, i.grid_step).map(|r| MaximalRow {
                    c,
                    superlevel: (&r.superlevel).into(),
                    superlevel_measure: r.superlevel_measure,
                    lower_measure: r.lower_measure,
                    bound: r.bound,
                    holds: r.holds,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
    let values: Vec<Vec<f64>> = i.points.iter().map(|&x| vec![x, hl_maximal(&f, x)]).collect();
    let pass = rows.iter().all(|r| r.holds);
    let results = json!({
        "checks": rows,
        "hl_maximal": values.iter().map(|v| json!({ "x": v[0], "value": v[1] })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(results, pass).with_trace("hl_maximal", &["x", "hl_maximal"], values))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UrysohnInputs {
    #[serde(rename = "A")]
    pub a: ClosedDto,
    #[serde(rename = "B")]
    pub b: ClosedDto,
}

/// Properties of a separating function, all read off knots and parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparatorCheck {
    pub zero_on_a: bool,
    pub one_on_b: bool,
    pub in_range: bool,
    pub lipschitz: f64,
    pub lipschitz_bound: f64,
    pub lipschitz_ok: bool,
}

impl SeparatorCheck {
    pub fn holds(&self) -> bool {
        self.zero_on_a && self.one_on_b && self.in_range && self.lipschitz_ok
    }
}

/// Relative rounding allowance on slopes `Δy/Δx` near `1/ε`.
const SLOPE_ROUNDING: f64 = 1e-12;

fn knots_in(s: &ClosedSet, knots: &[f64]) -> Vec<f64> {
    let mut xs: Vec<f64> = knots.iter().copied().filter(|&x| s.contains(x)).collect();
    for &(lo, hi) in s.parts() {
        xs.extend_from_slice(&[lo, hi]);
    }
    xs
}

pub fn check_separator(a: &ClosedSet, b: &ClosedSet, sep: &Separator) -> SeparatorCheck {
    let g = &sep.function;
    let on = |s: &ClosedSet, v: f64| {
        let mids = s.parts().iter().map(|&(lo, hi)| 0.5 * (lo + hi));
        knots_in(s, g.knots()).into_iter().chain(mids).all(|x| g.eval(x) == v)
    };
    let zero_on_a = on(a, 0.0);
    let one_on_b = on(b, 1.0);
    let in_range = g.values().iter().all(|v| (0.0..=1.0).contains(v));
    let lipschitz = g.lipschitz();
    let lipschitz_bound = 1.0 / sep.eps;
    SeparatorCheck {
        zero_on_a,
        one_on_b,
        in_range,
        lipschitz,
        lipschitz_bound,
        lipschitz_ok: lipschitz <= lipschitz_bound * (1.0 + SLOPE_ROUNDING),
    }
}

pub fn urysohn(i: &UrysohnInputs) -> Result<Outcome, CliError> {
    let a = i.a.to_core()?;
    let b = i.b.to_core()?;
    let sep = urysohn_function(&a, &b)?;
    let check = check_separator(&a, &b, &sep);
    let rows = sep.function.knots().iter().zip(sep.function.values()).map(|(&x, &y)| vec![x, y]).collect();
    let results = json!({ "eps": sep.eps, "function": PwlDto::from(&sep.function), "check": check });
    Ok(Outcome::new(results, check.holds()).with_trace("separator", &["x", "value"], rows))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TietzeInputs {
    #[serde(rename = "A")]
    pub a: ClosedDto,
    pub f: PwlDto,
    pub bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionCheck {
    pub agrees_on_a: bool,
    pub within_bound: bool,
}

/// `g = f` at every knot of either function inside `A` and at the ends of its parts; `|g| <= bound`.
pub fn check_extension(a: &ClosedSet, f: &PiecewiseLinear, g: &PiecewiseLinear, bound: f64) -> ExtensionCheck {
    let mut knots = f.knots().to_vec();
    knots.extend_from_slice(g.knots());
    let agrees_on_a = knots_in(a, &knots).iter().all(|&x| g.eval(x) == f.eval(x));
    let within_bound = g.values().iter().all(|v| v.abs() <= bound);
    ExtensionCheck { agrees_on_a, within_bound }
}

pub fn tietze(i: &TietzeInputs) -> Result<Outcome, CliError> {
    let a = i.a.to_core()?;
    let f = i.f.to_core()?;
    let g = tietze_extend(&a, &f, i.bound)?;
    let check = check_extension(&a, &f, &g, i.bound);
    let results = json!({ "extension": PwlDto::from(&g), "check": check });
    Ok(Outcome::new(results, check.agrees_on_a && check.within_bound))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LusinInputs {
    pub f: StepDto,
    #[serde(rename = "A")]
    pub a: SetDto,
    pub eps: f64,
}

pub fn lusin(i: &LusinInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let a = i.a.to_core()?;
    let l = lusin_compact(&f, &a, i.eps)?;
    let jump_free = f.jumps().iter().all(|&(x, _, _)| !l.compact.contains(x));
    let gap_ok = l.gap < i.eps;
    let results = json!({
        "compact": ClosedDto::from(&l.compact),
        "excluded": l.excluded,
        "margin": l.margin,
        "gap": l.gap,
        "gap_below_eps": gap_ok,
        "jump_free": jump_free,
    });
    Ok(Outcome::new(results, gap_ok && jump_free))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxInputs {
    pub f: StepDto,
    #[serde(rename = "E")]
    pub e: SetDto,
    pub n: Vec<u32>,
}

#[derive(Serialize)]
struct ApproxRow {
    n: u32,
    l1_error: f64,
    ramp_error: f64,
    bound: f64,
    jump_count: usize,
    max_jump: f64,
}

pub fn approx_l1(i: &ApproxInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let e = i.e.to_core()?;
    let mut ns = i.n.clone();
    ns.sort_unstable();
    ns.dedup();
    let rows = ns
        .iter()
        .map(|&n| {
            continuous_approx_l1(&f, &e, n).map(|ap| ApproxRow {
                n,
                l1_error: ap.l1_error,
                ramp_error: ap.ramp_error,
                bound: ap.bound(),
                jump_count: ap.jump_count,
                max_jump: ap.max_jump,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let within = rows.iter().all(|r| r.l1_error <= r.bound);
    let monotone = rows.windows(2).all(|w| w[1].l1_error <= w[0].l1_error);
    let csv = rows.iter().map(|r| vec![r.n as f64, r.l1_error, r.bound]).collect();
    let results = json!({ "approximants": rows, "within_bound": within, "monotone": monotone });
    Ok(Outcome::new(results, within && monotone).with_trace("l1_error", &["n", "l1_error", "bound"], csv))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EgorovInputs {
    pub sequence: SequenceDto,
    pub eps: f64,
    #[serde(default = "default_levels")]
    pub levels: usize,
}

fn default_levels() -> usize {
    8
}

#[derive(Serialize)]
struct EgorovRow {
    k: usize,
    n_of_k: usize,
    budget: f64,
    measure: f64,
    sup_deviation: f64,
    holds: bool,
}

pub fn egorov(i: &EgorovInputs) -> Result<Outcome, CliError> {
    let seq = i.sequence.to_core()?;
    let r = match egorov_exceptional(&seq, i.eps, i.levels, i.sequence.j_max) {
        Ok(r) => r,
        Err(e @ Error::BudgetUnattainable { .. }) => {
            return Ok(Outcome::new(json!({ "error": e.to_string() }), false));
        }
        Err(e) => return Err(e.into()),
    };
    let rows: Vec<EgorovRow> = r
        .levels
        .iter()
        .map(|l| EgorovRow {
            k: l.k,
            n_of_k: l.n,
            budget: l.budget,
            measure: l.measure,
            sup_deviation: l.sup_deviation,
            holds: l.sup_deviation <= 1.0 / l.k as f64,
        })
        .collect();
    let pass = r.measure < i.eps && rows.iter().all(|l| l.holds);
    let results = json!({
        "exceptional": SetDto::from(&r.exceptional),
        "measure": r.measure,
        "truncated": r.truncated,
        "levels": rows,
    });
    Ok(Outcome::new(results, pass))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanInputs {
    pub f: StepDto,
    pub grid_step: f64,
    #[serde(default)]
    pub schedule: Option<ScheduleDto>,
}

fn status_name(s: PointStatus) -> &'static str {
    match s {
        PointStatus::Lebesgue => "lebesgue",
        PointStatus::NotLebesgue => "not-lebesgue",
        PointStatus::Undecided => "undecided",
    }
}

pub fn lebesgue_scan(i: &ScanInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let sched = schedule(&i.schedule)?;
    let scan = non_lebesgue_scan(&f, i.grid_step, &sched)?;
    let slack = 4.0 * i.grid_step * f.breakpoints().len() as f64;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &x in &scan.flagged_points {
        let t = is_lebesgue_pt(&f, x, &sched);
        points.push(json!({ "x": x, "status": status_name(t.status) }));
        rows.extend(t.trace.iter().map(|&(r, d)| vec![x, r, d]));
    }
    let pass = scan.measure <= slack;
    let results = json!({
        "flagged_points": points,
        "flagged": SetDto::from(&scan.flagged),
        "flagged_measure": scan.measure,
        "bound": slack,
    });
    Ok(Outcome::new(results, pass).with_trace("davg", &["x", "radius", "davg"], rows))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FtcInputs {
    pub f: StepDto,
    /// Lower end of integration; `null` for `-∞`.
    #[serde(default)]
    pub a: Option<f64>,
    pub points: Vec<f64>,
    #[serde(default = "default_h0")]
    pub h0: f64,
    #[serde(default = "default_probe_steps")]
    pub steps: usize,
    #[serde(default = "default_true")]
    pub symmetric: bool,
    #[serde(default = "default_ftc_tol")]
    pub tol: f64,
    #[serde(default)]
    pub schedule: Option<ScheduleDto>,
}

fn default_h0() -> f64 {
    0.125
}

fn default_probe_steps() -> usize {
    20
}

fn default_true() -> bool {
    true
}

fn default_ftc_tol() -> f64 {
    1e-9
}

fn verdict_name(v: FtcVerdict) -> &'static str {
    match v {
        FtcVerdict::Pass => "pass",
        FtcVerdict::Fail => "fail",
        FtcVerdict::Skipped => "skipped",
    }
}

pub fn ftc(i: &FtcInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let sched = schedule(&i.schedule)?;
    let lower = i.a.map_or(LowerBound::NegInfinity, LowerBound::At);
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    let mut pass = true;
    for &x in &i.points {
        let probe = DerivativeProbe::halving(x, i.h0, i.steps, i.symmetric)?;
        let r = ftc1_check(&f, lower, &probe, &sched, i.tol)?;
        pass &= r.verdict != FtcVerdict::Fail;
        rows.extend(r.trace.iter().map(|&(h, q)| vec![x, h, q]));
        reports.push(json!({
            "x": x,
            "derivative_estimate": r.derivative_estimate,
            "f_at_x": r.f_at_x,
            "lebesgue_pt_status": status_name(r.status),
            "verdict": verdict_name(r.verdict),
        }));
    }
    Ok(Outcome::new(json!({ "points": reports }), pass).with_trace("quotients", &["x", "h", "quotient"], rows))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityInputs {
    #[serde(rename = "A")]
    pub a: SetDto,
    pub grid_step: f64,
    #[serde(default)]
    pub schedule: Option<ScheduleDto>,
    #[serde(default)]
    pub points: Vec<f64>,
}

fn class_name(c: DensityClass) -> &'static str {
    match c {
        DensityClass::Zero => "zero",
        DensityClass::One => "one",
        DensityClass::Exceptional => "exceptional",
    }
}

pub fn density_cmd(i: &DensityInputs) -> Result<Outcome, CliError> {
    let a = i.a.to_core()?;
    let sched = schedule(&i.schedule)?;
    let report = density_check(&a, i.grid_step, &sched)?;
    let bound = 4.0 * i.grid_step * a.endpoints().count() as f64;
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for &x in &i.points {
        let (d, trace) = density(&a, x, &sched);
        points.push(json!({ "x": x, "density": d, "class": class_name(classify_density(d, sched.tol())) }));
        rows.extend(trace.iter().map(|&(r, d)| vec![x, r, d]));
    }
    let pass = report.exceptional_measure <= bound;
    let results = json!({
        "exceptional_points": report.exceptional_points,
        "exceptional_set": SetDto::from(&report.exceptional_set),
        "exceptional_measure": report.exceptional_measure,
        "bound": bound,
        "points": points,
    });
    Ok(Outcome::new(results, pass).with_trace("density", &["x", "radius", "density"], rows))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LdtInputs {
    pub f: StepDto,
    #[serde(default)]
    pub k_max: u32,
    pub a: f64,
    pub n_approx: u32,
    pub grid_step: f64,
    #[serde(default)]
    pub schedule: Option<ScheduleDto>,
}

pub fn ldt(i: &LdtInputs) -> Result<Outcome, CliError> {
    let f = i.f.to_core()?;
    let sched = schedule(&i.schedule)?;
    let scan = ldt_full_scan(&f, i.k_max, i.a, i.n_approx, i.grid_step, &sched)?;
    let mut rows = Vec::new();
    let mut per_k = Vec::new();
    for r in &scan.reports {
        for b in &r.bounds {
            rows.push(vec![
                r.k as f64,
                b.n as f64,
                b.l1_error,
                b.markov,
                b.maximal,
                b.combined(),
                b.markov_set_measure,
                r.flagged_measure,
                r.grid_slack,
            ]);
        }
        per_k.push(json!({
            "k": r.k,
            "flagged": SetDto::from(&r.flagged),
            "flagged_measure": r.flagged_measure,
            "grid_slack": r.grid_slack,
            "final_bound": r.final_bound(),
            "consistent": r.consistent,
            "monotone": r.monotone(),
        }));
    }
    let pass = scan.reports.iter().all(|r| r.consistent && r.monotone());
    let results = json!({ "reports": per_k, "flagged_measure": scan.flagged_measure });
    let header =
        ["k", "n", "l1_error", "markov", "maximal", "combined", "markov_set_measure", "flagged_measure", "grid_slack"];
    Ok(Outcome::new(results, pass).with_trace("summary", &header, rows))
}
