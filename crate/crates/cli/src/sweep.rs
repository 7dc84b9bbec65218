//! Seeded random sweeps of a single check.

use ldt_core::{Ball, IntervalSet, StepFunction};
use serde::Serialize;

use crate::commands::{self, Command, Outcome};
use crate::error::CliError;
use crate::format::{BallDto, ClosedDto, PwlDto, SequenceDto, SequenceKindDto, SetDto, StepDto};
use crate::generate::{self, instance_rng, GRID};
use crate::scenario::{TOOL, VERSION};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub count: u64,
    pub seed: u64,
    pub holds: u64,
    /// Instance indices whose check failed.
    pub failures: Vec<u64>,
    pub pass: bool,
}

fn step(f: &StepFunction) -> StepDto {
    f.into()
}

fn set(s: &IntervalSet) -> SetDto {
    s.into()
}

fn dyadic(rng: &mut impl Rng, lo: i32, hi: i32) -> f64 {
    2f64.powi(rng.gen_range(lo..=hi))
}

const SCAN_STEP: f64 = 1.0 / GRID;

/// Runs the check of `command` on one generated instance.
pub fn instance(command: Command, seed: u64, index: u64) -> Result<Outcome, CliError> {
    let rng = &mut instance_rng(seed, index);
    match command {
        Command::Measure => commands::measure(&commands::MeasureInputs {
            set: set(&generate::interval_set(rng)),
            other: Some(set(&generate::interval_set(rng))),
            window: Some([-12.0, 12.0]),
            eps: Some(rng.gen_range(1..64) as f64 / 64.0),
            n: Some(rng.gen_range(1..=100)),
        }),
        Command::Integrate => commands::integrate(&commands::IntegrateInputs {
            f: step(&generate::step_function(rng)),
            set: set(&generate::interval_set(rng)),
        }),
        Command::Markov => commands::markov(&commands::MarkovInputs {
            f: step(&generate::step_function(rng)),
            thresholds: (0..10).map(|_| rng.gen_range(1..=1280) as f64 / GRID).collect(),
        }),
        Command::Vitali => {
            let balls: Vec<Ball> = generate::balls(rng);
            commands::vitali(&commands::VitaliInputs { balls: balls.iter().map(BallDto::from).collect() })
        }
        Command::Maximal => commands::maximal(&commands::MaximalInputs {
            f: step(&generate::step_function(rng)),
            c: (-4..=4).map(|e| 2f64.powi(e)).collect(),
            grid_step: SCAN_STEP,
            points: Vec::new(),
        }),
        Command::Urysohn => {
            let (a, b) = generate::closed_pair(rng);
            commands::urysohn(&commands::UrysohnInputs { a: (&a).into(), b: (&b).into() })
        }
        Command::Tietze => {
            let (a, f) = generate::closed_with_function(rng);
            commands::tietze(&commands::TietzeInputs { a: ClosedDto::from(&a), f: PwlDto::from(&f), bound: 10.0 })
        }
        Command::Lusin => commands::lusin(&commands::LusinInputs {
            f: step(&generate::step_function(rng)),
            a: set(&generate::interval_set(rng)),
            eps: dyadic(rng, -8, -1),
        }),
        Command::ApproxL1 => commands::approx_l1(&commands::ApproxInputs {
            f: step(&generate::step_function(rng)),
            e: SetDto(vec![[-12.0, 12.0]]),
            n: (0..=10).map(|e| 1 << e).collect(),
        }),
        Command::Egorov => {
            let lo = rng.gen_range(-64..64);
            let hi = rng.gen_range(lo + 1..=64);
            commands::egorov(&commands::EgorovInputs {
                sequence: SequenceDto {
                    kind: SequenceKindDto::Power,
                    domain: SetDto(vec![[lo as f64 / 64.0, hi as f64 / 64.0]]),
                    g: None,
                    tail_monotone: true,
                    j_max: 1 << 30,
                },
                eps: dyadic(rng, -8, -1),
                levels: 8,
            })
        }
        Command::LebesgueScan => commands::lebesgue_scan(&commands::ScanInputs {
            f: step(&generate::step_function(rng)),
            grid_step: SCAN_STEP,
            schedule: None,
        }),
        Command::Ftc => {
            let f = generate::step_function(rng);
            let points = (0..8).map(|_| generate::grid_value(rng)).collect();
            commands::ftc(&commands::FtcInputs {
                f: step(&f),
                a: None,
                points,
                h0: 0.125,
                steps: 20,
                symmetric: true,
                tol: 1e-9,
                schedule: None,
            })
        }
        Command::Density => commands::density_cmd(&commands::DensityInputs {
            a: set(&generate::interval_set(rng)),
            grid_step: SCAN_STEP,
            schedule: None,
            points: Vec::new(),
        }),
        Command::Ldt => commands::ldt(&commands::LdtInputs {
            f: step(&generate::step_function(rng)),
            k_max: rng.gen_range(0..=2),
            a: dyadic(rng, -3, 2),
            n_approx: 8,
            grid_step: 1.0 / 32.0,
            schedule: None,
        }),
    }
}

/// Runs `count` generated instances of `command` from `seed`.
pub fn sweep(command: Command, count: u64, seed: u64) -> Result<SweepReport, CliError> {
    if count == 0 {
        return Err(CliError::Validation("count must be at least 1".into()));
    }
    let mut failures = Vec::new();
    for i in 0..count {
        if !instance(command, seed, i)?.pass {
            failures.push(i);
        }
    }
    Ok(SweepReport {
        tool: TOOL,
        version: VERSION,
        command,
        count,
        seed,
        holds: count - failures.len() as u64,
        pass: failures.is_empty(),
        failures,
    })
}
