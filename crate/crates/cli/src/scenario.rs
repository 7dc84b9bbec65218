//! Scenario files, report records and CSV traces.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::{dispatch, Command, Trace};
use crate::error::CliError;

pub const TOOL: &str = "ldt";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Directory for reports whose scenario gives no absolute output path.
pub const OUT_DIR_VAR: &str = "LDT_OUT_DIR";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    command: String,
    inputs: Value,
    #[serde(default)]
    output_path: Option<String>,
    #[serde(default)]
    seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub command: Command,
    pub inputs: Value,
    pub output_path: Option<String>,
    pub seed: u64,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario, CliError> {
        let raw: RawScenario = serde_json::from_str(text)?;
        let command = Command::from_name(&raw.command)
            .ok_or_else(|| CliError::Parse(format!("unknown command `{}`", raw.command)))?;
        Ok(Scenario { command, inputs: raw.inputs, output_path: raw.output_path, seed: raw.seed })
    }

    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
        Scenario::parse(&text)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Command,
    pub seed: u64,
    pub inputs: Value,
    pub results: Value,
    pub pass: bool,
    /// File names of the CSV traces, relative to the report.
    pub traces: Vec<String>,
}

/// Evaluates a scenario without touching the file system.
pub fn evaluate(s: &Scenario) -> Result<(Report, Vec<Trace>), CliError> {
    let outcome = dispatch(s.command, s.inputs.clone())?;
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: s.command,
        seed: s.seed,
        inputs: s.inputs.clone(),
        results: outcome.results,
        pass: outcome.pass,
        traces: Vec::new(),
    };
    Ok((report, outcome.traces))
}

fn out_dir() -> PathBuf {
    env::var_os(OUT_DIR_VAR).map_or_else(|| PathBuf::from("."), PathBuf::from)
}

/// Absolute paths are kept; relative ones resolve against the output directory.
pub fn resolve_output(requested: Option<&str>, default_name: &str) -> PathBuf {
    match requested {
        Some(p) if Path::new(p).is_absolute() => PathBuf::from(p),
        Some(p) => out_dir().join(p),
        None => out_dir().join(default_name),
    }
}

fn default_report_name(scenario: &Path) -> String {
    let stem = scenario.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    format!("{stem}.report.json")
}

fn trace_path(report: &Path, name: &str) -> PathBuf {
    let file = report.file_name().and_then(|s| s.to_str()).unwrap_or("report.json");
    let base = file.strip_suffix(".json").unwrap_or(file);
    let base = base.strip_suffix(".report").unwrap_or(base);
    report.with_file_name(format!("{base}.{name}.csv"))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.into(), source })?;
    }
    fs::write(path, bytes).map_err(|source| CliError::Write { path: path.into(), source })
}

fn csv_bytes(trace: &Trace) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&trace.header).expect("in-memory write");
    for row in &trace.rows {
        w.write_record(row.iter().map(f64::to_string)).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

pub fn to_pretty_json(value: &impl Serialize) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("report serializes");
    bytes.push(b'\n');
    bytes
}

/// Where a run left its files and whether the check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub report_path: PathBuf,
    pub trace_paths: Vec<PathBuf>,
    pub pass: bool,
}

/// Runs the scenario at `path`, writing the report (to `out` if given) and its traces.
pub fn run_file(path: &Path, out: Option<&Path>) -> Result<RunSummary, CliError> {
    let scenario = Scenario::load(path)?;
    let report_path = match out {
        Some(p) => p.to_path_buf(),
        None => resolve_output(scenario.output_path.as_deref(), &default_report_name(path)),
    };
    let (mut report, traces) = evaluate(&scenario)?;
    let mut trace_paths = Vec::new();
    for t in &traces {
        let p = trace_path(&report_path, t.name);
        write(&p, &csv_bytes(t))?;
        report.traces.push(p.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_owned());
        trace_paths.push(p);
    }
    write(&report_path, &to_pretty_json(&report))?;
    Ok(RunSummary { report_path, trace_paths, pass: report.pass })
}

pub fn write_report(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    write(path, bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_names_follow_the_report() {
        assert_eq!(trace_path(Path::new("out/a.report.json"), "davg"), Path::new("out/a.davg.csv"));
        assert_eq!(trace_path(Path::new("b.json"), "x"), Path::new("b.x.csv"));
    }

    #[test]
    fn unknown_command_is_a_parse_error() {
        let e = Scenario::parse(r#"{"command": "nope", "inputs": {}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert_eq!(Scenario::parse("{").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn csv_has_header() {
        let t = Trace { name: "t", header: vec!["x", "y"], rows: vec![vec![0.5, 1.0]] };
        assert_eq!(String::from_utf8(csv_bytes(&t)).unwrap(), "x,y\n0.5,1\n");
    }
}
