//! Out-of-process solving through a command template.
//!
//! The template is run with `sh -c` after substituting `{mps}` (model path),
//! `{sol}` (where the solver must write its solution), `{time}` (time limit
//! in seconds, `inf` when unlimited) and `{gap}` (relative gap tolerance).
//!
//! Solution files come in two layouts. Plain text holds one `name value`
//! pair per line, with the optional keys `status`, `objective` and `gap`;
//! `#` starts a comment. JSON is either a flat map of the same keys or
//! `{"status": .., "objective": .., "gap": .., "values": {name: value}}`.
//! Variables absent from the file are zero.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use super::{to_mps, MilpModel, MilpSolution, SolveLimits, SolveStatus};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSolver {
    pub command: String,
}

impl ExternalSolver {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into() }
    }
}

/// Parsed contents of a solution file.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolutionFile {
    pub status: Option<SolveStatus>,
    pub objective: Option<f64>,
    pub gap: Option<f64>,
    pub values: Vec<(String, f64)>,
}

const POLL: Duration = Duration::from_millis(5);

/// Extra time granted past the limit so a solver honouring `{time}` can
/// still write its incumbent.
fn grace(limit: Duration) -> Duration {
    Duration::from_secs(2) + limit / 10
}

pub fn solve_external(model: &MilpModel, ext: &ExternalSolver, limits: &SolveLimits) -> Result<MilpSolution> {
    let start = Instant::now();
    if limits.time_limit == Some(Duration::ZERO) {
        // nothing can be proven in zero time: no incumbent, unbounded gap
        return Ok(MilpSolution {
            status: SolveStatus::TimeLimit,
            objective: None,
            gap: Some(f64::INFINITY),
            assignment: Vec::new(),
            wall_time: start.elapsed(),
        });
    }
    let dir = tempfile::tempdir()?;
    let mps = dir.path().join("model.mps");
    let sol = dir.path().join("model.sol");
    let log = dir.path().join("solver.log");
    std::fs::write(&mps, to_mps(model))?;

    let time = limits.time_limit.map_or("inf".to_string(), |t| t.as_secs_f64().to_string());
    let command = ext
        .command
        .replace("{mps}", &shell_quote(&mps))
        .replace("{sol}", &shell_quote(&sol))
        .replace("{time}", &time)
        .replace("{gap}", &limits.gap_tol.to_string());
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(&command)
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(std::fs::File::create(&log)?)
        .spawn()
        .map_err(|e| Error::ExternalSolverFailure(format!("cannot start `{command}`: {e}")))?;

    let kill_at = limits.time_limit.map(|t| start + t + grace(t));
    let mut killed = false;
    let status = loop {
        if let Some(st) = child.try_wait()? {
            break st;
        }
        if kill_at.is_some_and(|k| Instant::now() >= k) {
            let _ = child.kill();
            killed = true;
            break child.wait()?;
        }
        std::thread::sleep(POLL);
    };

    if killed {
        let parsed = std::fs::read_to_string(&sol).ok().and_then(|t| parse_solution_file(&t).ok());
        let mut out = assemble(model, parsed.unwrap_or_default(), start);
        out.status = SolveStatus::TimeLimit;
        if out.gap == Some(0.0) {
            out.gap = None;
        }
        return Ok(out);
    }
    if !status.success() {
        let stderr = std::fs::read_to_string(&log).unwrap_or_default();
        let tail: String = stderr.lines().rev().take(5).collect::<Vec<_>>().into_iter().rev().collect::<Vec<_>>().join("\n");
        return Err(Error::ExternalSolverFailure(format!("`{command}` exited with {status}: {tail}")));
    }
    let text = std::fs::read_to_string(&sol)
        .map_err(|e| Error::ExternalSolverFailure(format!("no solution file written: {e}")))?;
    let parsed = parse_solution_file(&text).map_err(|e| Error::ExternalSolverFailure(e.to_string()))?;
    Ok(assemble(model, parsed, start))
}

fn assemble(model: &MilpModel, file: SolutionFile, start: Instant) -> MilpSolution {
    let wall_time = start.elapsed();
    let has_values = !file.values.is_empty();
    let status = file.status.unwrap_or(if has_values { SolveStatus::Optimal } else { SolveStatus::Infeasible });
    if !has_values || status == SolveStatus::Infeasible {
        return MilpSolution { status, objective: None, gap: file.gap, assignment: Vec::new(), wall_time };
    }
    let map: HashMap<&str, f64> = file.values.iter().map(|(n, v)| (n.as_str(), *v)).collect();
    let assignment: Vec<(String, f64)> =
        model.variables.iter().map(|v| (v.name.clone(), map.get(v.name.as_str()).copied().unwrap_or(0.0))).collect();
    let objective = file.objective.or_else(|| {
        let values: Vec<f64> = assignment.iter().map(|&(_, v)| v).collect();
        Some(model.objective_value(&values))
    });
    let gap = if status == SolveStatus::Optimal { Some(0.0) } else { file.gap };
    MilpSolution { status, objective, gap, assignment, wall_time }
}

fn shell_quote(path: &Path) -> String {
    format!("'{}'", path.to_string_lossy().replace('\'', r"'\''"))
}

pub fn parse_solution_file(text: &str) -> Result<SolutionFile> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_pairs(text)
    }
}

fn parse_status(s: &str) -> Result<SolveStatus> {
    SolveStatus::parse(s).ok_or_else(|| Error::SolutionFile(format!("unknown status `{s}`")))
}

fn parse_pairs(text: &str) -> Result<SolutionFile> {
    let mut out = SolutionFile::default();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let (key, value) = match tokens[..] {
            [k, v] | [k, "=", v] => (k, v),
            _ => return Err(Error::SolutionFile(format!("line {}: expected `name value`", n + 1))),
        };
        let number = || {
            value.parse::<f64>().map_err(|_| Error::SolutionFile(format!("line {}: bad number `{value}`", n + 1)))
        };
        match key {
            "status" => out.status = Some(parse_status(value)?),
            "objective" => out.objective = Some(number()?),
            "gap" => out.gap = Some(number()?),
            _ => out.values.push((key.to_string(), number()?)),
        }
    }
    Ok(out)
}

fn parse_json(text: &str) -> Result<SolutionFile> {
    use serde_json::Value;
    let root: serde_json::Map<String, Value> = serde_json::from_str(text)?;
    let mut out = SolutionFile::default();
    let num = |k: &str, v: &Value| v.as_f64().ok_or_else(|| Error::SolutionFile(format!("`{k}` must be a number")));
    let mut flat = Vec::new();
    for (k, v) in &root {
        match k.as_str() {
            "status" => {
                let s = v.as_str().ok_or_else(|| Error::SolutionFile("`status` must be a string".into()))?;
                out.status = Some(parse_status(s)?);
            }
            "objective" => out.objective = Some(num(k, v)?),
            "gap" => out.gap = Some(num(k, v)?),
            "values" => {
                let map = v.as_object().ok_or_else(|| Error::SolutionFile("`values` must be an object".into()))?;
                for (name, val) in map {
                    out.values.push((name.clone(), num(name, val)?));
                }
            }
            _ => flat.push((k.clone(), num(k, v)?)),
        }
    }
    out.values.extend(flat);
    Ok(out)
}

/// Text layout of `sol`, readable by [`parse_solution_file`].
pub fn write_solution_file(sol: &MilpSolution) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "status {}", sol.status.as_str());
    if let Some(obj) = sol.objective {
        let _ = writeln!(out, "objective {obj}");
    }
    if let Some(gap) = sol.gap.filter(|g| g.is_finite()) {
        let _ = writeln!(out, "gap {gap}");
    }
    for (name, value) in &sol.assignment {
        let _ = writeln!(out, "{name} {value}");
    }
    out
}
