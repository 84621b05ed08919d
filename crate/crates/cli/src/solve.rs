use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use locus::bounds::all_bounds;
use locus::exec::Execution;
use locus::milp::{self, Backend, EnumerationLimits, ExternalSolver, SolveLimits, SolveStatus};
use locus::oracle::{enumerate_optimal_with, OracleLimits};
use locus::pso::{self, SwarmParams};
use locus::qtla::{self, QtlaConfig};
use locus::{Error, Instance, Solution};

use crate::output::{load, pct, SolutionDoc, Sink};
use crate::{Cli, OracleArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Milp,
    #[value(name = "milp+mc")]
    MilpMc,
    Qtla,
    #[value(name = "qtla+pso")]
    QtlaPso,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Milp => "milp",
            Method::MilpMc => "milp+mc",
            Method::Qtla => "qtla",
            Method::QtlaPso => "qtla+pso",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    Enum,
    External,
}

#[derive(Args, Debug, Clone)]
pub struct BackendArgs {
    #[arg(long, value_enum, default_value_t = BackendKind::Enum)]
    pub backend: BackendKind,
    /// External solver command; `{mps}`, `{sol}`, `{time}` and `{gap}` are substituted.
    #[arg(long, env = "LOCUS_SOLVER_CMD")]
    pub solver_cmd: Option<String>,
    /// Seconds per MILP solve.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Relative optimality gap passed to the solver.
    #[arg(long, default_value_t = 0.0)]
    pub gap: f64,
    /// Largest binary count the built-in enumerator accepts.
    #[arg(long, default_value_t = 26)]
    pub max_binaries: usize,
}

impl BackendArgs {
    pub fn backend(&self) -> Result<Backend> {
        Ok(match self.backend {
            BackendKind::Enum => Backend::Enumeration(EnumerationLimits {
                max_binaries: self.max_binaries,
                ..Default::default()
            }),
            BackendKind::External => {
                let Some(cmd) = &self.solver_cmd else {
                    bail!(Error::InvalidParameter("--backend external needs --solver-cmd or LOCUS_SOLVER_CMD".into()));
                };
                Backend::External(ExternalSolver::new(cmd.clone()))
            }
        })
    }

    pub fn limits(&self) -> Result<SolveLimits> {
        if !(self.gap >= 0.0 && self.gap.is_finite()) {
            bail!(Error::InvalidParameter(format!("gap must be nonnegative, got {}", self.gap)));
        }
        Ok(SolveLimits { time_limit: seconds(self.time_limit)?, gap_tol: self.gap })
    }
}

pub fn seconds(s: Option<f64>) -> Result<Option<Duration>> {
    match s {
        None => Ok(None),
        Some(v) if v.is_finite() && v >= 0.0 => Ok(Some(Duration::from_secs_f64(v))),
        Some(v) if v == f64::INFINITY => Ok(None),
        Some(v) => bail!(Error::InvalidParameter(format!("time limit must be nonnegative, got {v}"))),
    }
}

#[derive(Args, Debug, Clone)]
pub struct HeuristicArgs {
    /// Step size of the auxiliary update.
    #[arg(long, default_value_t = 0.9)]
    pub gamma: f64,
    /// Iteration cap.
    #[arg(long, default_value_t = 50)]
    pub nmax: usize,
    /// Try every step size of `--grid` and keep the best.
    #[arg(long)]
    pub sweep: bool,
    /// Step sizes as `start:stop:step` or a comma list.
    #[arg(long, default_value = "0.4:1.0:0.1")]
    pub grid: String,
    #[arg(long, default_value_t = 50)]
    pub particles: usize,
    #[arg(long, default_value_t = 2000)]
    pub iters: usize,
    #[arg(long, default_value_t = 10)]
    pub reps: usize,
    /// Swarm seed; defaults to `--seed`.
    #[arg(long)]
    pub pso_seed: Option<u64>,
}

impl HeuristicArgs {
    pub fn qtla_config(&self, backend: &BackendArgs) -> Result<QtlaConfig> {
        let cfg = QtlaConfig {
            gamma: self.gamma,
            n_max: self.nmax,
            backend: backend.backend()?,
            limits: backend.limits()?,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn swarm(&self, seed: u64) -> SwarmParams {
        SwarmParams {
            particles: self.particles,
            iterations: self.iters,
            seed: self.pso_seed.unwrap_or(seed),
            ..Default::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Qtla)]
    pub method: Method,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    /// Largest point count for the oracle.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_points: u128,
    /// Check a solution file against the instance instead of solving.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    /// Trace CSV: iterations of the heuristic, or the swarm's best per step.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Step sizes as `start:stop:step` or a comma list.
    #[arg(long, default_value = "0.4:1.0:0.1")]
    pub grid: String,
    #[arg(long, default_value_t = 50)]
    pub nmax: usize,
    #[command(flatten)]
    pub backend: BackendArgs,
}

/// `start:stop:step` inclusive of `stop`, or comma separated values.
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidParameter(format!("cannot read grid {s:?}"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let nums: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let (a, b, step) = (nums[0], nums[1], nums[2]);
        if !(step > 0.0 && a <= b && a.is_finite() && b.is_finite()) {
            bail!(bad());
        }
        let n = ((b - a) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|e| ((a + e as f64 * step) * 1e9).round() / 1e9).collect());
    }
    let vals: Vec<f64> = s
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    if vals.is_empty() {
        bail!(bad());
    }
    Ok(vals)
}

/// Integer list like `0,1,2` or `1:5`.
pub fn parse_counts(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("cannot read list {s:?}"));
    if let Some((a, b)) = s.split_once(':') {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            bail!(bad());
        }
        return Ok((a..=b).collect());
    }
    let v: Vec<usize> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?;
    Ok(v)
}

/// What one method produced on one instance.
#[derive(Clone, Debug)]
pub struct MethodResult {
    pub solution: Solution,
    pub value: f64,
    pub wall: Duration,
    /// Relative gap reported by a MILP solve.
    pub gap: Option<f64>,
    pub status: Option<SolveStatus>,
    /// Mean over swarm replications.
    pub average: Option<f64>,
    pub qtla_value: Option<f64>,
    pub trace_csv: Option<String>,
}

impl MethodResult {
    fn new(solution: Solution, value: f64, wall: Duration) -> Self {
        Self { solution, value, wall, gap: None, status: None, average: None, qtla_value: None, trace_csv: None }
    }
}

pub struct RunSettings<'a> {
    pub backend: &'a BackendArgs,
    pub heuristic: &'a HeuristicArgs,
    pub max_points: u128,
    pub seed: u64,
    pub exec: Execution,
}

fn run_qtla(inst: &Instance, s: &RunSettings) -> Result<qtla::QtlaOutcome> {
    let cfg = s.heuristic.qtla_config(s.backend)?;
    if s.heuristic.sweep {
        let grid = parse_grid(&s.heuristic.grid)?;
        let mut sw = qtla::gamma_sweep(inst, &grid, &cfg, s.exec)?;
        Ok(sw.runs.swap_remove(sw.best).1)
    } else {
        Ok(qtla::run(inst, &cfg)?)
    }
}

pub fn run_method(inst: &Instance, method: Method, s: &RunSettings) -> Result<MethodResult> {
    let start = Instant::now();
    Ok(match method {
        Method::Oracle => {
            let lim = OracleLimits { max_points: s.max_points, execution: s.exec };
            let res = enumerate_optimal_with(inst, &lim)?;
            let mut out = MethodResult::new(res.best, res.value, start.elapsed());
            out.gap = Some(0.0);
            out
        }
        Method::Milp | Method::MilpMc => {
            let model = if method == Method::Milp { milp::build_basic(inst)? } else { milp::build_strengthened(inst)? };
            let ms = milp::solve(&model, &s.backend.backend()?, &s.backend.limits()?)?;
            let sol = milp::recover_solution(inst, &ms)?;
            let value = inst.service_level(&sol);
            let mut out = MethodResult::new(sol, value, start.elapsed());
            out.gap = ms.gap;
            out.status = Some(ms.status);
            out
        }
        Method::Qtla => {
            let o = run_qtla(inst, s)?;
            let mut csv = String::from("iteration,objective,best\n");
            for t in &o.trace {
                let _ = writeln!(csv, "{},{},{}", t.iteration, t.objective, t.best);
            }
            let mut out = MethodResult::new(o.solution, o.value, start.elapsed());
            out.trace_csv = Some(csv);
            out
        }
        Method::QtlaPso => {
            let o = run_qtla(inst, s)?;
            let params = s.heuristic.swarm(s.seed);
            let rep = pso::replicate(inst, &o.solution, &params, s.heuristic.reps, s.exec)?;
            let mut csv = String::from("replication,iteration,gbest\n");
            for (e, run) in rep.runs.iter().enumerate() {
                for (t, g) in run.trace.iter().enumerate() {
                    let _ = writeln!(csv, "{e},{t},{g}");
                }
            }
            // the swarm starts from the heuristic point, so it can only improve
            let (solution, value) = if rep.max >= o.value { (rep.best, rep.max) } else { (o.solution, o.value) };
            let mut out = MethodResult::new(solution, value, start.elapsed());
            out.average = Some(rep.average);
            out.qtla_value = Some(o.value);
            out.trace_csv = Some(csv);
            out
        }
    })
}

fn ids(inst: &Instance, sol: &Solution) -> (String, String) {
    let doc = SolutionDoc::of(inst, sol);
    (doc.x.join(" "), doc.r_closed.join(" "))
}

pub fn report(inst: &Instance, method: &str, res: &MethodResult) -> String {
    let (open, closed) = ids(inst, &res.solution);
    let mut s = String::new();
    let _ = writeln!(s, "method: {method}");
    if let Some(st) = res.status {
        let _ = writeln!(s, "status: {}", st.as_str());
    }
    let _ = writeln!(s, "C: {}%", pct(res.value));
    if let Some(q) = res.qtla_value {
        let _ = writeln!(s, "C_qtla: {}%", pct(q));
    }
    if let Some(avg) = res.average {
        let _ = writeln!(s, "C_avg: {}%", pct(avg));
        let _ = writeln!(s, "C_max: {}%", pct(res.value));
    }
    if let Some(g) = res.gap {
        let _ = writeln!(s, "gap: {}%", if g.is_finite() { pct(g) } else { "inf".into() });
    }
    let _ = writeln!(s, "opened lockers: {open}");
    let _ = writeln!(s, "closed stations: {closed}");
    let _ = writeln!(s, "wall time: {:.3} s", res.wall.as_secs_f64());
    s
}

/// Print the report; the solution file goes to `--output` when given,
/// otherwise after the report.
fn emit(inst: &Instance, method: &str, res: &MethodResult, out: &Sink) -> Result<()> {
    let doc = SolutionDoc::of(inst, &res.solution).to_json()?;
    if out.is_file() {
        print!("{}", report(inst, method, res));
        out.write(&doc)
    } else {
        Sink::new(None).write(&(report(inst, method, res) + &doc))
    }
}

pub fn solve(cli: &Cli, a: &SolveArgs, out: &Sink) -> Result<()> {
    let inst = load(&a.instance)?;
    if let Some(path) = &a.verify {
        return verify(&inst, path);
    }
    let settings = RunSettings {
        backend: &a.backend,
        heuristic: &a.heuristic,
        max_points: a.max_points,
        seed: cli.seed,
        exec: Execution::default(),
    };
    let res = run_method(&inst, a.method, &settings)?;
    if let (Some(path), Some(csv)) = (&a.trace, &res.trace_csv) {
        crate::output::write_atomic(path, csv)?;
    }
    emit(&inst, a.method.label(), &res, out)
}

/// Recompute a solution file: feasibility and the stored service level.
fn verify(inst: &Instance, path: &PathBuf) -> Result<()> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: SolutionDoc = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let sol = doc.to_solution(inst)?;
    let feas = inst.is_feasible(&sol);
    if !feas.ok {
        bail!(Error::InvalidParameter(format!(
            "solution opens {} lockers and closes {} stations, which the budget does not allow",
            sol.open_lockers(),
            sol.closed_stations()
        )));
    }
    let c = inst.service_level(&sol);
    if (c - doc.c).abs() > 1e-9 {
        bail!(Error::ObjectiveMismatch { reported: doc.c, recomputed: c });
    }
    println!("verified: C = {}%", pct(c));
    Ok(())
}

pub fn sweep(_cli: &Cli, a: &SweepArgs, out: &Sink) -> Result<()> {
    let inst = load(&a.instance)?;
    let grid = parse_grid(&a.grid)?;
    let cfg = QtlaConfig {
        n_max: a.nmax,
        backend: a.backend.backend()?,
        limits: a.backend.limits()?,
        ..Default::default()
    };
    let sw = qtla::gamma_sweep(&inst, &grid, &cfg, Execution::default())?;
    let mut csv = String::from("gamma,iteration,objective\n");
    for (g, o) in &sw.runs {
        for t in &o.trace {
            let _ = writeln!(csv, "{g},{},{}", t.iteration, t.objective);
        }
    }
    out.write(&csv)?;
    eprintln!("best gamma {} with C = {}%", sw.best_gamma, pct(sw.runs[sw.best].1.value));
    Ok(())
}

pub fn bounds(a: &crate::InstanceArg, out: &Sink) -> Result<()> {
    let inst = load(&a.instance)?;
    let b = all_bounds(&inst)?;
    let mut csv = String::from("zone,facility,kind,value\n");
    let zones = inst.zone_ids();
    for (i, z) in zones.iter().enumerate() {
        let _ = writeln!(csv, "{z},,global_upper,{}", b.global_upper[i]);
        for (j, l) in b.lockers[i].iter().enumerate() {
            let id = &inst.locker_ids()[j];
            if l.open_possible {
                let _ = writeln!(csv, "{z},{id},upper_if_open,{}", l.upper_if_open);
                let _ = writeln!(csv, "{z},{id},lower_if_open,{}", l.lower_if_open);
            }
            if l.closed_possible {
                let _ = writeln!(csv, "{z},{id},lower_if_closed,{}", l.lower_if_closed);
            }
        }
        for (k, st) in b.stations[i].iter().enumerate() {
            let id = &inst.station_ids()[k];
            if st.kept_possible {
                let _ = writeln!(csv, "{z},{id},upper_if_kept,{}", st.upper_if_kept);
                let _ = writeln!(csv, "{z},{id},lower_if_kept,{}", st.lower_if_kept);
            }
            if st.closed_possible {
                let _ = writeln!(csv, "{z},{id},lower_if_closed,{}", st.lower_if_closed);
            }
        }
    }
    out.write(&csv)
}

pub fn oracle(a: &OracleArgs, out: &Sink) -> Result<()> {
    let inst = load(&a.instance)?;
    let start = Instant::now();
    let res = enumerate_optimal_with(&inst, &OracleLimits { max_points: a.max_points, ..Default::default() })?;
    eprintln!("{} feasible solutions enumerated", res.count);
    let r = MethodResult::new(res.best, res.value, start.elapsed());
    emit(&inst, "oracle", &r, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0.4:1.0:0.1").unwrap(), vec![0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]);
        assert_eq!(parse_grid("0.5, 0.9").unwrap(), vec![0.5, 0.9]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("").is_err());
        assert_eq!(parse_counts("0:3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_counts("1,4").unwrap(), vec![1, 4]);
    }

    #[test]
    fn time_limits() {
        assert_eq!(seconds(Some(1.5)).unwrap(), Some(Duration::from_millis(1500)));
        assert!(seconds(Some(-1.0)).is_err());
        assert_eq!(seconds(None).unwrap(), None);
    }
}
