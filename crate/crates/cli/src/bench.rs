//! Benchmark grid and the closure study.
//!
//! Bench CSV columns: `size,alpha,p,method,objective_pct,cpu_s,gap_pct,delta1_pct,delta2_pct`.
//! `size` is `IxJxK`. `delta1_pct` compares the reference optimum with the
//! heuristic, `delta2_pct` with the improved heuristic, both relative to the
//! heuristic value. The reference is the oracle when it ran, otherwise an
//! optimal MILP, otherwise the best value in the cell; the deltas are blank
//! when the needed values are missing. A method that fails leaves `FAILED`
//! in its objective column.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;

use locus::exec::{self, Execution};
use locus::gen::{generate, GenSpec};
use locus::milp::SolveStatus;
use locus::model::Penalty;
use locus::oracle::OracleLimits;
use locus::pso::{self, SwarmParams};
use locus::qtla::{self, QtlaConfig};
use locus::{Error, Instance, Mode};

use crate::output::{csv_field, load, pct, Sink};
use crate::solve::{parse_counts, parse_grid, run_method, BackendArgs, HeuristicArgs, Method, MethodResult, RunSettings};
use crate::{Cli, ModeArg};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Network sizes as `IxJxK`, comma separated.
    #[arg(long, default_value = "10x4x4")]
    pub sizes: String,
    /// Utility decay values.
    #[arg(long, default_value = "1")]
    pub alphas: String,
    /// Budgets, as a comma list or `lo:hi`.
    #[arg(long, default_value = "1,2")]
    pub ps: String,
    #[arg(long, value_delimiter = ',', default_value = "oracle,milp,milp+mc,qtla,qtla+pso")]
    pub methods: Vec<Method>,
    #[arg(long, value_enum, default_value_t = ModeArg::AtMost)]
    pub mode: ModeArg,
    #[arg(long)]
    pub no_locker_cap: bool,
    /// Oracle runs only when the instance has at most this many points.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_points: u128,
    #[command(flatten)]
    pub backend: BackendArgs,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub size: (usize, usize, usize),
    pub alpha: f64,
    pub p: usize,
}

fn parse_sizes(s: &str) -> Result<Vec<(usize, usize, usize)>> {
    s.split(',')
        .map(|t| {
            let parts: Vec<usize> = t.trim().split('x').map(|n| n.trim().parse()).collect::<Result<_, _>>().map_err(|_| {
                Error::InvalidParameter(format!("size {t:?} is not IxJxK"))
            })?;
            match parts[..] {
                [i, j, k] => Ok((i, j, k)),
                _ => Err(Error::InvalidParameter(format!("size {t:?} is not IxJxK")).into()),
            }
        })
        .collect()
}

fn oracle_fits(inst: &Instance, cap: u128) -> bool {
    locus::oracle::enumerate_optimal_with(inst, &OracleLimits { max_points: 0, execution: Execution::Sequential })
        .err()
        .map_or(true, |e| match e {
            Error::EnumerationTooLarge { what, size, .. } => what == "oracle point count" && size <= cap,
            _ => true,
        })
}

fn delta(reference: Option<f64>, value: Option<f64>) -> String {
    match (reference, value) {
        (Some(c), Some(v)) if v > 0.0 => pct((c - v) / v),
        _ => String::new(),
    }
}

/// Run every method on one grid cell and format its CSV rows.
fn run_cell(cell: &Cell, a: &BenchArgs, seed: u64, exec: Execution) -> String {
    let (ni, nj, nk) = cell.size;
    let size = format!("{ni}x{nj}x{nk}");
    let prefix = format!("{size},{},{}", cell.alpha, cell.p);
    let spec = GenSpec {
        mode: a.mode.into(),
        locker_cap_active: !a.no_locker_cap,
        ..GenSpec::new(ni, nj, nk, cell.alpha, cell.p, seed)
    };
    let inst = match generate(&spec) {
        Ok(i) => i,
        Err(e) => {
            return a.methods.iter().map(|m| format!("{prefix},{},FAILED,,,,\n", m.label())).collect::<String>()
                + &format!("# {size} alpha {} P {}: {}\n", cell.alpha, cell.p, csv_field(&e.to_string()));
        }
    };
    let settings = RunSettings {
        backend: &a.backend,
        heuristic: &a.heuristic,
        max_points: a.max_points,
        seed,
        exec,
    };
    let results: Vec<(Method, Option<Result<MethodResult>>)> = a
        .methods
        .iter()
        .map(|&m| {
            if m == Method::Oracle && !oracle_fits(&inst, a.max_points) {
                return (m, None);
            }
            (m, Some(run_method(&inst, m, &settings)))
        })
        .collect();
    let ok = |m: Method| {
        results.iter().find(|(mm, _)| *mm == m).and_then(|(_, r)| r.as_ref()).and_then(|r| r.as_ref().ok())
    };
    let reference = ok(Method::Oracle)
        .map(|r| r.value)
        .or_else(|| {
            [Method::MilpMc, Method::Milp]
                .into_iter()
                .filter_map(ok)
                .find(|r| r.status == Some(SolveStatus::Optimal))
                .map(|r| r.value)
        })
        .or_else(|| {
            results
                .iter()
                .filter_map(|(_, r)| r.as_ref().and_then(|r| r.as_ref().ok()))
                .map(|r| r.value)
                .reduce(f64::max)
        });
    let qtla_value = ok(Method::Qtla).map(|r| r.value).or_else(|| ok(Method::QtlaPso).and_then(|r| r.qtla_value));
    let pso_value = ok(Method::QtlaPso).map(|r| r.value);
    let d1 = delta(reference, qtla_value);
    let d2 = delta(reference, pso_value);

    let mut out = String::new();
    for (m, r) in &results {
        match r {
            None => {}
            Some(Ok(r)) => {
                let gap = r.gap.map_or(String::new(), |g| if g.is_finite() { pct(g) } else { "inf".into() });
                let _ = writeln!(
                    out,
                    "{prefix},{},{},{:.3},{gap},{d1},{d2}",
                    m.label(),
                    pct(r.value),
                    r.wall.as_secs_f64()
                );
            }
            Some(Err(e)) => {
                eprintln!("{size} alpha {} P {} {}: {e:#}", cell.alpha, cell.p, m.label());
                let _ = writeln!(out, "{prefix},{},FAILED,,,{d1},{d2}", m.label());
            }
        }
    }
    out
}

pub const BENCH_HEADER: &str = "size,alpha,p,method,objective_pct,cpu_s,gap_pct,delta1_pct,delta2_pct\n";

pub fn bench(cli: &Cli, a: &BenchArgs, out: &Sink) -> Result<()> {
    if a.methods.is_empty() {
        anyhow::bail!(Error::InvalidParameter("at least one method is required".into()));
    }
    a.heuristic.qtla_config(&a.backend)?;
    a.backend.backend()?;
    let mut cells = Vec::new();
    for size in parse_sizes(&a.sizes)? {
        for &alpha in &parse_grid(&a.alphas)? {
            for p in parse_counts(&a.ps)? {
                cells.push(Cell { size, alpha, p });
            }
        }
    }
    // cells spread over the pool; work inside a cell stays on its thread
    let rows = exec::map(Execution::default(), &cells, |c| run_cell(c, a, cli.seed, Execution::Sequential));
    let mut csv = String::from(BENCH_HEADER);
    for r in rows {
        for line in r.lines() {
            if let Some(note) = line.strip_prefix("# ") {
                eprintln!("{note}");
            } else {
                csv.push_str(line);
                csv.push('\n');
            }
        }
    }
    out.write(&csv)
}

#[derive(Args, Debug)]
pub struct CaseStudyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Budgets, as a comma list or `lo:hi`.
    #[arg(long, default_value = "0:3")]
    pub ps: String,
    /// Utility decay values; the instance weights are used when absent.
    #[arg(long)]
    pub alphas: Option<String>,
    /// Leave the number of opened lockers free.
    #[arg(long)]
    pub no_locker_cap: bool,
    #[arg(long, default_value = "0.4:1.0:0.1")]
    pub grid: String,
    #[arg(long, default_value_t = 50)]
    pub nmax: usize,
    #[arg(long, default_value_t = 50)]
    pub particles: usize,
    #[arg(long, default_value_t = 5000)]
    pub iters: usize,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    #[arg(long)]
    pub pso_seed: Option<u64>,
    #[command(flatten)]
    pub backend: BackendArgs,
}

/// One row of the closure study.
#[derive(Clone, Debug)]
pub struct StudyRow {
    pub c: f64,
    pub c_avg: f64,
    pub closed: Vec<String>,
    pub opened: Vec<String>,
    pub facilities: usize,
}

pub fn study_cell(base: &Instance, alpha: Option<f64>, p: usize, a: &CaseStudyArgs, seed: u64) -> Result<StudyRow> {
    let mut inst = base.with_mode(Mode::Exact)?.with_budget(p)?;
    if let Some(al) = alpha {
        inst = inst.with_alpha(al)?;
    }
    if a.no_locker_cap {
        inst = inst.with_locker_cap(false)?;
    }
    let cfg = QtlaConfig {
        n_max: a.nmax,
        backend: a.backend.backend()?,
        limits: a.backend.limits()?,
        ..Default::default()
    };
    let sw = qtla::gamma_sweep(&inst, &parse_grid(&a.grid)?, &cfg, Execution::default())?;
    let start = &sw.runs[sw.best].1;
    let params = SwarmParams {
        particles: a.particles,
        iterations: a.iters,
        penalty: Some(Penalty::squared(1.0)),
        seed: a.pso_seed.unwrap_or(seed),
        ..SwarmParams::case_study()
    };
    let rep = pso::replicate(&inst, &start.solution, &params, a.reps, Execution::default())?;
    let (best, c) = if rep.max >= start.value { (rep.best, rep.max) } else { (start.solution.clone(), start.value) };
    let doc = crate::output::SolutionDoc::of(&inst, &best);
    let facilities = inst.n_stations() - best.closed_stations() + best.open_lockers();
    Ok(StudyRow { c, c_avg: rep.average, closed: doc.r_closed, opened: doc.x, facilities })
}

pub fn casestudy(cli: &Cli, a: &CaseStudyArgs, out: &Sink) -> Result<()> {
    let base = load(&a.instance)?;
    let alphas: Vec<Option<f64>> = match &a.alphas {
        None => vec![None],
        Some(s) => parse_grid(s)?.into_iter().map(Some).collect(),
    };
    let mut csv = String::from("alpha,p,c_pct,c_avg_pct,closed_stations,opened_lockers,x,f\n");
    for &alpha in &alphas {
        for p in parse_counts(&a.ps)? {
            let al = alpha.map_or(String::new(), |v| v.to_string());
            match study_cell(&base, alpha, p, a, cli.seed) {
                Ok(r) => {
                    let _ = writeln!(
                        csv,
                        "{al},{p},{},{},{},{},{},{}",
                        pct(r.c),
                        pct(r.c_avg),
                        csv_field(&r.closed.join(" ")),
                        csv_field(&r.opened.join(" ")),
                        r.opened.len(),
                        r.facilities
                    );
                }
                Err(e) => {
                    eprintln!("alpha {al} P {p}: {e:#}");
                    let _ = writeln!(csv, "{al},{p},FAILED,,,,,");
                }
            }
        }
    }
    out.write(&csv)
}
