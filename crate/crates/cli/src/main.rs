mod bench;
mod config;
mod output;
mod solve;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use locus::gen::{generate, GenSpec, StepTable};
use locus::milp::{self, Formulation};
use locus::{Error, Mode};

#[derive(Parser, Debug)]
#[command(name = "locus", version, about = "Parcel locker siting under logit customer choice")]
pub struct Cli {
    /// Master random seed.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Output file; standard output when absent.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// `key = value` file supplying defaults for any long flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Solve an instance.
    Solve(solve::SolveArgs),
    /// Run a grid of generated instances and methods, emitting CSV.
    Bench(bench::BenchArgs),
    /// Step-size sweep of the heuristic, emitting (gamma, iteration, objective) CSV.
    Sweep(solve::SweepArgs),
    /// Dump the bounds on the inverse denominators as CSV.
    Bounds(InstanceArg),
    /// Exhaustive optimum.
    Oracle(OracleArgs),
    /// Closure/opening study over budgets and decay rates.
    Casestudy(bench::CaseStudyArgs),
    /// Write the MILP of an instance in MPS format.
    ExportMps(ExportArgs),
    /// Solve an MPS file with the built-in enumerator and write a solution file.
    SolveMps(SolveMpsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    AtMost,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::AtMost => Mode::AtMost,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, default_value_t = 50)]
    pub ni: usize,
    #[arg(long, default_value_t = 25)]
    pub nj: usize,
    #[arg(long, default_value_t = 25)]
    pub nk: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 5)]
    pub p: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::AtMost)]
    pub mode: ModeArg,
    /// Leave the number of opened lockers unconstrained.
    #[arg(long)]
    pub no_locker_cap: bool,
    /// Use the tighter city service table (steps at 1, 1.5, 2).
    #[arg(long)]
    pub city_table: bool,
}

#[derive(Args, Debug)]
pub struct InstanceArg {
    /// Instance JSON file.
    #[arg(long)]
    pub instance: PathBuf,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Largest number of points to enumerate.
    #[arg(long, default_value_t = 10_000_000)]
    pub max_points: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormulationArg {
    Basic,
    Mc,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = FormulationArg::Mc)]
    pub formulation: FormulationArg,
}

#[derive(Args, Debug)]
pub struct SolveMpsArgs {
    /// Model to read.
    pub mps: PathBuf,
    /// Solution file to write.
    pub sol: PathBuf,
    #[arg(long)]
    pub time_limit: Option<f64>,
    #[arg(long, default_value_t = 26)]
    pub max_binaries: usize,
}

/// Exit status for a failure: 1 invalid input, 2 solver failure, 3 size cap.
fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.downcast_ref::<Error>() else {
        return 1;
    };
    match e {
        Error::EnumerationTooLarge { .. } => 3,
        Error::ExternalSolverFailure(_)
        | Error::IntegralityViolation { .. }
        | Error::ObjectiveMismatch { .. }
        | Error::NoAssignment(_)
        | Error::UnsupportedModel(_)
        | Error::SolutionFile(_)
        | Error::EmptyFeasibleSet => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let argv = match config::expand_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        locus::exec::set_threads(jobs)?;
    }
    let out = output::Sink::new(cli.output.clone());
    match &cli.command {
        Command::Gen(a) => {
            let spec = GenSpec {
                mode: a.mode.into(),
                locker_cap_active: !a.no_locker_cap,
                service: if a.city_table { StepTable::case_study() } else { StepTable::standard() },
                ..GenSpec::new(a.ni, a.nj, a.nk, a.alpha, a.p, cli.seed)
            };
            let inst = generate(&spec)?;
            out.write(&locus::io::instance_to_json(&inst, Some(a.alpha))?)
        }
        Command::Solve(a) => solve::solve(&cli, a, &out),
        Command::Bench(a) => bench::bench(&cli, a, &out),
        Command::Sweep(a) => solve::sweep(&cli, a, &out),
        Command::Bounds(a) => solve::bounds(a, &out),
        Command::Oracle(a) => solve::oracle(a, &out),
        Command::Casestudy(a) => bench::casestudy(&cli, a, &out),
        Command::ExportMps(a) => {
            let inst = output::load(&a.instance)?;
            let model = match a.formulation {
                FormulationArg::Basic => milp::build_basic(&inst)?,
                FormulationArg::Mc => milp::build_strengthened(&inst)?,
            };
            debug_assert!(matches!(model.formulation, Formulation::Basic | Formulation::Mc));
            out.write(&milp::to_mps(&model))
        }
        Command::SolveMps(a) => {
            let text = std::fs::read_to_string(&a.mps).with_context(|| format!("reading {}", a.mps.display()))?;
            let model = milp::parse_mps(&text)?;
            let lim = milp::EnumerationLimits { max_binaries: a.max_binaries, ..Default::default() };
            let limits = milp::SolveLimits { time_limit: solve::seconds(a.time_limit)?, gap_tol: 0.0 };
            let sol = milp::solve_enumeration(&model, &lim, &limits)?;
            output::Sink::new(Some(a.sol.clone())).write(&milp::write_solution_file(&sol))
        }
    }
}
