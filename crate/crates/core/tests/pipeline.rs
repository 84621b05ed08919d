use locus::exec::Execution;
use locus::gen::{generate, GenSpec};
use locus::oracle::enumerate_optimal;
use locus::pso::{self, SwarmParams};
use locus::qtla::{self, QtlaConfig};
use locus::{Mode, Solution};

#[test]
fn suggest_then_improve_on_a_generated_map() {
    let inst = generate(&GenSpec::new(15, 4, 5, 1.0, 2, 21)).unwrap();
    let best = enumerate_optimal(&inst).unwrap();
    let sweep = qtla::gamma_sweep(&inst, &qtla::default_grid(), &QtlaConfig::default(), Execution::default()).unwrap();
    let start = &sweep.runs[sweep.best].1;
    assert!(inst.is_feasible(&start.solution).ok);
    assert!(start.value <= best.value + 1e-12);
    assert!(start.solves <= 51);

    let params = SwarmParams { particles: 20, iterations: 300, seed: 5, ..Default::default() };
    let rep = pso::replicate(&inst, &start.solution, &params, 3, Execution::default()).unwrap();
    assert!(rep.max >= start.value);
    assert!(rep.max <= best.value + 1e-12);
    assert!(inst.is_feasible(&rep.best).ok);
}

#[test]
fn exact_budget_study_keeps_the_budget() {
    let base = generate(&GenSpec::new(12, 4, 6, 1.0, 0, 4)).unwrap();
    for p in 0..=3 {
        let inst = base.with_mode(Mode::Exact).unwrap().with_budget(p).unwrap();
        let out = qtla::run(&inst, &QtlaConfig::default()).unwrap();
        assert_eq!(out.solution.closed_stations(), p);
        assert_eq!(out.solution.open_lockers(), p);
        if p == 0 {
            assert_eq!(out.solution, Solution::status_quo(&inst));
        }
    }
}

#[test]
fn sweep_is_the_same_sequentially() {
    let inst = generate(&GenSpec::new(10, 3, 4, 0.5, 2, 8)).unwrap();
    let cfg = QtlaConfig::default();
    let a = qtla::gamma_sweep(&inst, &[0.5, 0.9], &cfg, Execution::Sequential).unwrap();
    let b = qtla::gamma_sweep(&inst, &[0.5, 0.9], &cfg, Execution::Parallel).unwrap();
    assert_eq!(a.best_gamma, b.best_gamma);
    let trace = |s: &qtla::SweepOutcome| s.runs.iter().map(|(_, o)| o.trace.clone()).collect::<Vec<_>>();
    assert_eq!(trace(&a), trace(&b));
}
