//! Quadratic transform with linear alternating.
//!
//! Each ratio `num_i / den_i` is rewritten as `max_y 2·y·f_i − y²·den_i` with
//! `f_i = sqrt(num_i)`. The search alternates a damped update of `y` with a
//! sparse sub-MILP in which `f_i` is replaced by a hypograph variable capped
//! by tangent cuts collected at every point visited so far.
//!
//! The run starts from "everything open" (usually infeasible), records each
//! visited point as a cut, and stops once the sub-MILP returns a point it has
//! already seen or the iteration cap is passed. The answer is the best
//! feasible point seen, by true service level.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::milp::{self, add_cardinality_rows, Backend, Formulation, MilpModel, RowSense, SolveLimits, VarKind};
use crate::model::{Instance, Matrix, Solution};

/// `sqrt` of the numerator of zone `i`.
pub fn f_value(inst: &Instance, x: &[bool], r: &[bool], i: usize) -> f64 {
    inst.zone_terms(i, x, r).0.sqrt()
}

/// `f_i / den_i`, the maximizer of the transformed term (0 for an empty
/// denominator).
pub fn optimal_y(inst: &Instance, sol: &Solution) -> Vec<f64> {
    (0..inst.n_zones())
        .map(|i| {
            let (num, den) = inst.zone_terms(i, &sol.x, &sol.r);
            if den > 0.0 {
                num.sqrt() / den
            } else {
                0.0
            }
        })
        .collect()
}

/// `y ← (1−γ)·y + γ·f/den` at `at`.
pub fn update_y(y: &[f64], inst: &Instance, at: &Solution, gamma: f64) -> Vec<f64> {
    y.iter().zip(optimal_y(inst, at)).map(|(&prev, target)| (1.0 - gamma) * prev + gamma * target).collect()
}

/// Transformed objective `Σ 2·y_i·f_i − y_i²·den_i`.
pub fn transformed_objective(inst: &Instance, sol: &Solution, y: &[f64]) -> f64 {
    (0..inst.n_zones())
        .map(|i| {
            let (num, den) = inst.zone_terms(i, &sol.x, &sol.r);
            2.0 * y[i] * num.sqrt() - y[i] * y[i] * den
        })
        .sum()
}

/// Tangent data of every zone at one recorded point.
#[derive(Clone, Debug, PartialEq)]
pub struct CutPoint {
    pub point: Solution,
    /// `f_i` at the point.
    pub f: Vec<f64>,
    /// `grad_x[i][j] = b_ij / (2·f_i + ε)`
    pub grad_x: Matrix,
    /// `grad_r[i][k] = b̃_ik / (2·f_i + ε)`
    pub grad_r: Matrix,
}

impl CutPoint {
    /// Right-hand side of zone `i`'s cut evaluated at `(x, r)`.
    pub fn rhs(&self, i: usize, x: &[bool], r: &[bool]) -> f64 {
        let step = |now: bool, then: bool| f64::from(u8::from(now)) - f64::from(u8::from(then));
        let mut v = self.f[i];
        for (j, (&now, &then)) in x.iter().zip(&self.point.x).enumerate() {
            v += self.grad_x.get(i, j) * step(now, then);
        }
        for (k, (&now, &then)) in r.iter().zip(&self.point.r).enumerate() {
            v += self.grad_r.get(i, k) * step(now, then);
        }
        v
    }
}

pub fn cut_coefficients(inst: &Instance, point: &Solution, eps: f64) -> CutPoint {
    let ni = inst.n_zones();
    let f: Vec<f64> = (0..ni).map(|i| f_value(inst, &point.x, &point.r, i)).collect();
    let coef = inst.coefficients();
    let grad_x = Matrix::from_fn(ni, inst.n_lockers(), |i, j| coef.b_locker.get(i, j) / (2.0 * f[i] + eps));
    let grad_r = Matrix::from_fn(ni, inst.n_stations(), |i, k| coef.b_station.get(i, k) / (2.0 * f[i] + eps));
    CutPoint { point: point.clone(), f, grad_x, grad_r }
}

/// Recorded points, without duplicates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CutSet {
    points: Vec<CutPoint>,
}

impl CutSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, sol: &Solution) -> bool {
        self.points.iter().any(|c| &c.point == sol)
    }

    /// False (and no change) when the point is already recorded.
    pub fn insert(&mut self, cut: CutPoint) -> bool {
        if self.contains(&cut.point) {
            return false;
        }
        self.points.push(cut);
        true
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[CutPoint] {
        &self.points
    }
}

/// Largest value `f_i` can take: every facility open.
fn f_max(inst: &Instance, i: usize) -> f64 {
    let c = inst.coefficients();
    (c.b_station.row(i).iter().sum::<f64>() + c.b_locker.row(i).iter().sum::<f64>()).sqrt()
}

/// Sub-MILP over `x`, `r` and one hypograph variable `beta_i` per zone.
pub fn build_submilp(inst: &Instance, cuts: &CutSet, y: &[f64]) -> Result<MilpModel> {
    if cuts.is_empty() {
        return Err(Error::InvalidParameter("the sub-problem needs at least one cut".into()));
    }
    if y.len() != inst.n_zones() {
        return Err(Error::DimensionMismatch { expected: inst.n_zones(), got: y.len() });
    }
    if y.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
        return Err(Error::InvalidParameter("y must be finite and nonnegative".into()));
    }
    let (ni, nj, nk) = (inst.n_zones(), inst.n_lockers(), inst.n_stations());
    let mut m = MilpModel::new(Formulation::QtlaSub, inst.fingerprint());
    let x: Vec<usize> = (0..nj).map(|j| m.add_var(format!("x_{j}"), VarKind::Binary, 0.0, 1.0)).collect();
    let r: Vec<usize> = (0..nk).map(|k| m.add_var(format!("r_{k}"), VarKind::Binary, 0.0, 1.0)).collect();
    let beta: Vec<usize> =
        (0..ni).map(|i| m.add_var(format!("beta_{i}"), VarKind::Continuous, 0.0, f_max(inst, i))).collect();

    for i in 0..ni {
        m.add_objective(beta[i], 2.0 * y[i]);
    }
    for j in 0..nj {
        m.add_objective(x[j], -(0..ni).map(|i| y[i] * y[i] * inst.theta_locker().get(i, j)).sum::<f64>());
    }
    for k in 0..nk {
        m.add_objective(r[k], -(0..ni).map(|i| y[i] * y[i] * inst.theta_station().get(i, k)).sum::<f64>());
    }

    for (t, cut) in cuts.points().iter().enumerate() {
        for i in 0..ni {
            // beta_i − Σ g·x − Σ g·r ≤ f − Σ g·x^t − Σ g·r^t
            let mut terms = vec![(beta[i], 1.0)];
            let mut rhs = cut.f[i];
            for j in 0..nj {
                let g = cut.grad_x.get(i, j);
                terms.push((x[j], -g));
                if cut.point.x[j] {
                    rhs -= g;
                }
            }
            for k in 0..nk {
                let g = cut.grad_r.get(i, k);
                terms.push((r[k], -g));
                if cut.point.r[k] {
                    rhs -= g;
                }
            }
            m.add_row(format!("cut_{i}_{t}"), terms, RowSense::Le, rhs);
        }
    }
    add_cardinality_rows(&mut m, inst, &x, &r);
    Ok(m)
}

/// Order of the first `y` update and the first sub-MILP.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FirstStep {
    /// Update `y` at the all-open start point before the first solve.
    #[default]
    UpdateThenSolve,
    /// Solve once with `y = 0`; the degenerate sub-MILP then returns the
    /// lexicographically smallest feasible point.
    SolveWithZeroY,
}

#[derive(Clone, Debug)]
pub struct QtlaConfig {
    /// Step size in `(0, 1]`.
    pub gamma: f64,
    /// Iteration cap; at most `n_max + 1` sub-MILPs are solved.
    pub n_max: usize,
    /// Gradient guard.
    pub eps: f64,
    pub first_step: FirstStep,
    pub backend: Backend,
    pub limits: SolveLimits,
}

impl Default for QtlaConfig {
    fn default() -> Self {
        Self {
            gamma: 0.9,
            n_max: 50,
            eps: 1e-4,
            first_step: FirstStep::default(),
            backend: Backend::default(),
            limits: SolveLimits::default(),
        }
    }
}

impl QtlaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        if self.n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {}", self.eps)));
        }
        Ok(())
    }
}

/// Search state between iterations.
#[derive(Clone, Debug)]
pub struct QtlaState {
    pub iteration: usize,
    pub y: Vec<f64>,
    pub current: Solution,
    pub cuts: CutSet,
}

impl QtlaState {
    pub fn start(inst: &Instance) -> Self {
        Self {
            iteration: 0,
            y: vec![0.0; inst.n_zones()],
            current: Solution::all_open(inst.n_lockers(), inst.n_stations()),
            cuts: CutSet::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TracePoint {
    pub iteration: usize,
    /// Service level of the point returned by this iteration's sub-MILP.
    pub objective: f64,
    /// Best feasible service level seen so far.
    pub best: f64,
}

#[derive(Clone, Debug)]
pub struct QtlaOutcome {
    pub solution: Solution,
    pub value: f64,
    pub trace: Vec<TracePoint>,
    /// Sub-MILPs solved.
    pub solves: usize,
    pub cuts: CutSet,
}

fn keep_best(best: &mut Option<(f64, Solution)>, inst: &Instance, sol: &Solution) {
    if !inst.is_feasible(sol).ok {
        return;
    }
    let v = inst.service_level(sol);
    let wins = match best {
        None => true,
        Some((bv, bs)) => v > *bv || (v == *bv && sol < bs),
    };
    if wins {
        *best = Some((v, sol.clone()));
    }
}

pub fn run(inst: &Instance, cfg: &QtlaConfig) -> Result<QtlaOutcome> {
    cfg.validate()?;
    let mut state = QtlaState::start(inst);
    let mut best: Option<(f64, Solution)> = None;
    let mut trace = Vec::new();
    keep_best(&mut best, inst, &state.current);
    loop {
        state.iteration += 1;
        let skip_update = state.iteration == 1 && cfg.first_step == FirstStep::SolveWithZeroY;
        if !skip_update {
            state.y = update_y(&state.y, inst, &state.current, cfg.gamma);
        }
        state.cuts.insert(cut_coefficients(inst, &state.current, cfg.eps));

        let model = build_submilp(inst, &state.cuts, &state.y)?;
        let ms = milp::solve(&model, &cfg.backend, &cfg.limits)?;
        let next = milp::extract_solution(inst, &ms)?;
        keep_best(&mut best, inst, &next);
        trace.push(TracePoint {
            iteration: state.iteration,
            objective: inst.service_level(&next),
            best: best.as_ref().map_or(f64::NAN, |b| b.0),
        });
        let seen = state.cuts.contains(&next);
        state.current = next;
        if seen || state.iteration > cfg.n_max {
            break;
        }
    }
    let (value, solution) = best.ok_or(Error::EmptyFeasibleSet)?;
    Ok(QtlaOutcome { solution, value, trace, solves: state.iteration, cuts: state.cuts })
}

/// Step sizes tried by default.
pub fn default_grid() -> Vec<f64> {
    vec![0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub best_gamma: f64,
    /// Index into `runs` of the winning step size.
    pub best: usize,
    /// One run per grid value, in grid order.
    pub runs: Vec<(f64, QtlaOutcome)>,
}

/// Runs every step size of `grid`; values within 1e-9 of the best go to the
/// smaller step size.
pub fn gamma_sweep(inst: &Instance, grid: &[f64], cfg: &QtlaConfig, exec: Execution) -> Result<SweepOutcome> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("gamma grid is empty".into()));
    }
    let outcomes = exec::map(exec, grid, |&gamma| run(inst, &QtlaConfig { gamma, ..cfg.clone() }));
    let runs: Vec<(f64, QtlaOutcome)> =
        grid.iter().copied().zip(outcomes).map(|(g, o)| o.map(|o| (g, o))).collect::<Result<_>>()?;
    let top = runs.iter().map(|(_, o)| o.value).fold(f64::NEG_INFINITY, f64::max);
    let best = (0..runs.len())
        .filter(|&e| runs[e].1.value >= top - 1e-9)
        .min_by(|&a, &b| runs[a].0.total_cmp(&runs[b].0))
        .expect("grid is nonempty");
    Ok(SweepOutcome { best_gamma: runs[best].0, best, runs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::EnumerationLimits;
    use crate::model::tests::small;
    use crate::model::Mode;
    use approx::assert_relative_eq;

    fn inst() -> Instance {
        small(
            &[0.4, 0.6],
            &[vec![1.0, 0.5], vec![0.2, 1.0]],
            &[vec![2.0, 0.3], vec![1.0, 1.0]],
            &[vec![1.0, 0.5], vec![0.5, 0.0]],
            &[vec![0.7, 1.1], vec![2.5, 0.4]],
            1,
            Mode::AtMost,
        )
    }

    #[test]
    fn f_values() {
        let inst = inst();
        assert_eq!(f_value(&inst, &[false, false], &[false, false], 0), 0.0);
        let one = small(&[1.0], &[vec![0.25]], &[vec![1.0]], &[vec![]], &[vec![]], 0, Mode::AtMost);
        assert_eq!(f_value(&one, &[], &[true], 0), 0.5);
        let (num, _) = inst.zone_terms(1, &[true, false], &[false, true]);
        assert_relative_eq!(f_value(&inst, &[true, false], &[false, true], 1).powi(2), num, epsilon = 1e-15);
    }

    #[test]
    fn y_updates() {
        let inst = inst();
        let at = Solution::new(vec![true, false], vec![true, true]);
        assert_eq!(update_y(&[0.3, 0.1], &inst, &at, 1.0), optimal_y(&inst, &at));
        let half = update_y(&[0.0, 0.0], &inst, &at, 0.5);
        assert_relative_eq!(half[0], 0.5 * optimal_y(&inst, &at)[0]);
        let mut y = vec![0.0, 0.0];
        for _ in 0..200 {
            y = update_y(&y, &inst, &at, 0.3);
        }
        let target = optimal_y(&inst, &at);
        assert_relative_eq!(y[0], target[0], epsilon = 1e-12);
        assert_relative_eq!(y[1], target[1], epsilon = 1e-12);
    }

    #[test]
    fn transform_matches_service_level() {
        let inst = inst();
        let sol = Solution::new(vec![false, true], vec![true, false]);
        let y = optimal_y(&inst, &sol);
        assert_relative_eq!(transformed_objective(&inst, &sol, &y), inst.service_level(&sol), epsilon = 1e-12);
    }

    #[test]
    fn guarded_gradients() {
        let one = small(&[1.0], &[vec![0.3]], &[vec![1.0]], &[vec![0.5]], &[vec![1.0]], 1, Mode::AtMost);
        let zero = cut_coefficients(&one, &Solution::new(vec![false], vec![false]), 1e-4);
        assert_eq!(zero.grad_x.get(0, 0), 0.5 / 1e-4);
        // f = 0.5 at r = 1 when b̃ = 0.25
        let quarter = small(&[1.0], &[vec![0.25]], &[vec![1.0]], &[vec![0.3]], &[vec![1.0]], 1, Mode::AtMost);
        let cut = cut_coefficients(&quarter, &Solution::new(vec![false], vec![true]), 1e-4);
        assert_eq!(cut.f[0], 0.5);
        assert_relative_eq!(cut.grad_x.get(0, 0), 0.3 / 1.0001, epsilon = 1e-15);
        assert_relative_eq!(cut.grad_x.get(0, 0), 0.29997, epsilon = 1e-5);
        let no_service = small(&[1.0], &[vec![0.25]], &[vec![1.0]], &[vec![0.0]], &[vec![1.0]], 1, Mode::AtMost);
        let cut = cut_coefficients(&no_service, &Solution::new(vec![false], vec![true]), 1e-4);
        assert_eq!(cut.grad_x.get(0, 0), 0.0);
        assert_eq!(cut.rhs(0, &[false], &[true]), cut.f[0]);
    }

    #[test]
    fn cut_set_rejects_duplicates() {
        let inst = inst();
        let mut cuts = CutSet::new();
        let p = Solution::all_open(2, 2);
        assert!(cuts.insert(cut_coefficients(&inst, &p, 1e-4)));
        assert!(!cuts.insert(cut_coefficients(&inst, &p, 1e-4)));
        assert_eq!(cuts.len(), 1);
    }

    #[test]
    fn zero_y_submilp_is_degenerate() {
        let inst = inst();
        let mut cuts = CutSet::new();
        cuts.insert(cut_coefficients(&inst, &Solution::all_open(2, 2), 1e-4));
        let m = build_submilp(&inst, &cuts, &[0.0, 0.0]).unwrap();
        assert!(m.objective.is_empty());
        let ms = milp::solve(&m, &Backend::default(), &SolveLimits::default()).unwrap();
        let sol = milp::extract_solution(&inst, &ms).unwrap();
        // lexicographically smallest feasible point
        assert_eq!(sol, Solution::new(vec![false, false], vec![false, true]));
    }

    #[test]
    fn submilp_beats_every_point_under_its_cuts() {
        let inst = inst();
        let mut cuts = CutSet::new();
        for p in [Solution::all_open(2, 2), Solution::new(vec![true, false], vec![false, true])] {
            cuts.insert(cut_coefficients(&inst, &p, 1e-4));
        }
        let y = optimal_y(&inst, &Solution::new(vec![true, false], vec![true, true]));
        let m = build_submilp(&inst, &cuts, &y).unwrap();
        let opt = milp::solve(&m, &Backend::default(), &SolveLimits::default()).unwrap().objective.unwrap();
        for bits in 0u32..16 {
            let sol = Solution::new(vec![bits & 1 != 0, bits & 2 != 0], vec![bits & 4 != 0, bits & 8 != 0]);
            if !inst.is_feasible(&sol).ok {
                continue;
            }
            let (ni, theta_s, theta_l) = (inst.n_zones(), inst.theta_station(), inst.theta_locker());
            let mut v = 0.0;
            for i in 0..ni {
                let beta = cuts.points().iter().map(|c| c.rhs(i, &sol.x, &sol.r)).fold(f64::INFINITY, f64::min);
                let den: f64 = (0..2).filter(|&k| sol.r[k]).map(|k| theta_s.get(i, k)).sum::<f64>()
                    + (0..2).filter(|&j| sol.x[j]).map(|j| theta_l.get(i, j)).sum::<f64>();
                v += 2.0 * y[i] * beta.min(f_max(&inst, i)) - y[i] * y[i] * den;
            }
            assert!(opt >= v - 1e-12, "{sol:?}");
        }
    }

    #[test]
    fn zero_budget_keeps_all_stations() {
        let inst = inst().with_budget(0).unwrap();
        let out = run(&inst, &QtlaConfig::default()).unwrap();
        assert_eq!(out.solution, Solution::status_quo(&inst));
    }

    #[test]
    fn run_respects_iteration_cap() {
        let inst = inst();
        for first_step in [FirstStep::UpdateThenSolve, FirstStep::SolveWithZeroY] {
            let cfg = QtlaConfig { n_max: 1, first_step, ..Default::default() };
            let out = run(&inst, &cfg).unwrap();
            assert!(out.solves <= 2);
            assert!(inst.is_feasible(&out.solution).ok);
            assert_eq!(out.value, inst.service_level(&out.solution));
        }
    }

    #[test]
    fn sweep_ties_go_to_smallest_gamma() {
        let inst = inst();
        let cfg = QtlaConfig {
            backend: Backend::Enumeration(EnumerationLimits::default()),
            ..Default::default()
        };
        let single = gamma_sweep(&inst, &[0.7], &cfg, Execution::Sequential).unwrap();
        assert_eq!(single.best_gamma, 0.7);
        let sweep = gamma_sweep(&inst, &[1.0, 0.5, 0.9], &cfg, Execution::Parallel).unwrap();
        let top = sweep.runs.iter().map(|r| r.1.value).fold(f64::MIN, f64::max);
        let expect = sweep.runs.iter().filter(|r| r.1.value >= top - 1e-9).map(|r| r.0).fold(f64::MAX, f64::min);
        assert_eq!(sweep.best_gamma, expect);
        assert!(gamma_sweep(&inst, &[], &cfg, Execution::Sequential).is_err());
        assert!(run(&inst, &QtlaConfig { gamma: 0.0, ..Default::default() }).is_err());
    }
}
