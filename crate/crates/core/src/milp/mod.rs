//! Solver-independent mixed-integer linear programs.
//!
//! [`build_basic`] and [`build_strengthened`] linearize the fractional
//! objective through `z_i = 1/denominator_i` and the products
//! `yx_ij = x_j·z_i`, `yr_ik = r_k·z_i`. The basic model links the products
//! with big-U rows; the strengthened model replaces them with conditional
//! McCormick rows built from [`crate::bounds`].
//!
//! Variable names carry their role (`x_j`, `r_k`, `z_i`, `yx_i_j`, `yr_i_k`,
//! `beta_i`) so that a model read back from MPS can still be completed by the
//! enumeration backend.

mod enumerate;
mod external;
mod mps;

use std::time::Duration;

pub use enumerate::{solve_enumeration, EnumerationLimits};
pub use external::{parse_solution_file, solve_external, write_solution_file, ExternalSolver, SolutionFile};
pub use mps::{parse_mps, to_mps};

use crate::bounds::{all_bounds, global_upper};
use crate::error::{Error, Result};
use crate::model::{Instance, Mode, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(usize, f64)>,
    pub sense: RowSense,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formulation {
    Basic,
    Mc,
    QtlaSub,
    Generic,
}

impl Formulation {
    pub fn tag(self) -> &'static str {
        match self {
            Formulation::Basic => "BASIC",
            Formulation::Mc => "MC",
            Formulation::QtlaSub => "QTLA_SUB",
            Formulation::Generic => "GENERIC",
        }
    }
}

/// A maximization MILP.
#[derive(Clone, Debug, PartialEq)]
pub struct MilpModel {
    pub name: String,
    pub variables: Vec<Variable>,
    pub rows: Vec<Row>,
    pub objective: Vec<(usize, f64)>,
    pub formulation: Formulation,
    pub instance_hash: u64,
}

impl MilpModel {
    pub fn new(formulation: Formulation, instance_hash: u64) -> Self {
        Self {
            name: format!("LOCUS_{}_{instance_hash:016x}", formulation.tag()),
            variables: Vec::new(),
            rows: Vec::new(),
            objective: Vec::new(),
            formulation,
            instance_hash,
        }
    }

    /// A model named outside the `LOCUS_<TAG>_<hash>` scheme is `Generic`.
    pub fn with_name(name: &str) -> Self {
        let (formulation, instance_hash) = parse_model_name(name);
        Self {
            name: name.to_string(),
            variables: Vec::new(),
            rows: Vec::new(),
            objective: Vec::new(),
            formulation,
            instance_hash,
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, kind: VarKind, lower: f64, upper: f64) -> usize {
        self.variables.push(Variable { name: name.into(), kind, lower, upper });
        self.variables.len() - 1
    }

    /// Zero coefficients are dropped so that every stored term is structural;
    /// terms are kept in variable order, the order an MPS file lists them.
    pub fn add_row(&mut self, name: impl Into<String>, terms: Vec<(usize, f64)>, sense: RowSense, rhs: f64) {
        let mut terms: Vec<(usize, f64)> = terms.into_iter().filter(|&(_, c)| c != 0.0).collect();
        terms.sort_by_key(|&(v, _)| v);
        self.rows.push(Row { name: name.into(), terms, sense, rhs });
    }

    pub fn add_objective(&mut self, var: usize, coef: f64) {
        if coef != 0.0 {
            let at = self.objective.partition_point(|&(v, _)| v <= var);
            self.objective.insert(at, (var, coef));
        }
    }

    pub fn n_binaries(&self) -> usize {
        self.variables.iter().filter(|v| v.kind == VarKind::Binary).count()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().map(|&(v, c)| c * values[v]).sum()
    }

    /// Structural checks: indices in range, finite coefficients, binary bounds.
    pub fn validate(&self) -> Result<()> {
        let n = self.variables.len();
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        for v in &self.variables {
            if v.kind == VarKind::Binary && (v.lower != 0.0 || v.upper != 1.0) {
                return bad(format!("binary `{}` must have bounds [0, 1]", v.name));
            }
            if v.lower > v.upper || v.lower.is_nan() || v.upper.is_nan() {
                return bad(format!("variable `{}` has empty bounds", v.name));
            }
        }
        for row in &self.rows {
            if !row.rhs.is_finite() {
                return bad(format!("row `{}` has non-finite rhs", row.name));
            }
            for &(v, c) in &row.terms {
                if v >= n || !c.is_finite() || c == 0.0 {
                    return bad(format!("row `{}` has an invalid term", row.name));
                }
            }
        }
        for &(v, c) in &self.objective {
            if v >= n || !c.is_finite() {
                return bad("objective has an invalid term".into());
            }
        }
        Ok(())
    }
}

fn parse_model_name(name: &str) -> (Formulation, u64) {
    let Some(rest) = name.strip_prefix("LOCUS_") else {
        return (Formulation::Generic, 0);
    };
    let Some((tag, hash)) = rest.rsplit_once('_') else {
        return (Formulation::Generic, 0);
    };
    let formulation = match tag {
        "BASIC" => Formulation::Basic,
        "MC" => Formulation::Mc,
        "QTLA_SUB" => Formulation::QtlaSub,
        _ => return (Formulation::Generic, 0),
    };
    match u64::from_str_radix(hash, 16) {
        Ok(h) if hash.len() == 16 => (formulation, h),
        _ => (Formulation::Generic, 0),
    }
}

/// Meaning of a variable, recovered from its name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// `x_j`
    Open(usize),
    /// `r_k`
    Keep(usize),
    /// `z_i`
    Inverse(usize),
    /// `yx_i_j`
    LockerProduct(usize, usize),
    /// `yr_i_k`
    StationProduct(usize, usize),
    /// `beta_i`
    Hypograph(usize),
    Other,
}

impl VarRole {
    pub fn of(name: &str) -> Self {
        let mut parts = name.split('_');
        let head = parts.next().unwrap_or_default();
        let nums: Option<Vec<usize>> = parts.map(|p| p.parse().ok()).collect();
        match (head, nums.as_deref()) {
            ("x", Some(&[j])) => VarRole::Open(j),
            ("r", Some(&[k])) => VarRole::Keep(k),
            ("z", Some(&[i])) => VarRole::Inverse(i),
            ("yx", Some(&[i, j])) => VarRole::LockerProduct(i, j),
            ("yr", Some(&[i, k])) => VarRole::StationProduct(i, k),
            ("beta", Some(&[i])) => VarRole::Hypograph(i),
            _ => VarRole::Other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    TimeLimit,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "OPTIMAL",
            SolveStatus::Feasible => "FEASIBLE",
            SolveStatus::Infeasible => "INFEASIBLE",
            SolveStatus::TimeLimit => "TIME_LIMIT",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "OPTIMAL" => Some(SolveStatus::Optimal),
            "FEASIBLE" => Some(SolveStatus::Feasible),
            "INFEASIBLE" => Some(SolveStatus::Infeasible),
            "TIME_LIMIT" | "TIMELIMIT" => Some(SolveStatus::TimeLimit),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MilpSolution {
    pub status: SolveStatus,
    pub objective: Option<f64>,
    /// Relative MIP gap; zero when optimal, `None` when unknown.
    pub gap: Option<f64>,
    /// Values in variable declaration order; empty when there is no incumbent.
    pub assignment: Vec<(String, f64)>,
    pub wall_time: Duration,
}

impl MilpSolution {
    pub fn value(&self, name: &str) -> Option<f64> {
        self.assignment.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveLimits {
    pub time_limit: Option<Duration>,
    pub gap_tol: f64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self { time_limit: None, gap_tol: 0.0 }
    }
}

#[derive(Clone, Debug)]
pub enum Backend {
    Enumeration(EnumerationLimits),
    External(ExternalSolver),
}

impl Default for Backend {
    fn default() -> Self {
        Backend::Enumeration(EnumerationLimits::default())
    }
}

pub fn solve(model: &MilpModel, backend: &Backend, limits: &SolveLimits) -> Result<MilpSolution> {
    model.validate()?;
    match backend {
        Backend::Enumeration(lim) => solve_enumeration(model, lim, limits),
        Backend::External(ext) => solve_external(model, ext, limits),
    }
}

const INTEGRALITY_TOL: f64 = 1e-6;
const OBJECTIVE_TOL: f64 = 1e-6;

/// Round the `x_j` and `r_k` values of an assignment to a [`Solution`].
pub fn extract_solution(inst: &Instance, ms: &MilpSolution) -> Result<Solution> {
    if ms.assignment.is_empty() {
        return Err(Error::NoAssignment(ms.status.as_str().into()));
    }
    let mut x = vec![false; inst.n_lockers()];
    let mut r = vec![false; inst.n_stations()];
    let mut seen_x = vec![false; inst.n_lockers()];
    let mut seen_r = vec![false; inst.n_stations()];
    for (name, value) in &ms.assignment {
        let (slot, seen) = match VarRole::of(name) {
            VarRole::Open(j) if j < x.len() => (&mut x[j], &mut seen_x[j]),
            VarRole::Keep(k) if k < r.len() => (&mut r[k], &mut seen_r[k]),
            _ => continue,
        };
        let rounded = value.round();
        if (value - rounded).abs() >= INTEGRALITY_TOL || !(rounded == 0.0 || rounded == 1.0) {
            return Err(Error::IntegralityViolation { name: name.clone(), value: *value });
        }
        *slot = rounded == 1.0;
        *seen = true;
    }
    if let Some(j) = seen_x.iter().position(|s| !s) {
        return Err(Error::SolutionFile(format!("assignment lacks x_{j}")));
    }
    if let Some(k) = seen_r.iter().position(|s| !s) {
        return Err(Error::SolutionFile(format!("assignment lacks r_{k}")));
    }
    Ok(Solution::new(x, r))
}

/// Round to a [`Solution`] and confirm the reported objective equals the
/// service level of that solution.
pub fn recover_solution(inst: &Instance, ms: &MilpSolution) -> Result<Solution> {
    let sol = extract_solution(inst, ms)?;
    let recomputed = inst.service_level(&sol);
    let reported = ms.objective.unwrap_or(f64::NAN);
    if !((recomputed - reported).abs() <= OBJECTIVE_TOL) {
        return Err(Error::ObjectiveMismatch { reported, recomputed });
    }
    Ok(sol)
}

/// Shared skeleton: binaries, `z`, products, objective, choice rows.
struct Skeleton {
    model: MilpModel,
    x: Vec<usize>,
    r: Vec<usize>,
    z: Vec<usize>,
    /// `yx[i][j]`
    yx: Vec<Vec<usize>>,
    /// `yr[i][k]`
    yr: Vec<Vec<usize>>,
}

fn skeleton(inst: &Instance, formulation: Formulation) -> Skeleton {
    let (ni, nj, nk) = (inst.n_zones(), inst.n_lockers(), inst.n_stations());
    let mut m = MilpModel::new(formulation, inst.fingerprint());
    let x: Vec<usize> = (0..nj).map(|j| m.add_var(format!("x_{j}"), VarKind::Binary, 0.0, 1.0)).collect();
    let r: Vec<usize> = (0..nk).map(|k| m.add_var(format!("r_{k}"), VarKind::Binary, 0.0, 1.0)).collect();
    let z: Vec<usize> =
        (0..ni).map(|i| m.add_var(format!("z_{i}"), VarKind::Continuous, 0.0, f64::INFINITY)).collect();
    let yx: Vec<Vec<usize>> = (0..ni)
        .map(|i| (0..nj).map(|j| m.add_var(format!("yx_{i}_{j}"), VarKind::Continuous, 0.0, f64::INFINITY)).collect())
        .collect();
    let yr: Vec<Vec<usize>> = (0..ni)
        .map(|i| (0..nk).map(|k| m.add_var(format!("yr_{i}_{k}"), VarKind::Continuous, 0.0, f64::INFINITY)).collect())
        .collect();

    let coef = inst.coefficients();
    for i in 0..ni {
        for k in 0..nk {
            m.add_objective(yr[i][k], coef.b_station.get(i, k));
        }
        for j in 0..nj {
            m.add_objective(yx[i][j], coef.b_locker.get(i, j));
        }
    }
    for i in 0..ni {
        let mut terms: Vec<(usize, f64)> = (0..nk).map(|k| (yr[i][k], inst.theta_station().get(i, k))).collect();
        terms.extend((0..nj).map(|j| (yx[i][j], inst.theta_locker().get(i, j))));
        m.add_row(format!("choice_{i}"), terms, RowSense::Eq, 1.0);
    }
    Skeleton { model: m, x, r, z, yx, yr }
}

/// Cardinality rows on opened lockers and kept stations.
pub(crate) fn add_cardinality_rows(m: &mut MilpModel, inst: &Instance, x: &[usize], r: &[usize]) {
    let p = inst.budget() as f64;
    let sense = match inst.mode() {
        Mode::AtMost => (RowSense::Le, RowSense::Ge),
        Mode::Exact => (RowSense::Eq, RowSense::Eq),
    };
    if inst.locker_cap_active() {
        m.add_row("open_lockers", x.iter().map(|&v| (v, 1.0)).collect(), sense.0, p);
    }
    m.add_row("kept_stations", r.iter().map(|&v| (v, 1.0)).collect(), sense.1, inst.n_stations() as f64 - p);
}

/// Product rows `z - U(1-b) <= y <= z` and `y <= U·b` with a per-zone `U`.
fn big_u_rows(m: &mut MilpModel, tag: &str, i: usize, f: usize, y: usize, z: usize, b: usize, u: f64) {
    m.add_row(format!("{tag}_lo_{i}_{f}"), vec![(y, 1.0), (z, -1.0), (b, -u)], RowSense::Ge, -u);
    m.add_row(format!("{tag}_z_{i}_{f}"), vec![(y, 1.0), (z, -1.0)], RowSense::Le, 0.0);
    m.add_row(format!("{tag}_u_{i}_{f}"), vec![(y, 1.0), (b, -u)], RowSense::Le, 0.0);
}

/// Conditional McCormick rows for `y = b·z`:
/// `z - U(1-b) <= y <= z - L0(1-b)` and `L1·b <= y <= U1·b`.
#[allow(clippy::too_many_arguments)]
fn mc_rows(
    m: &mut MilpModel,
    tag: &str,
    (i, f): (usize, usize),
    (y, z, b): (usize, usize, usize),
    global_upper: f64,
    lower_if_zero: f64,
    lower_if_one: f64,
    upper_if_one: f64,
) {
    m.add_row(format!("{tag}_lo_{i}_{f}"), vec![(y, 1.0), (z, -1.0), (b, -global_upper)], RowSense::Ge, -global_upper);
    m.add_row(format!("{tag}_hi_{i}_{f}"), vec![(y, 1.0), (z, -1.0), (b, -lower_if_zero)], RowSense::Le, -lower_if_zero);
    m.add_row(format!("{tag}_on_lo_{i}_{f}"), vec![(y, 1.0), (b, -lower_if_one)], RowSense::Ge, 0.0);
    m.add_row(format!("{tag}_on_hi_{i}_{f}"), vec![(y, 1.0), (b, -upper_if_one)], RowSense::Le, 0.0);
}

/// Big-U reformulation; `U` is the global upper bound of each zone.
pub fn build_basic(inst: &Instance) -> Result<MilpModel> {
    let upper = (0..inst.n_zones()).map(|i| global_upper(inst, i)).collect::<Result<Vec<_>>>()?;
    let Skeleton { mut model, x, r, z, yx, yr } = skeleton(inst, Formulation::Basic);
    for i in 0..inst.n_zones() {
        for j in 0..inst.n_lockers() {
            big_u_rows(&mut model, "yx", i, j, yx[i][j], z[i], x[j], upper[i]);
        }
        for k in 0..inst.n_stations() {
            big_u_rows(&mut model, "yr", i, k, yr[i][k], z[i], r[k], upper[i]);
        }
    }
    add_cardinality_rows(&mut model, inst, &x, &r);
    Ok(model)
}

/// Reformulation with conditional McCormick rows.
pub fn build_strengthened(inst: &Instance) -> Result<MilpModel> {
    let bounds = all_bounds(inst)?;
    let Skeleton { mut model, x, r, z, yx, yr } = skeleton(inst, Formulation::Mc);
    for i in 0..inst.n_zones() {
        let u = bounds.global_upper[i];
        for j in 0..inst.n_lockers() {
            let b = bounds.lockers[i][j];
            mc_rows(&mut model, "yx", (i, j), (yx[i][j], z[i], x[j]), u, b.lower_if_closed, b.lower_if_open, b.upper_if_open);
        }
        for k in 0..inst.n_stations() {
            let b = bounds.stations[i][k];
            mc_rows(&mut model, "yr", (i, k), (yr[i][k], z[i], r[k]), u, b.lower_if_closed, b.lower_if_kept, b.upper_if_kept);
        }
    }
    add_cardinality_rows(&mut model, inst, &x, &r);
    Ok(model)
}

/// Variable values implied by a binary solution in the basic/MC models.
pub fn implied_assignment(inst: &Instance, model: &MilpModel, sol: &Solution) -> Vec<f64> {
    let z: Vec<f64> = (0..inst.n_zones())
        .map(|i| {
            let (_, den) = inst.zone_terms(i, &sol.x, &sol.r);
            if den > 0.0 {
                1.0 / den
            } else {
                0.0
            }
        })
        .collect();
    let bit = |b: bool| if b { 1.0 } else { 0.0 };
    model
        .variables
        .iter()
        .map(|v| match VarRole::of(&v.name) {
            VarRole::Open(j) => bit(sol.x[j]),
            VarRole::Keep(k) => bit(sol.r[k]),
            VarRole::Inverse(i) => z[i],
            VarRole::LockerProduct(i, j) => bit(sol.x[j]) * z[i],
            VarRole::StationProduct(i, k) => bit(sol.r[k]) * z[i],
            _ => 0.0,
        })
        .collect()
}

/// Largest relative violation of any row by `values`.
pub fn max_row_violation(model: &MilpModel, values: &[f64]) -> f64 {
    model
        .rows
        .iter()
        .map(|row| {
            let act: f64 = row.terms.iter().map(|&(v, c)| c * values[v]).sum();
            let scale = 1.0 + row.rhs.abs() + row.terms.iter().map(|&(v, c)| (c * values[v]).abs()).sum::<f64>();
            let viol = match row.sense {
                RowSense::Le => act - row.rhs,
                RowSense::Ge => row.rhs - act,
                RowSense::Eq => (act - row.rhs).abs(),
            };
            viol.max(0.0) / scale
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::small;

    fn two_by_two() -> Instance {
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
    fn basic_model_dimensions() {
        let m = build_basic(&two_by_two()).unwrap();
        assert_eq!(m.variables.len(), 14);
        // 2 choice rows, 3 linking rows per (zone, facility) pair, 2 cardinality rows
        assert_eq!(m.rows.len(), 2 + 3 * 4 + 3 * 4 + 2);
        assert_eq!(m.n_binaries(), 4);
        assert_eq!(m.formulation, Formulation::Basic);
        m.validate().unwrap();
    }

    #[test]
    fn strengthened_model_dimensions() {
        let m = build_strengthened(&two_by_two()).unwrap();
        assert_eq!(m.variables.len(), 14);
        assert_eq!(m.rows.len(), 2 + 4 * 4 + 4 * 4 + 2);
        m.validate().unwrap();
    }

    #[test]
    fn implied_points_satisfy_both_models() {
        let inst = two_by_two();
        for m in [build_basic(&inst).unwrap(), build_strengthened(&inst).unwrap()] {
            for bits in 0u32..16 {
                let sol = Solution::new(vec![bits & 1 != 0, bits & 2 != 0], vec![bits & 4 != 0, bits & 8 != 0]);
                if !inst.is_feasible(&sol).ok {
                    continue;
                }
                let values = implied_assignment(&inst, &m, &sol);
                assert!(max_row_violation(&m, &values) < 1e-12, "{:?}", sol);
                let obj = m.objective_value(&values);
                assert!((obj - inst.service_level(&sol)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mc_rows_pin_products() {
        let inst = two_by_two();
        let m = build_strengthened(&inst).unwrap();
        let sol = Solution::new(vec![true, false], vec![true, true]);
        let mut values = implied_assignment(&inst, &m, &sol);
        let yx00 = m.var_index("yx_0_0").unwrap();
        let yx01 = m.var_index("yx_0_1").unwrap();
        values[yx00] *= 1.01;
        assert!(max_row_violation(&m, &values) > 1e-6);
        values[yx00] /= 1.01;
        values[yx01] = 1e-3;
        assert!(max_row_violation(&m, &values) > 1e-6);
    }

    #[test]
    fn role_names() {
        assert_eq!(VarRole::of("x_3"), VarRole::Open(3));
        assert_eq!(VarRole::of("yr_2_10"), VarRole::StationProduct(2, 10));
        assert_eq!(VarRole::of("beta_0"), VarRole::Hypograph(0));
        assert_eq!(VarRole::of("x"), VarRole::Other);
        assert_eq!(VarRole::of("yx_1"), VarRole::Other);
    }

    #[test]
    fn model_name_round_trip() {
        let m = MilpModel::new(Formulation::QtlaSub, 0xdead_beef);
        let back = MilpModel::with_name(&m.name);
        assert_eq!((back.formulation, back.instance_hash), (Formulation::QtlaSub, 0xdead_beef));
        assert_eq!(MilpModel::with_name("tiny").formulation, Formulation::Generic);
    }

    fn ms(assignment: Vec<(&str, f64)>, objective: f64) -> MilpSolution {
        MilpSolution {
            status: SolveStatus::Optimal,
            objective: Some(objective),
            gap: Some(0.0),
            assignment: assignment.into_iter().map(|(n, v)| (n.to_string(), v)).collect(),
            wall_time: Duration::ZERO,
        }
    }

    #[test]
    fn recover_checks_integrality_and_objective() {
        let inst = two_by_two();
        let sol = Solution::new(vec![true, false], vec![true, false]);
        let c = inst.service_level(&sol);
        let good = ms(vec![("x_0", 1.0), ("x_1", 0.0), ("r_0", 1.0 - 1e-9), ("r_1", 0.0)], c);
        assert_eq!(recover_solution(&inst, &good).unwrap(), sol);

        let frac = ms(vec![("x_0", 0.4), ("x_1", 0.0), ("r_0", 1.0), ("r_1", 0.0)], c);
        assert!(matches!(recover_solution(&inst, &frac), Err(Error::IntegralityViolation { .. })));

        let wrong = ms(vec![("x_0", 1.0), ("x_1", 0.0), ("r_0", 1.0), ("r_1", 0.0)], c + 0.01);
        assert!(matches!(recover_solution(&inst, &wrong), Err(Error::ObjectiveMismatch { .. })));
    }
}
