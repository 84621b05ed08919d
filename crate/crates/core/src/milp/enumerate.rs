//! Exact solve by enumerating binary points.
//!
//! Pure-binary rows whose coefficients are all equal become cardinality
//! groups: each group is walked as subsets of "flipped" members counted from
//! a default state, so a budget of `P` over `n` lockers costs `Σ C(n, s)`
//! points instead of `2^n`. Binaries outside any group are enumerated freely.
//!
//! Continuous variables are completed from their role (see [`VarRole`]):
//! `z_i` from its choice row, products as `binary · z_i`, and hypograph
//! variables at the tightest of their `≤` rows. Every row is then checked
//! before a point may replace the incumbent.

use std::collections::HashMap;
use std::time::Instant;

use super::{MilpModel, MilpSolution, RowSense, SolveLimits, SolveStatus, VarKind, VarRole};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};

const ROW_TOL: f64 = 1e-9;
const TASKS_PER_RUN: usize = 256;

#[derive(Clone, Debug)]
pub struct EnumerationLimits {
    /// Cap on the number of binary variables.
    pub max_binaries: usize,
    /// Cap on the number of points visited after exploiting cardinality groups.
    pub max_points: u128,
    pub execution: Execution,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { max_binaries: 26, max_points: 50_000_000, execution: Execution::default() }
    }
}

pub fn solve_enumeration(model: &MilpModel, lim: &EnumerationLimits, limits: &SolveLimits) -> Result<MilpSolution> {
    let start = Instant::now();
    model.validate()?;
    let nb = model.n_binaries();
    if nb > lim.max_binaries {
        return Err(Error::EnumerationTooLarge { what: "binary count", size: nb as u128, cap: lim.max_binaries as u128 });
    }
    let Some(plan) = Plan::new(model)? else {
        return Ok(empty(SolveStatus::Infeasible, start));
    };
    let points = plan.points();
    if points > lim.max_points {
        return Err(Error::EnumerationTooLarge { what: "point count", size: points, cap: lim.max_points });
    }
    let deadline = limits.time_limit.map(|t| start + t);

    let tasks: Vec<Vec<Vec<usize>>> = match plan.groups.first() {
        None => vec![vec![Vec::new()]],
        Some(g) => {
            let mut subsets = Vec::new();
            for s in g.lo..=g.hi {
                for_each_combination(g.members.len(), s, |c| subsets.push(c.to_vec()));
            }
            let chunk = subsets.len().div_ceil(TASKS_PER_RUN).max(1);
            subsets.chunks(chunk).map(|c| c.to_vec()).collect()
        }
    };
    let results = exec::map(lim.execution, &tasks, |task| plan.run_task(task, deadline));

    let mut best: Option<Incumbent> = None;
    let mut timed_out = false;
    for r in results {
        timed_out |= r.timed_out;
        if let Some(c) = r.best {
            if best.as_ref().map_or(true, |b| c.beats(b.objective, &b.bits)) {
                best = Some(c);
            }
        }
    }

    let wall_time = start.elapsed();
    let status = match (&best, timed_out) {
        (_, true) => SolveStatus::TimeLimit,
        (Some(_), false) => SolveStatus::Optimal,
        (None, false) => SolveStatus::Infeasible,
    };
    Ok(match best {
        None => MilpSolution { status, objective: None, gap: None, assignment: Vec::new(), wall_time },
        Some(b) => MilpSolution {
            status,
            objective: Some(b.objective),
            gap: (status == SolveStatus::Optimal).then_some(0.0),
            assignment: model.variables.iter().map(|v| v.name.clone()).zip(b.values).collect(),
            wall_time,
        },
    })
}

fn empty(status: SolveStatus, start: Instant) -> MilpSolution {
    MilpSolution { status, objective: None, gap: None, assignment: Vec::new(), wall_time: start.elapsed() }
}

/// Calls `f` with every `s`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, s: usize, mut f: impl FnMut(&[usize])) {
    if s > n {
        return;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        f(&idx);
        let Some(p) = (0..s).rev().find(|&p| idx[p] != p + n - s) else {
            return;
        };
        idx[p] += 1;
        for q in p + 1..s {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

struct Group {
    /// Positions into the binary list.
    members: Vec<usize>,
    default_on: bool,
    /// Range of flipped members.
    lo: usize,
    hi: usize,
}

struct Incumbent {
    objective: f64,
    bits: Vec<bool>,
    values: Vec<f64>,
}

impl Incumbent {
    fn beats(&self, objective: f64, bits: &[bool]) -> bool {
        better(self.objective, &self.bits, objective, bits)
    }
}

/// Larger objective wins; equal objectives go to the lexicographically
/// smaller bit vector.
fn better(obj: f64, bits: &[bool], than_obj: f64, than_bits: &[bool]) -> bool {
    obj > than_obj || (obj == than_obj && bits < than_bits)
}

struct TaskResult {
    best: Option<Incumbent>,
    timed_out: bool,
}

struct Plan<'a> {
    model: &'a MilpModel,
    /// Variable index of each binary, in declaration order.
    bins: Vec<usize>,
    groups: Vec<Group>,
    /// Per binary: (row, coefficient); the objective is row `rows.len()`.
    cols: Vec<Vec<(usize, f64)>>,
    base_bits: Vec<bool>,
    base_acts: Vec<f64>,
    /// Per row: continuous terms.
    row_cont: Vec<Vec<(usize, f64)>>,
    obj_cont: Vec<(usize, f64)>,
    inverses: Vec<Inverse>,
    products: Vec<(usize, usize, usize)>,
    hypographs: Vec<(usize, Vec<(usize, f64)>)>,
}

struct Inverse {
    var: usize,
    rhs: f64,
    /// (binary position, weight) pairs forming the denominator.
    terms: Vec<(usize, f64)>,
}

impl<'a> Plan<'a> {
    /// `None` when the cardinality rows alone are infeasible.
    fn new(model: &'a MilpModel) -> Result<Option<Self>> {
        let nv = model.variables.len();
        let nr = model.rows.len();
        let bins: Vec<usize> = (0..nv).filter(|&v| model.variables[v].kind == VarKind::Binary).collect();
        let mut bin_pos = vec![None; nv];
        for (p, &v) in bins.iter().enumerate() {
            bin_pos[v] = Some(p);
        }

        let mut cols = vec![Vec::new(); bins.len()];
        let mut row_cont = vec![Vec::new(); nr];
        for (ri, row) in model.rows.iter().enumerate() {
            for &(v, c) in &row.terms {
                match bin_pos[v] {
                    Some(p) => cols[p].push((ri, c)),
                    None => row_cont[ri].push((v, c)),
                }
            }
        }
        let mut obj_cont = Vec::new();
        for &(v, c) in &model.objective {
            match bin_pos[v] {
                Some(p) => cols[p].push((nr, c)),
                None => obj_cont.push((v, c)),
            }
        }

        let Some(groups) = detect_groups(model, &bin_pos, bins.len()) else {
            return Ok(None);
        };
        let mut base_bits = vec![false; bins.len()];
        for g in &groups {
            for &m in &g.members {
                base_bits[m] = g.default_on;
            }
        }
        let mut base_acts = vec![0.0; nr + 1];
        for (p, col) in cols.iter().enumerate() {
            if base_bits[p] {
                for &(ri, c) in col {
                    base_acts[ri] += c;
                }
            }
        }

        let mut plan = Plan {
            model,
            bins,
            groups,
            cols,
            base_bits,
            base_acts,
            row_cont,
            obj_cont,
            inverses: Vec::new(),
            products: Vec::new(),
            hypographs: Vec::new(),
        };
        plan.plan_completion(&bin_pos)?;
        Ok(Some(plan))
    }

    fn plan_completion(&mut self, bin_pos: &[Option<usize>]) -> Result<()> {
        let model = self.model;
        let by_name: HashMap<&str, usize> =
            model.variables.iter().enumerate().map(|(v, var)| (var.name.as_str(), v)).collect();
        let unsupported = |v: usize| Error::UnsupportedModel(model.variables[v].name.clone());
        let product_partner = |role: VarRole| -> Option<(usize, usize)> {
            let (zone, bin) = match role {
                VarRole::LockerProduct(i, j) => (i, format!("x_{j}")),
                VarRole::StationProduct(i, k) => (i, format!("r_{k}")),
                _ => return None,
            };
            let b = *by_name.get(bin.as_str())?;
            Some((zone, bin_pos[b]?))
        };

        for (v, var) in model.variables.iter().enumerate() {
            if var.kind == VarKind::Binary {
                continue;
            }
            match VarRole::of(&var.name) {
                VarRole::Inverse(i) => {
                    // choice row: equality over products of zone i only
                    let row = model.rows.iter().enumerate().find(|(ri, row)| {
                        row.sense == RowSense::Eq
                            && row.rhs > 0.0
                            && !self.row_cont[*ri].is_empty()
                            && row.terms.len() == self.row_cont[*ri].len()
                            && row.terms.iter().all(|&(u, c)| {
                                c > 0.0 && product_partner(VarRole::of(&model.variables[u].name)).is_some_and(|(z, _)| z == i)
                            })
                    });
                    let Some((_, row)) = row else {
                        return Err(unsupported(v));
                    };
                    let terms = row
                        .terms
                        .iter()
                        .map(|&(u, c)| (product_partner(VarRole::of(&model.variables[u].name)).unwrap().1, c))
                        .collect();
                    self.inverses.push(Inverse { var: v, rhs: row.rhs, terms });
                }
                role @ (VarRole::LockerProduct(..) | VarRole::StationProduct(..)) => {
                    let (zone, p) = product_partner(role).ok_or_else(|| unsupported(v))?;
                    let z = *by_name.get(format!("z_{zone}").as_str()).ok_or_else(|| unsupported(v))?;
                    self.products.push((v, p, z));
                }
                VarRole::Hypograph(_) => {
                    if model.objective.iter().any(|&(u, c)| u == v && c < 0.0) {
                        return Err(unsupported(v));
                    }
                    let mut rows = Vec::new();
                    for (ri, row) in model.rows.iter().enumerate() {
                        let cont = &self.row_cont[ri];
                        if !cont.iter().any(|&(u, _)| u == v) {
                            continue;
                        }
                        match cont[..] {
                            [(_, a)] if row.sense == RowSense::Le && a > 0.0 => rows.push((ri, a)),
                            _ => return Err(unsupported(v)),
                        }
                    }
                    if rows.is_empty() && !var.upper.is_finite() {
                        return Err(unsupported(v));
                    }
                    self.hypographs.push((v, rows));
                }
                _ => return Err(unsupported(v)),
            }
        }
        for &(_, _, z) in &self.products {
            if !self.inverses.iter().any(|inv| inv.var == z) {
                return Err(unsupported(z));
            }
        }
        Ok(())
    }

    fn points(&self) -> u128 {
        self.groups
            .iter()
            .map(|g| (g.lo..=g.hi).map(|s| binomial(g.members.len(), s)).fold(0u128, u128::saturating_add))
            .fold(1u128, u128::saturating_mul)
    }

    fn run_task(&self, subsets: &[Vec<usize>], deadline: Option<Instant>) -> TaskResult {
        let mut w = Worker {
            best: None,
            values: vec![0.0; self.model.variables.len()],
            saved: vec![Vec::new(); self.groups.len()],
        };
        let mut acts = self.base_acts.clone();
        let mut bits = self.base_bits.clone();
        for flips in subsets {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return TaskResult { best: w.best, timed_out: true };
            }
            if self.groups.is_empty() {
                self.visit(&acts, &bits, &mut w);
                continue;
            }
            self.apply(&self.groups[0], flips, &mut acts, &mut bits);
            self.descend(1, &mut acts, &mut bits, &mut w);
            acts.copy_from_slice(&self.base_acts);
            for &m in flips {
                bits[self.groups[0].members[m]] = self.groups[0].default_on;
            }
        }
        TaskResult { best: w.best, timed_out: false }
    }

    fn apply(&self, g: &Group, flips: &[usize], acts: &mut [f64], bits: &mut [bool]) {
        let sign = if g.default_on { -1.0 } else { 1.0 };
        for &m in flips {
            let p = g.members[m];
            bits[p] = !g.default_on;
            for &(ri, c) in &self.cols[p] {
                acts[ri] += sign * c;
            }
        }
    }

    fn descend(&self, level: usize, acts: &mut Vec<f64>, bits: &mut Vec<bool>, w: &mut Worker) {
        if level == self.groups.len() {
            self.visit(acts, bits, w);
            return;
        }
        let g = &self.groups[level];
        let mut saved = std::mem::take(&mut w.saved[level]);
        saved.clear();
        saved.extend_from_slice(acts);
        for s in g.lo..=g.hi {
            for_each_combination(g.members.len(), s, |flips| {
                self.apply(g, flips, acts, bits);
                self.descend(level + 1, acts, bits, w);
                acts.copy_from_slice(&saved);
                for &m in flips {
                    bits[g.members[m]] = g.default_on;
                }
            });
        }
        w.saved[level] = saved;
    }

    fn visit(&self, acts: &[f64], bits: &[bool], w: &mut Worker) {
        let Some(objective) = self.complete(acts, bits, &mut w.values) else {
            return;
        };
        if let Some(b) = &w.best {
            if !better(objective, bits, b.objective, &b.bits) {
                return;
            }
        }
        if self.rows_hold(acts, &w.values) {
            w.best = Some(Incumbent { objective, bits: bits.to_vec(), values: w.values.clone() });
        }
    }

    /// Fill continuous values; `None` when the point admits no completion.
    fn complete(&self, acts: &[f64], bits: &[bool], values: &mut [f64]) -> Option<f64> {
        for (p, &v) in self.bins.iter().enumerate() {
            values[v] = if bits[p] { 1.0 } else { 0.0 };
        }
        for inv in &self.inverses {
            let den: f64 = inv.terms.iter().filter(|&&(p, _)| bits[p]).map(|&(_, c)| c).sum();
            if den <= 0.0 {
                return None;
            }
            values[inv.var] = inv.rhs / den;
        }
        for &(v, p, z) in &self.products {
            values[v] = if bits[p] { values[z] } else { 0.0 };
        }
        let nr = self.model.rows.len();
        for (v, rows) in &self.hypographs {
            let var = &self.model.variables[*v];
            let mut top = var.upper;
            for &(ri, a) in rows {
                top = top.min((self.model.rows[ri].rhs - acts[ri]) / a);
            }
            if top < var.lower - ROW_TOL * var.lower.abs().max(1.0) {
                return None;
            }
            values[*v] = top.max(var.lower);
        }
        Some(acts[nr] + self.obj_cont.iter().map(|&(v, c)| c * values[v]).sum::<f64>())
    }

    fn rows_hold(&self, acts: &[f64], values: &[f64]) -> bool {
        self.model.rows.iter().enumerate().all(|(ri, row)| {
            let mut act = acts[ri];
            let mut scale = acts[ri].abs().max(row.rhs.abs()).max(1.0);
            for &(v, c) in &self.row_cont[ri] {
                act += c * values[v];
                scale = scale.max((c * values[v]).abs());
            }
            let tol = ROW_TOL * scale;
            match row.sense {
                RowSense::Le => act <= row.rhs + tol,
                RowSense::Ge => act >= row.rhs - tol,
                RowSense::Eq => (act - row.rhs).abs() <= tol,
            }
        })
    }
}

struct Worker {
    best: Option<Incumbent>,
    values: Vec<f64>,
    saved: Vec<Vec<f64>>,
}

/// Cardinality groups from pure-binary equal-coefficient rows, then the
/// remaining binaries as free singletons. `None` when some group has an
/// empty count range.
fn detect_groups(model: &MilpModel, bin_pos: &[Option<usize>], nb: usize) -> Option<Vec<Group>> {
    // (members, lo count, hi count) in "ones" terms
    let mut found: Vec<(Vec<usize>, i64, i64)> = Vec::new();
    let mut owner: Vec<Option<usize>> = vec![None; nb];
    for row in &model.rows {
        let Some(&(_, c0)) = row.terms.first() else {
            continue;
        };
        if !row.terms.iter().all(|&(v, c)| bin_pos[v].is_some() && c == c0) {
            continue;
        }
        let mut members: Vec<usize> = row.terms.iter().map(|&(v, _)| bin_pos[v].unwrap()).collect();
        members.sort_unstable();
        members.dedup();
        if members.len() != row.terms.len() {
            continue;
        }
        let n = members.len() as i64;
        let t = row.rhs / c0;
        let sense = match (row.sense, c0 < 0.0) {
            (RowSense::Le, true) => RowSense::Ge,
            (RowSense::Ge, true) => RowSense::Le,
            (s, _) => s,
        };
        let floor = || (t + 1e-9).floor().clamp(-1.0, n as f64 + 1.0) as i64;
        let ceil = || (t - 1e-9).ceil().clamp(-1.0, n as f64 + 1.0) as i64;
        let (lo, hi) = match sense {
            RowSense::Le => (0, floor()),
            RowSense::Ge => (ceil(), n),
            RowSense::Eq => (ceil(), floor()),
        };
        match owner[members[0]] {
            Some(g) if found[g].0 == members => {
                found[g].1 = found[g].1.max(lo);
                found[g].2 = found[g].2.min(hi);
            }
            _ if members.iter().any(|&m| owner[m].is_some()) => {}
            _ => {
                for &m in &members {
                    owner[m] = Some(found.len());
                }
                found.push((members, lo, hi));
            }
        }
    }
    for p in 0..nb {
        if owner[p].is_none() {
            found.push((vec![p], 0, 1));
        }
    }
    found
        .into_iter()
        .map(|(members, lo, hi)| {
            let n = members.len() as i64;
            let (lo, hi) = (lo.max(0), hi.min(n));
            if lo > hi {
                return None;
            }
            // walk whichever side needs fewer flips
            let default_on = n - lo < hi;
            let (flo, fhi) = if default_on { (n - hi, n - lo) } else { (lo, hi) };
            Some(Group { members, default_on, lo: flo as usize, hi: fhi as usize })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milp::{build_basic, build_strengthened, extract_solution, Formulation};
    use crate::model::tests::small;
    use crate::model::{Mode, Solution};

    fn solve(m: &MilpModel) -> MilpSolution {
        solve_enumeration(m, &EnumerationLimits::default(), &SolveLimits::default()).unwrap()
    }

    #[test]
    fn combinations_in_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| seen.push(c.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut zero = 0;
        for_each_combination(3, 0, |c| {
            assert!(c.is_empty());
            zero += 1
        });
        assert_eq!(zero, 1);
        assert_eq!(binomial(25, 2), 300);
        assert_eq!(binomial(5, 5), 1);
    }

    #[test]
    fn single_zone_picks_best_pattern() {
        // one locker, two stations, P = 1: six feasible patterns
        let inst = small(&[1.0], &[vec![0.5, 0.8]], &[vec![1.0, 0.6]], &[vec![1.0]], &[vec![2.0]], 1, Mode::AtMost);
        let ms = solve(&build_basic(&inst).unwrap());
        assert_eq!(ms.status, SolveStatus::Optimal);
        assert_eq!(ms.gap, Some(0.0));
        let sol = extract_solution(&inst, &ms).unwrap();
        let mut best = (f64::MIN, Solution::status_quo(&inst));
        for x in [false, true] {
            for r in [vec![true, true], vec![false, true], vec![true, false]] {
                let cand = Solution::new(vec![x], r);
                let c = inst.service_level(&cand);
                if c > best.0 {
                    best = (c, cand);
                }
            }
        }
        assert_eq!(sol, best.1);
        assert!((ms.objective.unwrap() - best.0).abs() < 1e-12);
    }

    #[test]
    fn budget_covering_all_stations_is_unbounded() {
        let inst = small(&[1.0], &[vec![0.5]], &[vec![1.0]], &[vec![1.0]], &[vec![2.0]], 1, Mode::AtMost);
        assert!(matches!(build_basic(&inst), Err(Error::UnboundedZ { zone: 0 })));
    }

    #[test]
    fn exact_mode_single_pattern() {
        let inst = small(&[1.0], &[vec![0.5]], &[vec![1.0]], &[vec![1.0]], &[vec![2.0]], 1, Mode::Exact);
        for m in [build_basic(&inst).unwrap(), build_strengthened(&inst).unwrap()] {
            let sol = extract_solution(&inst, &solve(&m)).unwrap();
            assert_eq!(sol, Solution::new(vec![true], vec![false]));
        }
    }

    #[test]
    fn budget_zero_keeps_status_quo() {
        let inst = small(
            &[0.4, 0.6],
            &[vec![1.0, 0.5], vec![0.2, 1.0]],
            &[vec![2.0, 0.3], vec![1.0, 1.0]],
            &[vec![1.0, 0.5], vec![0.5, 0.0]],
            &[vec![0.7, 1.1], vec![2.5, 0.4]],
            0,
            Mode::AtMost,
        );
        let ms = solve(&build_basic(&inst).unwrap());
        let sol = extract_solution(&inst, &ms).unwrap();
        assert_eq!(sol, Solution::status_quo(&inst));
        assert!((ms.objective.unwrap() - inst.service_level(&sol)).abs() < 1e-12);
    }

    #[test]
    fn generic_binary_model_and_ties() {
        // max a + b subject to a + b <= 1: both singletons tie, smaller bits win
        let mut m = MilpModel::with_name("tie");
        let a = m.add_var("a", VarKind::Binary, 0.0, 1.0);
        let b = m.add_var("b", VarKind::Binary, 0.0, 1.0);
        m.add_row("cap", vec![(a, 1.0), (b, 1.0)], RowSense::Le, 1.0);
        m.add_objective(a, 1.0);
        m.add_objective(b, 1.0);
        let ms = solve(&m);
        assert_eq!(ms.assignment, vec![("a".to_string(), 0.0), ("b".to_string(), 1.0)]);
        assert_eq!(m.formulation, Formulation::Generic);
    }

    #[test]
    fn infeasible_and_caps() {
        let mut m = MilpModel::with_name("none");
        let a = m.add_var("a", VarKind::Binary, 0.0, 1.0);
        m.add_row("need2", vec![(a, 1.0)], RowSense::Ge, 2.0);
        assert_eq!(solve(&m).status, SolveStatus::Infeasible);

        let mut big = MilpModel::with_name("big");
        for v in 0..30 {
            big.add_var(format!("b{v}"), VarKind::Binary, 0.0, 1.0);
        }
        let err = solve_enumeration(&big, &EnumerationLimits::default(), &SolveLimits::default());
        assert!(matches!(err, Err(Error::EnumerationTooLarge { .. })));

        let mut cont = MilpModel::with_name("cont");
        cont.add_var("w", VarKind::Continuous, 0.0, 1.0);
        let err = solve_enumeration(&cont, &EnumerationLimits::default(), &SolveLimits::default());
        assert!(matches!(err, Err(Error::UnsupportedModel(_))));
    }

    #[test]
    fn zero_time_limit_reports_time_limit() {
        let inst = small(&[1.0], &[vec![0.5]], &[vec![1.0]], &[vec![1.0]], &[vec![2.0]], 0, Mode::AtMost);
        let limits = SolveLimits { time_limit: Some(std::time::Duration::ZERO), gap_tol: 0.0 };
        let ms = solve_enumeration(&build_basic(&inst).unwrap(), &EnumerationLimits::default(), &limits).unwrap();
        assert_eq!(ms.status, SolveStatus::TimeLimit);
        assert!(ms.assignment.is_empty());
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let inst = small(
            &[0.4, 0.6],
            &[vec![1.0, 0.5], vec![0.2, 1.0]],
            &[vec![2.0, 0.3], vec![1.0, 1.0]],
            &[vec![1.0, 0.5], vec![0.5, 0.0]],
            &[vec![0.7, 1.1], vec![2.5, 0.4]],
            1,
            Mode::AtMost,
        );
        let m = build_strengthened(&inst).unwrap();
        let seq = EnumerationLimits { execution: Execution::Sequential, ..Default::default() };
        let a = solve_enumeration(&m, &seq, &SolveLimits::default()).unwrap();
        let b = solve(&m);
        assert_eq!(a.assignment, b.assignment);
        assert_eq!(a.objective, b.objective);
    }
}
