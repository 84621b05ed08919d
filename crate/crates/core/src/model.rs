//! Problem data, derived coefficients and objective evaluation.
//!
//! An [`Instance`] holds zones (demand), existing stations and candidate
//! lockers together with zone×facility distances, service levels and MNL
//! preference weights. A [`Solution`] opens lockers (`x`) and keeps stations
//! (`r`). The service level is the demand-weighted expected service quality
//! under logit choice among the open facilities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row-major matrix of `f64`, zone-indexed rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from nested rows; every row must have `cols` entries.
    pub fn from_rows(rows: &[Vec<f64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidInstance(format!(
                    "matrix row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }
}

/// How the cardinality constraints on opened lockers and closed stations bind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// At most `P` lockers opened, at most `P` stations closed.
    #[serde(rename = "AT_MOST")]
    AtMost,
    /// Exactly `P` lockers opened and exactly `P` stations closed.
    #[serde(rename = "EXACT")]
    Exact,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::AtMost => "AT_MOST",
            Mode::Exact => "EXACT",
        })
    }
}

/// Raw ingredients of an [`Instance`]; validated by [`Instance::new`].
#[derive(Clone, Debug)]
pub struct InstanceParts {
    pub zones: Vec<String>,
    pub stations: Vec<String>,
    pub lockers: Vec<String>,
    /// Raw demand per zone; normalized to shares on construction.
    pub demand: Vec<f64>,
    pub dist_station: Matrix,
    pub dist_locker: Matrix,
    pub service_station: Matrix,
    pub service_locker: Matrix,
    pub theta_station: Matrix,
    pub theta_locker: Matrix,
    pub budget: usize,
    pub mode: Mode,
    pub locker_cap_active: bool,
}

/// Precomputed numerator weights: `d_i · a · θ` for stations and lockers.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients {
    pub b_station: Matrix,
    pub b_locker: Matrix,
}

/// Validated, immutable problem instance.
#[derive(Clone, Debug)]
pub struct Instance {
    parts: InstanceParts,
    coef: Coefficients,
}

/// A distance/service pair where a farther facility has strictly better service.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityWarning {
    pub zone: usize,
    pub station: bool,
    pub near: usize,
    pub far: usize,
}

impl Instance {
    pub fn new(mut parts: InstanceParts) -> Result<Self> {
        let ni = parts.zones.len();
        let nk = parts.stations.len();
        let nj = parts.lockers.len();
        let bad = |msg: String| Err(Error::InvalidInstance(msg));

        if ni == 0 {
            return bad("at least one zone is required".into());
        }
        if parts.demand.len() != ni {
            return bad(format!("{} demand values for {ni} zones", parts.demand.len()));
        }
        for (name, m, cols) in [
            ("distStation", &parts.dist_station, nk),
            ("aStation", &parts.service_station, nk),
            ("thetaStation", &parts.theta_station, nk),
            ("distLocker", &parts.dist_locker, nj),
            ("aLocker", &parts.service_locker, nj),
            ("thetaLocker", &parts.theta_locker, nj),
        ] {
            if m.rows() != ni || m.cols() != cols {
                return bad(format!(
                    "{name} is {}x{}, expected {ni}x{cols}",
                    m.rows(),
                    m.cols()
                ));
            }
        }
        if parts.demand.iter().any(|d| !d.is_finite() || *d < 0.0) {
            return bad("demand values must be finite and nonnegative".into());
        }
        let total: f64 = parts.demand.iter().sum();
        if total <= 0.0 {
            return bad("total demand must be positive".into());
        }
        for d in &mut parts.demand {
            *d /= total;
        }
        for (name, m) in [("thetaStation", &parts.theta_station), ("thetaLocker", &parts.theta_locker)] {
            if m.values().iter().any(|t| !t.is_finite() || *t <= 0.0) {
                return bad(format!("{name} entries must be finite and strictly positive"));
            }
        }
        for (name, m) in [("aStation", &parts.service_station), ("aLocker", &parts.service_locker)] {
            if m.values().iter().any(|a| !(0.0..=1.0).contains(a)) {
                return bad(format!("{name} entries must lie in [0, 1]"));
            }
        }
        for (name, m) in [("distStation", &parts.dist_station), ("distLocker", &parts.dist_locker)] {
            if m.values().iter().any(|l| !l.is_finite() || *l < 0.0) {
                return bad(format!("{name} entries must be finite and nonnegative"));
            }
        }
        if parts.budget > nj.max(nk) {
            return bad(format!("budget P={} exceeds max(|J|, |K|)={}", parts.budget, nj.max(nk)));
        }

        let coef = derive_coefficients(&parts);
        Ok(Self { parts, coef })
    }

    pub fn n_zones(&self) -> usize {
        self.parts.zones.len()
    }

    pub fn n_stations(&self) -> usize {
        self.parts.stations.len()
    }

    pub fn n_lockers(&self) -> usize {
        self.parts.lockers.len()
    }

    pub fn zone_ids(&self) -> &[String] {
        &self.parts.zones
    }

    pub fn station_ids(&self) -> &[String] {
        &self.parts.stations
    }

    pub fn locker_ids(&self) -> &[String] {
        &self.parts.lockers
    }

    /// Demand shares; they sum to one.
    pub fn demand(&self) -> &[f64] {
        &self.parts.demand
    }

    pub fn dist_station(&self) -> &Matrix {
        &self.parts.dist_station
    }

    pub fn dist_locker(&self) -> &Matrix {
        &self.parts.dist_locker
    }

    pub fn service_station(&self) -> &Matrix {
        &self.parts.service_station
    }

    pub fn service_locker(&self) -> &Matrix {
        &self.parts.service_locker
    }

    pub fn theta_station(&self) -> &Matrix {
        &self.parts.theta_station
    }

    pub fn theta_locker(&self) -> &Matrix {
        &self.parts.theta_locker
    }

    pub fn budget(&self) -> usize {
        self.parts.budget
    }

    pub fn mode(&self) -> Mode {
        self.parts.mode
    }

    pub fn locker_cap_active(&self) -> bool {
        self.parts.locker_cap_active
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coef
    }

    pub fn parts(&self) -> &InstanceParts {
        &self.parts
    }

    pub fn with_budget(&self, budget: usize) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.budget = budget;
        Self::new(parts)
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.mode = mode;
        Self::new(parts)
    }

    pub fn with_locker_cap(&self, active: bool) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.locker_cap_active = active;
        Self::new(parts)
    }

    /// Recompute preference weights as `exp(-alpha · distance)`.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        let mut parts = self.parts.clone();
        parts.theta_station = theta_from_alpha(alpha, &parts.dist_station);
        parts.theta_locker = theta_from_alpha(alpha, &parts.dist_locker);
        Self::new(parts)
    }

    /// Pairs where service improves with distance inside one zone row.
    /// Reported, not rejected.
    pub fn monotonicity_warnings(&self) -> Vec<MonotonicityWarning> {
        let mut out = Vec::new();
        for (station, dist, serv) in [
            (true, &self.parts.dist_station, &self.parts.service_station),
            (false, &self.parts.dist_locker, &self.parts.service_locker),
        ] {
            for i in 0..dist.rows() {
                let mut order: Vec<usize> = (0..dist.cols()).collect();
                order.sort_by(|&a, &b| dist.get(i, a).total_cmp(&dist.get(i, b)));
                for w in order.windows(2) {
                    let (near, far) = (w[0], w[1]);
                    if dist.get(i, far) > dist.get(i, near) && serv.get(i, far) > serv.get(i, near) {
                        out.push(MonotonicityWarning { zone: i, station, near, far });
                    }
                }
            }
        }
        out
    }

    /// Stable 64-bit fingerprint of the numeric content (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |bytes: &[u8]| {
            for b in bytes {
                h ^= u64::from(*b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        };
        eat(&(self.n_zones() as u64).to_le_bytes());
        eat(&(self.n_stations() as u64).to_le_bytes());
        eat(&(self.n_lockers() as u64).to_le_bytes());
        eat(&(self.parts.budget as u64).to_le_bytes());
        eat(&[self.parts.mode as u8, self.parts.locker_cap_active as u8]);
        for v in self.parts.demand.iter().chain(self.coef.b_station.values()).chain(self.coef.b_locker.values())
            .chain(self.parts.theta_station.values()).chain(self.parts.theta_locker.values())
        {
            eat(&v.to_bits().to_le_bytes());
        }
        h
    }

    /// Zone `i` numerator and denominator of the logit share ratio.
    #[inline]
    pub fn zone_terms(&self, i: usize, x: &[bool], r: &[bool]) -> (f64, f64) {
        let bs = self.coef.b_station.row(i);
        let bl = self.coef.b_locker.row(i);
        let ts = self.parts.theta_station.row(i);
        let tl = self.parts.theta_locker.row(i);
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..r.len() {
            if r[k] {
                num += bs[k];
                den += ts[k];
            }
        }
        for j in 0..x.len() {
            if x[j] {
                num += bl[j];
                den += tl[j];
            }
        }
        (num, den)
    }

    /// Overall service level `C(x, r)` in `[0, 1]`.
    pub fn service_level(&self, sol: &Solution) -> f64 {
        self.service_level_parts(&sol.x, &sol.r)
    }

    pub fn service_level_parts(&self, x: &[bool], r: &[bool]) -> f64 {
        debug_assert_eq!(x.len(), self.n_lockers());
        debug_assert_eq!(r.len(), self.n_stations());
        (0..self.n_zones())
            .map(|i| {
                let (num, den) = self.zone_terms(i, x, r);
                // A zone with nothing open is served by nobody.
                if den == 0.0 {
                    0.0
                } else {
                    num / den
                }
            })
            .sum()
    }

    pub fn is_feasible(&self, sol: &Solution) -> Feasibility {
        self.feasibility_counts(sol.open_lockers(), sol.closed_stations())
    }

    pub fn feasibility_counts(&self, open: usize, closed: usize) -> Feasibility {
        let p = self.parts.budget;
        let (lv, sv) = match self.parts.mode {
            Mode::AtMost => (open.saturating_sub(p), closed.saturating_sub(p)),
            Mode::Exact => (open.abs_diff(p), closed.abs_diff(p)),
        };
        let lv = if self.parts.locker_cap_active { lv } else { 0 };
        Feasibility { ok: lv == 0 && sv == 0, locker_violation: lv, station_violation: sv }
    }

    /// Penalized objective over the concatenated position `[r, x]`.
    pub fn penalized_objective(&self, position: &[bool], penalty: Penalty) -> Result<f64> {
        penalty.check(self.parts.mode)?;
        let nk = self.n_stations();
        if position.len() != nk + self.n_lockers() {
            return Err(Error::DimensionMismatch { expected: nk + self.n_lockers(), got: position.len() });
        }
        Ok(self.penalized_unchecked(position, penalty))
    }

    pub(crate) fn penalized_unchecked(&self, position: &[bool], penalty: Penalty) -> f64 {
        let nk = self.n_stations();
        let (r, x) = position.split_at(nk);
        let c = self.service_level_parts(x, r);
        let p = self.parts.budget as f64;
        let kept = r.iter().filter(|&&b| b).count() as f64;
        let open = x.iter().filter(|&&b| b).count() as f64;
        let mut g = c - penalty.weight * penalty.rho(nk as f64 - p - kept);
        if self.parts.locker_cap_active {
            g -= penalty.weight * penalty.rho(open - p);
        }
        g
    }
}

/// `exp(-alpha · L)` element-wise.
pub fn theta_from_alpha(alpha: f64, dist: &Matrix) -> Matrix {
    dist.map(|l| (-alpha * l).exp())
}

/// `b̃_ik = d_i·ã_ik·θ̃_ik` and `b_ij = d_i·a_ij·θ_ij`.
pub fn derive_coefficients(parts: &InstanceParts) -> Coefficients {
    let d = &parts.demand;
    let b_station = Matrix::from_fn(d.len(), parts.stations.len(), |i, k| {
        d[i] * parts.service_station.get(i, k) * parts.theta_station.get(i, k)
    });
    let b_locker = Matrix::from_fn(d.len(), parts.lockers.len(), |i, j| {
        d[i] * parts.service_locker.get(i, j) * parts.theta_locker.get(i, j)
    });
    Coefficients { b_station, b_locker }
}

/// Open lockers `x` and kept stations `r`.
///
/// The derived ordering compares `x` lexicographically, then `r`; it is the
/// tie-break order used by every exact search.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Solution {
    pub x: Vec<bool>,
    pub r: Vec<bool>,
}

impl Solution {
    pub fn new(x: Vec<bool>, r: Vec<bool>) -> Self {
        Self { x, r }
    }

    /// Every locker open and every station kept.
    pub fn all_open(n_lockers: usize, n_stations: usize) -> Self {
        Self { x: vec![true; n_lockers], r: vec![true; n_stations] }
    }

    /// No locker opened, every station kept.
    pub fn status_quo(inst: &Instance) -> Self {
        Self { x: vec![false; inst.n_lockers()], r: vec![true; inst.n_stations()] }
    }

    pub fn open_lockers(&self) -> usize {
        self.x.iter().filter(|&&b| b).count()
    }

    pub fn closed_stations(&self) -> usize {
        self.r.iter().filter(|&&b| !b).count()
    }

    /// Concatenation `[r, x]`.
    pub fn to_position(&self) -> Vec<bool> {
        let mut p = self.r.clone();
        p.extend_from_slice(&self.x);
        p
    }

    pub fn from_position(n_stations: usize, position: &[bool]) -> Self {
        let (r, x) = position.split_at(n_stations);
        Self { x: x.to_vec(), r: r.to_vec() }
    }

    pub fn check_dims(&self, inst: &Instance) -> Result<()> {
        if self.x.len() != inst.n_lockers() {
            return Err(Error::DimensionMismatch { expected: inst.n_lockers(), got: self.x.len() });
        }
        if self.r.len() != inst.n_stations() {
            return Err(Error::DimensionMismatch { expected: inst.n_stations(), got: self.r.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Feasibility {
    pub ok: bool,
    pub locker_violation: usize,
    pub station_violation: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenaltyKind {
    /// `max(y, 0)`; inequality constraints.
    Hinge,
    /// `y²`; equality constraints.
    Squared,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Penalty {
    pub kind: PenaltyKind,
    pub weight: f64,
}

impl Penalty {
    pub fn hinge(weight: f64) -> Self {
        Self { kind: PenaltyKind::Hinge, weight }
    }

    pub fn squared(weight: f64) -> Self {
        Self { kind: PenaltyKind::Squared, weight }
    }

    /// Hinge with weight 2 for `AT_MOST`, squared with weight 1 for `EXACT`.
    pub fn default_for(mode: Mode) -> Self {
        match mode {
            Mode::AtMost => Self::hinge(2.0),
            Mode::Exact => Self::squared(1.0),
        }
    }

    pub fn check(self, mode: Mode) -> Result<()> {
        if !(self.weight > 0.0 && self.weight.is_finite()) {
            return Err(Error::InvalidParameter(format!("penalty weight must be positive, got {}", self.weight)));
        }
        if self.kind == PenaltyKind::Squared && mode == Mode::AtMost {
            return Err(Error::PenaltyModeMismatch);
        }
        Ok(())
    }

    #[inline]
    pub fn rho(self, y: f64) -> f64 {
        match self.kind {
            PenaltyKind::Hinge => y.max(0.0),
            PenaltyKind::Squared => y * y,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use approx::assert_relative_eq;

    pub fn ids(prefix: &str, n: usize) -> Vec<String> {
        (0..n).map(|i| format!("{prefix}{i}")).collect()
    }

    /// Instance from explicit rows; distances are taken as `1 - a` so the
    /// monotone-service convention holds.
    pub fn small(
        d: &[f64],
        a_station: &[Vec<f64>],
        theta_station: &[Vec<f64>],
        a_locker: &[Vec<f64>],
        theta_locker: &[Vec<f64>],
        budget: usize,
        mode: Mode,
    ) -> Instance {
        let ni = d.len();
        let nk = a_station.first().map_or(0, Vec::len);
        let nj = a_locker.first().map_or(0, Vec::len);
        let m = |rows: &[Vec<f64>], cols| Matrix::from_rows(rows, cols).unwrap();
        let sa = m(a_station, nk);
        let la = m(a_locker, nj);
        Instance::new(InstanceParts {
            zones: ids("z", ni),
            stations: ids("k", nk),
            lockers: ids("j", nj),
            demand: d.to_vec(),
            dist_station: sa.map(|a| 1.0 - a),
            dist_locker: la.map(|a| 1.0 - a),
            service_station: sa,
            service_locker: la,
            theta_station: m(theta_station, nk),
            theta_locker: m(theta_locker, nj),
            budget,
            mode,
            locker_cap_active: true,
        })
        .unwrap()
    }

    #[test]
    fn coefficient_products() {
        let inst = small(&[1.0], &[vec![0.5]], &[vec![2.0]], &[vec![0.0]], &[vec![7.0]], 1, Mode::AtMost);
        assert_eq!(inst.coefficients().b_station.get(0, 0), 1.0);
        assert_eq!(inst.coefficients().b_locker.get(0, 0), 0.0);

        let inst = small(
            &[0.5, 0.5],
            &[vec![1.0], vec![0.2]],
            &[vec![2.0], vec![3.0]],
            &[vec![1.0], vec![1.0]],
            &[vec![1.0], vec![1.0]],
            1,
            Mode::AtMost,
        );
        let b = &inst.coefficients().b_station;
        assert_relative_eq!(b.get(0, 0), 1.0);
        assert_relative_eq!(b.get(1, 0), 0.3, epsilon = 1e-15);
    }

    #[test]
    fn demand_is_normalized() {
        let inst = small(&[2.0, 6.0], &[vec![1.0], vec![1.0]], &[vec![1.0], vec![1.0]], &[vec![], vec![]], &[vec![], vec![]], 0, Mode::AtMost);
        assert_eq!(inst.demand(), &[0.25, 0.75]);
    }

    #[test]
    fn service_level_hand_value() {
        let inst = small(&[1.0], &[vec![0.6]], &[vec![2.0]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost);
        let c = inst.service_level(&Solution::new(vec![true], vec![true]));
        assert_relative_eq!(c, 2.2 / 3.0, epsilon = 1e-15);
        assert_eq!(inst.service_level(&Solution::new(vec![false], vec![false])), 0.0);
    }

    #[test]
    fn equal_service_collapses_ratio() {
        let inst = small(
            &[0.3, 0.7],
            &[vec![0.4, 0.4], vec![0.9, 0.9]],
            &[vec![2.0, 0.1], vec![5.0, 1.0]],
            &[vec![0.4], vec![0.9]],
            &[vec![3.0], vec![0.5]],
            1,
            Mode::AtMost,
        );
        let c = inst.service_level(&Solution::new(vec![true], vec![false, true]));
        assert_relative_eq!(c, 0.3 * 0.4 + 0.7 * 0.9, epsilon = 1e-14);
    }

    #[test]
    fn feasibility_counting() {
        let inst = small(&[1.0], &[vec![1.0; 3]], &[vec![1.0; 3]], &[vec![1.0; 3]], &[vec![1.0; 3]], 2, Mode::AtMost);
        let f = inst.is_feasible(&Solution::new(vec![true; 3], vec![false, true, true]));
        assert_eq!(f, Feasibility { ok: false, locker_violation: 1, station_violation: 0 });

        let exact = inst.with_mode(Mode::Exact).unwrap();
        let f = exact.is_feasible(&Solution::new(vec![true, true, false], vec![false, false, true]));
        assert!(f.ok);
        let f = exact.is_feasible(&Solution::new(vec![true, false, false], vec![false, false, false]));
        assert_eq!(f, Feasibility { ok: false, locker_violation: 1, station_violation: 1 });
    }

    #[test]
    fn uncapped_lockers_skip_the_locker_check() {
        let nj = 60;
        let nk = 30;
        let inst = small(&[1.0], &[vec![1.0; nk]], &[vec![1.0; nk]], &[vec![1.0; nj]], &[vec![1.0; nj]], 20, Mode::Exact)
            .with_locker_cap(false)
            .unwrap();
        let mut x = vec![false; nj];
        x[..51].iter_mut().for_each(|b| *b = true);
        let mut r = vec![true; nk];
        r[..20].iter_mut().for_each(|b| *b = false);
        assert!(inst.is_feasible(&Solution::new(x, r)).ok);
    }

    #[test]
    fn penalized_objective_cases() {
        let inst = small(&[1.0], &[vec![0.5; 3]], &[vec![1.0; 3]], &[vec![1.0; 4]], &[vec![1.0; 4]], 2, Mode::AtMost);
        let feasible = Solution::new(vec![true, false, false, false], vec![true, true, false]);
        let c = inst.service_level(&feasible);
        let g = inst.penalized_objective(&feasible.to_position(), Penalty::hinge(2.0)).unwrap();
        assert_eq!(g, c);

        let over = Solution::new(vec![true, true, true, false], vec![true, true, true]);
        let g = inst.penalized_objective(&over.to_position(), Penalty::hinge(2.0)).unwrap();
        assert_relative_eq!(g, inst.service_level(&over) - 2.0, epsilon = 1e-15);

        assert!(matches!(
            inst.penalized_objective(&over.to_position(), Penalty::squared(1.0)),
            Err(Error::PenaltyModeMismatch)
        ));

        let exact = inst.with_mode(Mode::Exact).unwrap();
        let sol = Solution::new(vec![true; 4], vec![false, false, true]);
        let g = exact.penalized_objective(&sol.to_position(), Penalty::squared(1.0)).unwrap();
        assert_relative_eq!(g, exact.service_level(&sol) - 4.0, epsilon = 1e-15);
    }

    #[test]
    fn position_order_is_stations_then_lockers() {
        let sol = Solution::new(vec![true, false], vec![false, true, true]);
        let p = sol.to_position();
        assert_eq!(p, vec![false, true, true, true, false]);
        assert_eq!(Solution::from_position(3, &p), sol);
    }

    #[test]
    fn rejects_bad_inputs() {
        let parts = small(&[1.0], &[vec![1.0]], &[vec![1.0]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost).parts().clone();
        let mut p = parts.clone();
        p.theta_locker.set(0, 0, 0.0);
        assert!(Instance::new(p).is_err());
        let mut p = parts.clone();
        p.service_station.set(0, 0, 1.5);
        assert!(Instance::new(p).is_err());
        let mut p = parts;
        p.budget = 2;
        assert!(Instance::new(p).is_err());
    }

    #[test]
    fn monotonicity_is_flagged_not_rejected() {
        let mut parts = small(&[1.0], &[vec![1.0, 0.5]], &[vec![1.0, 1.0]], &[vec![]], &[vec![]], 0, Mode::AtMost)
            .parts()
            .clone();
        parts.dist_station = Matrix::from_rows(&[vec![2.0, 1.0]], 2).unwrap();
        let inst = Instance::new(parts).unwrap();
        let w = inst.monotonicity_warnings();
        assert_eq!(w, vec![MonotonicityWarning { zone: 0, station: true, near: 1, far: 0 }]);
    }
}
