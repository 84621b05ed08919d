//! Synthetic instances on a square map.
//!
//! Points are uniform in `[0, side]²`, raw demands uniform in a range and
//! then normalized to shares. Distances are Euclidean in units of 100,
//! choice weights are `exp(-alpha · L)` and service levels come from a step
//! table over distance.
//!
//! Randomness comes from ChaCha8 seeded once; every kind of draw reads its
//! own stream, so adding a field never shifts the values of another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Instance, InstanceParts, Matrix, Mode};

const DISTANCE_UNIT: f64 = 100.0;

mod stream {
    pub const ZONES: u64 = 0;
    pub const STATIONS: u64 = 1;
    pub const LOCKERS: u64 = 2;
    pub const DEMAND: u64 = 3;
}

/// Service level by distance: `values[e]` applies up to and including
/// `thresholds[e]`, the last value beyond the last threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepTable {
    pub thresholds: Vec<f64>,
    pub values: Vec<f64>,
}

impl StepTable {
    /// 1 within one unit, then 0.5, 0.2 and 0 beyond three units.
    pub fn standard() -> Self {
        Self { thresholds: vec![1.0, 2.0, 3.0], values: vec![1.0, 0.5, 0.2, 0.0] }
    }

    /// The tighter city table: steps at 1, 1.5 and 2 units.
    pub fn case_study() -> Self {
        Self { thresholds: vec![1.0, 1.5, 2.0], values: vec![1.0, 0.5, 0.2, 0.0] }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(format!("step table: {m}")));
        if self.values.len() != self.thresholds.len() + 1 {
            return bad("needs exactly one more value than thresholds");
        }
        if self.thresholds.windows(2).any(|w| !(w[0] < w[1])) || self.thresholds.iter().any(|t| !t.is_finite()) {
            return bad("thresholds must be finite and strictly increasing");
        }
        if self.values.windows(2).any(|w| w[1] > w[0]) || self.values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return bad("values must lie in [0, 1] and not increase");
        }
        Ok(())
    }
}

impl Default for StepTable {
    fn default() -> Self {
        Self::standard()
    }
}

pub fn stepwise_service(distance: f64, table: &StepTable) -> f64 {
    let step = table.thresholds.iter().position(|&t| distance <= t).unwrap_or(table.thresholds.len());
    table.values[step]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n_zones: usize,
    pub n_lockers: usize,
    pub n_stations: usize,
    /// Utility decay per distance unit.
    pub alpha: f64,
    pub budget: usize,
    pub mode: Mode,
    pub locker_cap_active: bool,
    pub side: f64,
    pub demand_range: (f64, f64),
    pub service: StepTable,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(n_zones: usize, n_lockers: usize, n_stations: usize, alpha: f64, budget: usize, seed: u64) -> Self {
        Self {
            n_zones,
            n_lockers,
            n_stations,
            alpha,
            budget,
            mode: Mode::AtMost,
            locker_cap_active: true,
            side: 1000.0,
            demand_range: (0.0, 100.0),
            service: StepTable::standard(),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n_zones == 0 || self.n_stations == 0 {
            return bad("at least one zone and one station are required".into());
        }
        if !(self.side > 0.0 && self.side.is_finite()) {
            return bad(format!("side must be positive, got {}", self.side));
        }
        let (lo, hi) = self.demand_range;
        if !(0.0 <= lo && lo <= hi && hi.is_finite() && hi > 0.0) {
            return bad(format!("demand range [{lo}, {hi}] is invalid"));
        }
        if !self.alpha.is_finite() {
            return bad("alpha must be finite".into());
        }
        self.service.validate()
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn points(seed: u64, stream: u64, n: usize, side: f64) -> Vec<(f64, f64)> {
    let mut r = rng(seed, stream);
    (0..n).map(|_| (r.gen::<f64>() * side, r.gen::<f64>() * side)).collect()
}

fn distances(from: &[(f64, f64)], to: &[(f64, f64)]) -> Matrix {
    Matrix::from_fn(from.len(), to.len(), |i, m| {
        let (dx, dy) = (from[i].0 - to[m].0, from[i].1 - to[m].1);
        dx.hypot(dy) / DISTANCE_UNIT
    })
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let zones = points(spec.seed, stream::ZONES, spec.n_zones, spec.side);
    let stations = points(spec.seed, stream::STATIONS, spec.n_stations, spec.side);
    let lockers = points(spec.seed, stream::LOCKERS, spec.n_lockers, spec.side);
    let mut r = rng(spec.seed, stream::DEMAND);
    let (lo, hi) = spec.demand_range;
    let demand: Vec<f64> = (0..spec.n_zones).map(|_| lo + (hi - lo) * r.gen::<f64>()).collect();

    let dist_station = distances(&zones, &stations);
    let dist_locker = distances(&zones, &lockers);
    let weight = |l: f64| (-spec.alpha * l).exp();
    let ids = |p: &str, n: usize| (0..n).map(|e| format!("{p}{e}")).collect::<Vec<_>>();
    Instance::new(InstanceParts {
        zones: ids("z", spec.n_zones),
        stations: ids("k", spec.n_stations),
        lockers: ids("j", spec.n_lockers),
        demand,
        service_station: dist_station.map(|l| stepwise_service(l, &spec.service)),
        service_locker: dist_locker.map(|l| stepwise_service(l, &spec.service)),
        theta_station: dist_station.map(weight),
        theta_locker: dist_locker.map(weight),
        dist_station,
        dist_locker,
        budget: spec.budget,
        mode: spec.mode,
        locker_cap_active: spec.locker_cap_active,
    })
}
