//! Global and conditional bounds on the inverse denominator
//! `z_i = 1 / (Σ_k θ̃_ik r_k + Σ_j θ_ij x_j)`.
//!
//! Every bound is `1 / D` where `D` is the smallest (for upper bounds) or the
//! largest (for lower bounds) denominator reachable under the cardinality
//! constraints, optionally with one facility pinned open or closed. The
//! extreme denominators are sums of order statistics of one zone row.
//!
//! The reachable counts depend on the instance mode:
//!
//! | mode                    | opened lockers | kept stations  |
//! |-------------------------|----------------|----------------|
//! | `AT_MOST`               | `0..=P`        | `K-P..=K`      |
//! | `EXACT`                 | `P`            | `K-P`          |
//! | locker cap inactive     | `0..=J`        | per mode       |
//!
//! In `AT_MOST` mode with the locker cap these reduce to the classical
//! formulas (smallest `|K|-P` station weights for the global upper bound, the
//! `P` largest locker weights for the lower bounds and so on).

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::model::Instance;

/// Bounds on `z_i` conditioned on one locker.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LockerBounds {
    /// Upper bound when the locker is open.
    pub upper_if_open: f64,
    /// Lower bound when the locker is closed.
    pub lower_if_closed: f64,
    /// Lower bound when the locker is open.
    pub lower_if_open: f64,
    /// False when no feasible solution opens this locker (the open-side
    /// bounds are then vacuous but still finite).
    pub open_possible: bool,
    pub closed_possible: bool,
}

/// Bounds on `z_i` conditioned on one station.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StationBounds {
    /// Upper bound when the station is kept.
    pub upper_if_kept: f64,
    /// Lower bound when the station is closed.
    pub lower_if_closed: f64,
    /// Lower bound when the station is kept.
    pub lower_if_kept: f64,
    pub kept_possible: bool,
    pub closed_possible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundSet {
    pub global_upper: Vec<f64>,
    /// `lockers[i][j]`
    pub lockers: Vec<Vec<LockerBounds>>,
    /// `stations[i][k]`
    pub stations: Vec<Vec<StationBounds>>,
}

/// Reachable counts of opened lockers and kept stations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountRange {
    pub lockers_lo: usize,
    pub lockers_hi: usize,
    pub kept_lo: usize,
    pub kept_hi: usize,
    /// False when the cardinality constraints admit no solution at all.
    pub feasible: bool,
}

impl CountRange {
    pub fn of(inst: &Instance) -> Self {
        use crate::model::Mode;
        let (nj, nk, p) = (inst.n_lockers(), inst.n_stations(), inst.budget());
        let mut feasible = true;
        let (lockers_lo, lockers_hi) = if !inst.locker_cap_active() {
            (0, nj)
        } else {
            match inst.mode() {
                Mode::AtMost => (0, p.min(nj)),
                Mode::Exact => {
                    feasible &= p <= nj;
                    (p.min(nj), p.min(nj))
                }
            }
        };
        let (kept_lo, kept_hi) = match inst.mode() {
            Mode::AtMost => (nk.saturating_sub(p), nk),
            Mode::Exact => {
                feasible &= p <= nk;
                (nk.saturating_sub(p), nk.saturating_sub(p))
            }
        };
        Self { lockers_lo, lockers_hi, kept_lo, kept_hi, feasible }
    }
}

/// One zone row sorted ascending, ties by facility index.
struct Ordered<'a> {
    values: &'a [f64],
    asc: Vec<usize>,
}

impl<'a> Ordered<'a> {
    fn new(values: &'a [f64]) -> Self {
        let mut asc: Vec<usize> = (0..values.len()).collect();
        // sort_by is stable, so equal weights stay in index order
        asc.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        Self { values, asc }
    }

    fn available(&self, exclude: Option<usize>) -> usize {
        self.values.len() - usize::from(exclude.is_some())
    }

    /// Sum of the `count` smallest values, skipping `exclude`; `count` is
    /// capped at the number of available elements.
    fn smallest(&self, count: usize, exclude: Option<usize>) -> f64 {
        self.asc.iter().filter(|&&e| Some(e) != exclude).take(count).map(|&e| self.values[e]).sum()
    }

    fn largest(&self, count: usize, exclude: Option<usize>) -> f64 {
        self.asc.iter().rev().filter(|&&e| Some(e) != exclude).take(count).map(|&e| self.values[e]).sum()
    }
}

struct ZoneRows<'a> {
    zone: usize,
    stations: Ordered<'a>,
    lockers: Ordered<'a>,
    counts: CountRange,
    /// `1 / (every weight of the zone)`, the smallest `z_i` of any point.
    floor: f64,
}

impl<'a> ZoneRows<'a> {
    fn new(inst: &'a Instance, zone: usize) -> Self {
        let stations = Ordered::new(inst.theta_station().row(zone));
        let lockers = Ordered::new(inst.theta_locker().row(zone));
        let total = stations.largest(stations.values.len(), None) + lockers.largest(lockers.values.len(), None);
        Self { zone, stations, lockers, counts: CountRange::of(inst), floor: 1.0 / total }
    }

    /// Lower bound for a condition that may be unreachable: an empty
    /// denominator there falls back to the zone floor instead of failing.
    fn lower(&self, den: f64, possible: bool) -> Result<f64> {
        if den <= 0.0 && !possible && self.floor.is_finite() {
            return Ok(self.floor);
        }
        self.inverse(den)
    }

    fn inverse(&self, den: f64) -> Result<f64> {
        if den > 0.0 {
            Ok(1.0 / den)
        } else {
            Err(Error::UnboundedZ { zone: self.zone })
        }
    }

    fn global_upper(&self) -> Result<f64> {
        let c = self.counts;
        self.inverse(self.stations.smallest(c.kept_lo, None) + self.lockers.smallest(c.lockers_lo, None))
    }

    fn locker(&self, j: usize) -> Result<LockerBounds> {
        let c = self.counts;
        let theta = self.lockers.values[j];
        let others = self.lockers.available(Some(j));
        let upper_if_open = self.inverse(
            theta
                + self.stations.smallest(c.kept_lo, None)
                + self.lockers.smallest(c.lockers_lo.saturating_sub(1), Some(j)),
        )?;
        let lower_if_open = self.inverse(
            theta
                + self.stations.largest(c.kept_hi, None)
                + self.lockers.largest(c.lockers_hi.saturating_sub(1), Some(j)),
        )?;
        let closed_possible = c.feasible && c.lockers_lo <= others;
        let lower_if_closed = self.lower(
            self.stations.largest(c.kept_hi, None) + self.lockers.largest(c.lockers_hi, Some(j)),
            closed_possible,
        )?;
        Ok(LockerBounds {
            upper_if_open,
            lower_if_closed,
            lower_if_open,
            open_possible: c.feasible && c.lockers_hi >= 1,
            closed_possible,
        })
    }

    fn station(&self, k: usize) -> Result<StationBounds> {
        let c = self.counts;
        let theta = self.stations.values[k];
        let others = self.stations.available(Some(k));
        let upper_if_kept = self.inverse(
            theta
                + self.stations.smallest(c.kept_lo.saturating_sub(1), Some(k))
                + self.lockers.smallest(c.lockers_lo, None),
        )?;
        let lower_if_kept = self.inverse(
            theta
                + self.stations.largest(c.kept_hi.saturating_sub(1), Some(k))
                + self.lockers.largest(c.lockers_hi, None),
        )?;
        let closed_possible = c.feasible && c.kept_lo <= others;
        let lower_if_closed = self.lower(
            self.stations.largest(c.kept_hi, Some(k)) + self.lockers.largest(c.lockers_hi, None),
            closed_possible,
        )?;
        Ok(StationBounds {
            upper_if_kept,
            lower_if_closed,
            lower_if_kept,
            kept_possible: c.feasible && c.kept_hi >= 1,
            closed_possible,
        })
    }
}

fn check_zone(inst: &Instance, i: usize) -> Result<()> {
    if i >= inst.n_zones() {
        return Err(Error::InvalidParameter(format!("zone {i} out of range")));
    }
    Ok(())
}

/// Largest value `z_i` takes over all feasible solutions.
pub fn global_upper(inst: &Instance, i: usize) -> Result<f64> {
    check_zone(inst, i)?;
    ZoneRows::new(inst, i).global_upper()
}

pub fn conditional_x(inst: &Instance, i: usize, j: usize) -> Result<LockerBounds> {
    check_zone(inst, i)?;
    if j >= inst.n_lockers() {
        return Err(Error::InvalidParameter(format!("locker {j} out of range")));
    }
    ZoneRows::new(inst, i).locker(j)
}

pub fn conditional_r(inst: &Instance, i: usize, k: usize) -> Result<StationBounds> {
    check_zone(inst, i)?;
    if k >= inst.n_stations() {
        return Err(Error::InvalidParameter(format!("station {k} out of range")));
    }
    ZoneRows::new(inst, i).station(k)
}

pub fn all_bounds(inst: &Instance) -> Result<BoundSet> {
    all_bounds_with(inst, Execution::default())
}

/// Every bound of every zone; each zone row is sorted once.
pub fn all_bounds_with(inst: &Instance, exec: Execution) -> Result<BoundSet> {
    let per_zone = exec::map_range(exec, inst.n_zones(), |i| {
        let rows = ZoneRows::new(inst, i);
        let global = rows.global_upper()?;
        let lockers = (0..inst.n_lockers()).map(|j| rows.locker(j)).collect::<Result<Vec<_>>>()?;
        let stations = (0..inst.n_stations()).map(|k| rows.station(k)).collect::<Result<Vec<_>>>()?;
        Ok::<_, Error>((global, lockers, stations))
    });
    let mut set = BoundSet { global_upper: Vec::new(), lockers: Vec::new(), stations: Vec::new() };
    for zone in per_zone {
        let (g, l, s) = zone?;
        set.global_upper.push(g);
        set.lockers.push(l);
        set.stations.push(s);
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::small;
    use crate::model::Mode;
    use approx::assert_relative_eq;

    #[test]
    fn global_upper_examples() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost);
        assert_eq!(global_upper(&inst, 0).unwrap(), 0.5);

        let inst = inst.with_budget(0).unwrap();
        assert_relative_eq!(global_upper(&inst, 0).unwrap(), 1.0 / 5.0);

        let inst = small(&[1.0], &[vec![1.0; 3]], &[vec![1.0; 3]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost);
        assert_eq!(global_upper(&inst, 0).unwrap(), 0.5);
    }

    #[test]
    fn unbounded_when_every_station_may_close() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0, 1.0]], &[vec![1.0, 1.0]], 2, Mode::AtMost);
        assert!(matches!(global_upper(&inst, 0), Err(Error::UnboundedZ { zone: 0 })));
        assert!(matches!(all_bounds(&inst), Err(Error::UnboundedZ { .. })));
    }

    #[test]
    fn conditional_x_example() {
        // One station (weight 2), lockers with weights 1 (queried) and 4, P = 1.
        // The station itself may close, so with only the queried locker
        // open the denominator can drop to 1.
        let inst = small(&[1.0], &[vec![1.0]], &[vec![2.0]], &[vec![1.0, 1.0]], &[vec![1.0, 4.0]], 1, Mode::AtMost);
        let b = conditional_x(&inst, 0, 0).unwrap();
        assert_relative_eq!(b.upper_if_open, 1.0);
        assert_relative_eq!(b.lower_if_closed, 1.0 / 6.0);
        assert_relative_eq!(b.lower_if_open, 1.0 / 3.0);
        assert!(b.open_possible && b.closed_possible);
    }

    #[test]
    fn conditional_x_without_budget() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0, 1.0]], &[vec![1.0, 4.0]], 0, Mode::AtMost);
        let b = conditional_x(&inst, 0, 0).unwrap();
        assert_relative_eq!(b.lower_if_closed, 1.0 / 5.0);
        assert!(!b.open_possible);
    }

    #[test]
    fn upper_if_open_tends_to_global_upper() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0]], &[vec![1e-12]], 1, Mode::AtMost);
        let b = conditional_x(&inst, 0, 0).unwrap();
        assert_relative_eq!(b.upper_if_open, global_upper(&inst, 0).unwrap(), max_relative = 1e-11);
    }

    #[test]
    fn conditional_r_example() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost);
        let b = conditional_r(&inst, 0, 0).unwrap();
        assert_relative_eq!(b.upper_if_kept, 0.5);
        assert_relative_eq!(b.lower_if_closed, 0.25);
        assert_relative_eq!(b.lower_if_kept, 1.0 / 6.0);
    }

    #[test]
    fn conditional_r_vacuous_without_budget() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0]], &[vec![1.0]], 0, Mode::AtMost);
        let b = conditional_r(&inst, 0, 0).unwrap();
        assert!(!b.closed_possible);
        assert!(b.lower_if_closed.is_finite());
    }

    #[test]
    fn symmetric_stations_give_global_upper() {
        let inst = small(&[1.0], &[vec![1.0; 4]], &[vec![1.5; 4]], &[vec![1.0]], &[vec![1.0]], 1, Mode::AtMost);
        let g = global_upper(&inst, 0).unwrap();
        for k in 0..4 {
            assert_relative_eq!(conditional_r(&inst, 0, k).unwrap().upper_if_kept, g);
        }
    }

    #[test]
    fn exact_mode_counts_lockers_in_upper_bound() {
        let inst = small(&[1.0], &[vec![1.0, 1.0]], &[vec![2.0, 3.0]], &[vec![1.0, 1.0]], &[vec![0.5, 4.0]], 1, Mode::Exact);
        // one station kept (2) and one locker open (0.5)
        assert_relative_eq!(global_upper(&inst, 0).unwrap(), 1.0 / 2.5);
        // P = |K| is fine in EXACT mode because P lockers must open
        let inst = inst.with_budget(2).unwrap();
        assert_relative_eq!(global_upper(&inst, 0).unwrap(), 1.0 / 4.5);
    }

    #[test]
    fn batch_matches_single_calls() {
        let inst = small(
            &[0.4, 0.6],
            &[vec![1.0, 0.5], vec![0.2, 1.0]],
            &[vec![2.0, 0.3], vec![1.0, 1.0]],
            &[vec![1.0, 0.5], vec![0.5, 0.0]],
            &[vec![0.7, 1.1], vec![2.5, 0.4]],
            1,
            Mode::AtMost,
        );
        let set = all_bounds(&inst).unwrap();
        for i in 0..2 {
            assert_eq!(set.global_upper[i], global_upper(&inst, i).unwrap());
            for j in 0..2 {
                assert_eq!(set.lockers[i][j], conditional_x(&inst, i, j).unwrap());
                assert_eq!(set.stations[i][j], conditional_r(&inst, i, j).unwrap());
            }
        }
        assert_eq!(set, all_bounds_with(&inst, Execution::Sequential).unwrap());
    }
}
