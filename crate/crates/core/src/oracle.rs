//! Brute-force reference solver.
//!
//! Walks every opened-locker set and closed-station set allowed by the
//! instance mode, as `u64` masks in colexicographic order, and evaluates the
//! service level from scratch. Shares no code with the MILP backends so the
//! two can check each other.

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::model::{Instance, Mode, Solution};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleLimits {
    /// Cap on the number of (locker set, station set) pairs.
    pub max_points: u128,
    pub execution: Execution,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_points: 10_000_000, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub best: Solution,
    pub value: f64,
    /// Feasible solutions visited.
    pub count: u64,
}

/// Restriction placed on the enumerated solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    None,
    /// Locker `j` open (`true`) or closed.
    Locker(usize, bool),
    /// Station `k` kept (`true`) or closed.
    Station(usize, bool),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZRange {
    pub min: f64,
    pub max: f64,
}

/// Allowed sizes of the opened-locker set and the closed-station set.
fn sizes(inst: &Instance) -> (Vec<usize>, Vec<usize>) {
    let (nj, nk, p) = (inst.n_lockers(), inst.n_stations(), inst.budget());
    let upto = |n: usize| (0..=p.min(n)).collect::<Vec<_>>();
    let exactly = |n: usize| if p <= n { vec![p] } else { Vec::new() };
    let open = match (inst.locker_cap_active(), inst.mode()) {
        (false, _) => (0..=nj).collect(),
        (true, Mode::AtMost) => upto(nj),
        (true, Mode::Exact) => exactly(nj),
    };
    let closed = match inst.mode() {
        Mode::AtMost => upto(nk),
        Mode::Exact => exactly(nk),
    };
    (open, closed)
}

fn choose(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Every `n`-bit mask with a popcount in `sizes`, colex order within a size.
fn masks(n: usize, sizes: &[usize]) -> Vec<u64> {
    let mut out = Vec::new();
    for &s in sizes {
        if s == 0 {
            out.push(0);
            continue;
        }
        let mut m: u64 = (1u64 << s) - 1;
        let limit: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        while m <= limit {
            out.push(m);
            // next mask with the same popcount
            let c = m & m.wrapping_neg();
            let r = m + c;
            if r == 0 {
                break;
            }
            m = (((r ^ m) >> 2) / c) | r;
        }
    }
    out
}

fn bits(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|e| mask >> e & 1 == 1).collect()
}

fn check_size(inst: &Instance, limits: &OracleLimits) -> Result<(Vec<u64>, Vec<u64>)> {
    let (nj, nk) = (inst.n_lockers(), inst.n_stations());
    if nj > 63 || nk > 63 {
        return Err(Error::EnumerationTooLarge { what: "oracle facility count", size: nj.max(nk) as u128, cap: 63 });
    }
    let (open, closed) = sizes(inst);
    let count = |n: usize, s: &[usize]| s.iter().map(|&k| choose(n, k)).sum::<u128>();
    let points = count(nj, &open).saturating_mul(count(nk, &closed));
    if points > limits.max_points {
        return Err(Error::EnumerationTooLarge { what: "oracle point count", size: points, cap: limits.max_points });
    }
    Ok((masks(nj, &open), masks(nk, &closed)))
}

/// Service level of one point, summed from scratch.
fn value(inst: &Instance, open: u64, closed: u64) -> f64 {
    let coef = inst.coefficients();
    let mut total = 0.0;
    for i in 0..inst.n_zones() {
        let (mut num, mut den) = (0.0, 0.0);
        for k in (0..inst.n_stations()).filter(|&k| closed >> k & 1 == 0) {
            num += coef.b_station.get(i, k);
            den += inst.theta_station().get(i, k);
        }
        for j in (0..inst.n_lockers()).filter(|&j| open >> j & 1 == 1) {
            num += coef.b_locker.get(i, j);
            den += inst.theta_locker().get(i, j);
        }
        if den > 0.0 {
            total += num / den;
        }
    }
    total
}

pub fn enumerate_optimal(inst: &Instance) -> Result<OracleResult> {
    enumerate_optimal_with(inst, &OracleLimits::default())
}

/// Exact optimum; equal values go to the lexicographically smaller `(x, r)`.
pub fn enumerate_optimal_with(inst: &Instance, limits: &OracleLimits) -> Result<OracleResult> {
    let (open_masks, closed_masks) = check_size(inst, limits)?;
    let (nj, nk) = (inst.n_lockers(), inst.n_stations());
    let per_outer = exec::map(limits.execution, &open_masks, |&open| {
        let mut best: Option<(f64, Solution)> = None;
        for &closed in &closed_masks {
            let v = value(inst, open, closed);
            let sol = Solution::new(bits(open, nj), bits(!closed, nk));
            let wins = match &best {
                None => true,
                Some((bv, bs)) => v > *bv || (v == *bv && sol < *bs),
            };
            if wins {
                best = Some((v, sol));
            }
        }
        best
    });
    let count = (open_masks.len() * closed_masks.len()) as u64;
    let mut best: Option<(f64, Solution)> = None;
    for cand in per_outer.into_iter().flatten() {
        let wins = match &best {
            None => true,
            Some((bv, bs)) => cand.0 > *bv || (cand.0 == *bv && cand.1 < *bs),
        };
        if wins {
            best = Some(cand);
        }
    }
    let (value, best) = best.ok_or(Error::EmptyFeasibleSet)?;
    Ok(OracleResult { best, value, count })
}

pub fn enumerate_z_range(inst: &Instance, condition: Condition) -> Result<Vec<ZRange>> {
    enumerate_z_range_with(inst, condition, &OracleLimits::default())
}

/// Per-zone extremes of `1 / denominator` over the feasible points meeting
/// `condition`; points where a zone has no open facility are skipped for
/// that zone.
pub fn enumerate_z_range_with(inst: &Instance, condition: Condition, limits: &OracleLimits) -> Result<Vec<ZRange>> {
    match condition {
        Condition::Locker(j, _) if j >= inst.n_lockers() => {
            return Err(Error::InvalidParameter(format!("locker {j} out of range")))
        }
        Condition::Station(k, _) if k >= inst.n_stations() => {
            return Err(Error::InvalidParameter(format!("station {k} out of range")))
        }
        _ => {}
    }
    let (open_masks, closed_masks) = check_size(inst, limits)?;
    let holds = |open: u64, closed: u64| match condition {
        Condition::None => true,
        Condition::Locker(j, on) => (open >> j & 1 == 1) == on,
        Condition::Station(k, kept) => (closed >> k & 1 == 0) == kept,
    };
    let ni = inst.n_zones();
    let per_outer = exec::map(limits.execution, &open_masks, |&open| {
        let mut ranges = vec![ZRange { min: f64::INFINITY, max: f64::NEG_INFINITY }; ni];
        for &closed in closed_masks.iter().filter(|&&c| holds(open, c)) {
            for (i, range) in ranges.iter_mut().enumerate() {
                let mut den = 0.0;
                for k in (0..inst.n_stations()).filter(|&k| closed >> k & 1 == 0) {
                    den += inst.theta_station().get(i, k);
                }
                for j in (0..inst.n_lockers()).filter(|&j| open >> j & 1 == 1) {
                    den += inst.theta_locker().get(i, j);
                }
                if den > 0.0 {
                    let z = 1.0 / den;
                    range.min = range.min.min(z);
                    range.max = range.max.max(z);
                }
            }
        }
        ranges
    });
    let mut out = vec![ZRange { min: f64::INFINITY, max: f64::NEG_INFINITY }; ni];
    for ranges in per_outer {
        for (o, r) in out.iter_mut().zip(ranges) {
            o.min = o.min.min(r.min);
            o.max = o.max.max(r.max);
        }
    }
    if out.iter().any(|r| r.min > r.max) {
        return Err(Error::EmptyFeasibleSet);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::small;

    #[test]
    fn masks_in_colex_order() {
        assert_eq!(masks(4, &[2]), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(masks(3, &[0, 3]), vec![0, 0b111]);
        assert_eq!(masks(2, &[3]), Vec::<u64>::new());
    }

    #[test]
    fn one_by_one_by_one_best_of_four() {
        let inst = small(&[1.0], &[vec![0.5]], &[vec![1.0]], &[vec![1.0]], &[vec![2.0]], 1, Mode::AtMost);
        let res = enumerate_optimal(&inst).unwrap();
        assert_eq!(res.count, 4);
        let candidates = [(false, true), (true, true), (false, false), (true, false)];
        let best = candidates
            .iter()
            .map(|&(x, r)| inst.service_level(&Solution::new(vec![x], vec![r])))
            .fold(f64::MIN, f64::max);
        assert_eq!(res.value, best);
        assert_eq!(res.best, Solution::new(vec![true], vec![false]));
    }

    #[test]
    fn zero_budget_single_candidate() {
        let inst = small(&[1.0], &[vec![0.5, 1.0]], &[vec![1.0, 2.0]], &[vec![1.0]], &[vec![2.0]], 0, Mode::AtMost);
        let res = enumerate_optimal(&inst).unwrap();
        assert_eq!(res.count, 1);
        assert_eq!(res.best, Solution::status_quo(&inst));
    }

    #[test]
    fn unconditioned_max_is_smallest_kept_sum() {
        // stations weigh 2, 3, 5; with P = 1 the weakest pair (2 + 3) is the smallest denominator
        let inst = small(
            &[1.0],
            &[vec![1.0, 1.0, 1.0]],
            &[vec![2.0, 3.0, 5.0]],
            &[vec![1.0]],
            &[vec![4.0]],
            1,
            Mode::AtMost,
        );
        let r = enumerate_z_range(&inst, Condition::None).unwrap();
        assert_eq!(r[0].max, 1.0 / 5.0);
        assert_eq!(r[0].min, 1.0 / 14.0);
        let open = enumerate_z_range(&inst, Condition::Locker(0, true)).unwrap();
        assert_eq!(open[0].max, 1.0 / 9.0);
    }

    #[test]
    fn empty_denominator_everywhere() {
        let inst = small(&[1.0], &[vec![1.0]], &[vec![2.0]], &[vec![]], &[vec![]], 1, Mode::AtMost);
        assert!(matches!(enumerate_z_range(&inst, Condition::Station(0, false)), Err(Error::EmptyFeasibleSet)));
    }

    #[test]
    fn size_cap() {
        let inst = small(&[1.0], &[vec![1.0; 4]], &[vec![1.0; 4]], &[vec![1.0; 4]], &[vec![1.0; 4]], 2, Mode::AtMost);
        let tight = OracleLimits { max_points: 10, ..Default::default() };
        assert!(matches!(enumerate_optimal_with(&inst, &tight), Err(Error::EnumerationTooLarge { .. })));
    }
}
