use proptest::prelude::*;

use locus::bounds::all_bounds;
use locus::milp::{self, Backend, SolveLimits};
use locus::oracle::{enumerate_optimal, enumerate_z_range, Condition};
use locus::qtla;
use locus::{Instance, InstanceParts, Matrix, Mode, Penalty, Solution};

fn ids(p: &str, n: usize) -> Vec<String> {
    (0..n).map(|e| format!("{p}{e}")).collect()
}

prop_compose! {
    fn matrix(rows: usize, cols: usize, lo: f64, hi: f64)(v in prop::collection::vec(lo..hi, rows * cols)) -> Matrix {
        Matrix::from_fn(rows, cols, |i, j| v[i * cols + j])
    }
}

fn instance(ni: usize, nj: usize, nk: usize, max_budget: usize) -> impl Strategy<Value = Instance> {
    (
        prop::collection::vec(0.5..10.0f64, ni),
        matrix(ni, nk, 0.1, 5.0),
        matrix(ni, nj, 0.1, 5.0),
        matrix(ni, nk, 0.0, 1.0),
        matrix(ni, nj, 0.0, 1.0),
        0..=max_budget,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(move |(demand, ts, tl, ss, sl, budget, exact, cap)| {
            let mode = if exact && budget <= nj { Mode::Exact } else { Mode::AtMost };
            Instance::new(InstanceParts {
                zones: ids("z", ni),
                stations: ids("k", nk),
                lockers: ids("j", nj),
                demand,
                dist_station: Matrix::zeros(ni, nk),
                dist_locker: Matrix::zeros(ni, nj),
                service_station: ss,
                service_locker: sl,
                theta_station: ts,
                theta_locker: tl,
                budget,
                mode,
                locker_cap_active: cap || mode == Mode::Exact,
            })
            .unwrap()
        })
}

fn point(nj: usize, nk: usize) -> impl Strategy<Value = Solution> {
    (prop::collection::vec(any::<bool>(), nj), prop::collection::vec(any::<bool>(), nk)).prop_map(|(x, r)| Solution::new(x, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn service_level_is_a_share(inst in instance(4, 3, 3, 2), sol in point(3, 3)) {
        let c = inst.service_level(&sol);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        if inst.is_feasible(&sol).ok {
            let p = inst.penalized_objective(&sol.to_position(), Penalty::default_for(inst.mode())).unwrap();
            prop_assert_eq!(p, c);
        }
    }

    #[test]
    fn transformed_objective_matches_at_best_y(inst in instance(5, 3, 4, 3), sol in point(3, 4)) {
        let y = qtla::optimal_y(&inst, &sol);
        prop_assert!((qtla::transformed_objective(&inst, &sol, &y) - inst.service_level(&sol)).abs() <= 1e-12);
    }

    #[test]
    fn bounds_bracket_every_reachable_denominator(inst in instance(5, 4, 4, 3)) {
        let b = all_bounds(&inst).unwrap();
        let all = enumerate_z_range(&inst, Condition::None).unwrap();
        for i in 0..inst.n_zones() {
            prop_assert!(b.global_upper[i] >= all[i].max - 1e-12);
        }
        for j in 0..inst.n_lockers() {
            if let Ok(r) = enumerate_z_range(&inst, Condition::Locker(j, true)) {
                for i in 0..inst.n_zones() {
                    prop_assert!(b.lockers[i][j].upper_if_open >= r[i].max - 1e-12);
                    prop_assert!(b.lockers[i][j].lower_if_open <= r[i].min + 1e-12);
                }
            }
            if let Ok(r) = enumerate_z_range(&inst, Condition::Locker(j, false)) {
                for i in 0..inst.n_zones() {
                    prop_assert!(b.lockers[i][j].lower_if_closed <= r[i].min + 1e-12);
                }
            }
        }
        for k in 0..inst.n_stations() {
            if let Ok(r) = enumerate_z_range(&inst, Condition::Station(k, true)) {
                for i in 0..inst.n_zones() {
                    prop_assert!(b.stations[i][k].upper_if_kept >= r[i].max - 1e-12);
                    prop_assert!(b.stations[i][k].lower_if_kept <= r[i].min + 1e-12);
                }
            }
        }
    }

    #[test]
    fn mps_export_is_a_fixed_point(inst in instance(3, 2, 3, 2), mc in any::<bool>()) {
        let model = if mc { milp::build_strengthened(&inst) } else { milp::build_basic(&inst) }.unwrap();
        let text = milp::to_mps(&model);
        let back = milp::parse_mps(&text).unwrap();
        prop_assert_eq!(&back.name, &model.name);
        prop_assert_eq!(milp::to_mps(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn milp_models_reach_the_enumerated_optimum(inst in instance(4, 3, 4, 3)) {
        let oracle = enumerate_optimal(&inst).unwrap();
        for model in [milp::build_basic(&inst).unwrap(), milp::build_strengthened(&inst).unwrap()] {
            let ms = milp::solve(&model, &Backend::default(), &SolveLimits::default()).unwrap();
            let sol = milp::recover_solution(&inst, &ms).unwrap();
            prop_assert!((inst.service_level(&sol) - oracle.value).abs() <= 1e-9);
            let values = milp::implied_assignment(&inst, &model, &oracle.best);
            prop_assert!(milp::max_row_violation(&model, &values) <= 1e-9);
        }
    }
}
