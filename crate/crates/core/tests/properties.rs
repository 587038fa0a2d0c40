use linecut::oracle::{best_threshold, oracle_solve};
use linecut::solver::{fill_tables, scan_roots, solve, solve_value};
use linecut::{
    cut_value_naive, cut_value_sweep, CompressedInstance, CountProfile, Objective, ProblemSpec,
};
use proptest::prelude::*;

/// Up to `max_distinct` values in `[-lim, lim]` with multiplicities `1..=max_mult`,
/// plus raw numbers used to derive a count profile.
fn instance_and_profile(
    max_distinct: usize,
    max_mult: usize,
    lim: i64,
) -> impl Strategy<Value = (CompressedInstance, CountProfile)> {
    prop::collection::vec((-lim..=lim, 1..=max_mult, any::<usize>()), 1..=max_distinct).prop_map(
        |points| {
            let counts: Vec<(i64, usize)> = points.iter().map(|&(x, m, _)| (x, m)).collect();
            let ci = CompressedInstance::from_counts(&counts, 0).unwrap();
            let a = ci
                .mult()
                .iter()
                .zip(points.iter().cycle())
                .map(|(&m, &(_, _, raw))| raw % (m + 1))
                .collect();
            (ci, CountProfile::new(a))
        },
    )
}

fn instance(max_distinct: usize, max_mult: usize, lim: i64) -> impl Strategy<Value = CompressedInstance> {
    instance_and_profile(max_distinct, max_mult, lim).prop_map(|(ci, _)| ci)
}

fn transformed(ci: &CompressedInstance, f: impl Fn(i64) -> i64) -> CompressedInstance {
    let counts: Vec<(i64, usize)> = ci.xs().iter().zip(ci.mult()).map(|(&x, &m)| (f(x), m)).collect();
    CompressedInstance::from_counts(&counts, ci.scale_exp()).unwrap()
}

fn reflected_profile(a: &CountProfile) -> CountProfile {
    CountProfile::new(a.counts().iter().rev().copied().collect())
}

fn specs(n: usize) -> Vec<ProblemSpec> {
    let mut v = vec![ProblemSpec::max_cut()];
    for k in 0..=n as i64 {
        v.push(ProblemSpec::exact(Objective::Max, k));
        v.push(ProblemSpec::exact(Objective::Min, k));
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn evaluators_agree((ci, a) in instance_and_profile(10, 5, 1_000)) {
        prop_assert_eq!(cut_value_sweep(&ci, &a).unwrap(), cut_value_naive(&ci, &a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn evaluator_symmetries((ci, a) in instance_and_profile(8, 4, 1_000), c in -1_000_000i64..=1_000_000, s in 1i64..=50) {
        let v = cut_value_sweep(&ci, &a).unwrap();
        prop_assert!(v.get() >= 0);
        let bound = (ci.n() as i128).pow(2) / 4 * ci.span() as i128;
        prop_assert!(v.get() <= bound);
        prop_assert_eq!(cut_value_sweep(&ci, &a.complement(&ci)).unwrap(), v);
        let shifted = transformed(&ci, |x| x + c);
        prop_assert_eq!(cut_value_sweep(&shifted, &a).unwrap(), v);
        prop_assert_eq!(cut_value_naive(&shifted, &a).unwrap(), v);
        let scaled = transformed(&ci, |x| x * s);
        prop_assert_eq!(cut_value_sweep(&scaled, &a).unwrap().get(), v.get() * s as i128);
        prop_assert_eq!(cut_value_naive(&scaled, &a).unwrap().get(), v.get() * s as i128);
        let mirrored = transformed(&ci, |x| -x);
        let ra = reflected_profile(&a);
        prop_assert_eq!(cut_value_sweep(&mirrored, &ra).unwrap(), v);
        prop_assert_eq!(cut_value_naive(&mirrored, &ra).unwrap(), v);
    }

    #[test]
    fn zero_profiles(ci in instance(8, 4, 1_000)) {
        let none = CountProfile::new(vec![0; ci.distinct()]);
        let all = CountProfile::new(ci.mult().to_vec());
        prop_assert_eq!(cut_value_sweep(&ci, &none).unwrap().get(), 0);
        prop_assert_eq!(cut_value_sweep(&ci, &all).unwrap().get(), 0);
    }

    #[test]
    fn solver_matches_oracle(ci in instance(6, 3, 30)) {
        prop_assume!(ci.profile_count() <= 4096);
        for spec in specs(ci.n()) {
            let dp = solve(&ci, &spec).unwrap();
            let oracle = oracle_solve(&ci, &spec).unwrap();
            prop_assert_eq!(dp.value, oracle.value, "{:?}", spec);
            prop_assert_eq!(cut_value_sweep(&ci, &dp.profile).unwrap(), dp.value);
            prop_assert_eq!(cut_value_sweep(&ci, &oracle.profile).unwrap(), oracle.value);
            prop_assert_eq!(solve_value(&ci, &spec).unwrap().value, dp.value);
        }
    }

    #[test]
    fn side_swap_and_decomposition(ci in instance(10, 4, 500)) {
        let n = ci.n() as i64;
        let mut best_partition = None;
        for k in 0..=n {
            for objective in [Objective::Max, Objective::Min] {
                let a = solve(&ci, &ProblemSpec::exact(objective, k)).unwrap().value;
                let b = solve(&ci, &ProblemSpec::exact(objective, n - k)).unwrap().value;
                prop_assert_eq!(a, b);
            }
            let v = solve(&ci, &ProblemSpec::exact(Objective::Max, k)).unwrap().value;
            best_partition = best_partition.max(Some(v));
        }
        let cut = solve(&ci, &ProblemSpec::max_cut()).unwrap().value;
        prop_assert_eq!(Some(cut), best_partition);
    }

    #[test]
    fn threshold_bounds(ci in instance(10, 4, 500)) {
        for spec in specs(ci.n()) {
            let dp = solve(&ci, &spec).unwrap().value;
            let th = best_threshold(&ci, &spec).unwrap().value;
            match spec.objective {
                Objective::Max => prop_assert!(dp >= th),
                Objective::Min => prop_assert!(dp <= th),
            }
        }
    }

    #[test]
    fn solve_invariances(ci in instance(8, 4, 1_000), c in -1_000_000i64..=1_000_000, s in 1i64..=20) {
        let shifted = transformed(&ci, |x| x + c);
        let scaled = transformed(&ci, |x| x * s);
        let mirrored = transformed(&ci, |x| -x);
        for spec in specs(ci.n()) {
            let v = solve(&ci, &spec).unwrap().value.get();
            prop_assert_eq!(solve(&shifted, &spec).unwrap().value.get(), v);
            prop_assert_eq!(solve(&scaled, &spec).unwrap().value.get(), v * s as i128);
            prop_assert_eq!(solve(&mirrored, &spec).unwrap().value.get(), v);
        }
    }

    #[test]
    fn backtracking_conserves_first_set_size(ci in instance(10, 4, 500), k_raw in any::<usize>()) {
        let k = k_raw % (ci.n() + 1);
        for objective in [Objective::Max, Objective::Min] {
            let tables = fill_tables(&ci, objective);
            let spec = ProblemSpec::exact(objective, k as i64);
            let (root, _) = scan_roots(&ci, tables.top(), &spec).unwrap();
            let (mut p, mut r) = (root.p, root.r);
            prop_assert_eq!(p + r, k);
            for level in (2..=ci.distinct()).rev() {
                let r0 = tables.choices(level).unwrap().get(p, r).unwrap();
                p -= r0;
                r += r0;
                prop_assert_eq!(p + r, k);
            }
            prop_assert_eq!(p, 0);
        }
    }

    #[test]
    fn level_one_and_top_values(ci in instance(6, 4, 100)) {
        let tables = fill_tables(&ci, Objective::Max);
        prop_assert_eq!(tables.top().level(), ci.distinct());
        let unc = solve(&ci, &ProblemSpec::max_cut()).unwrap();
        prop_assert!(2 * unc.profile.counts()[0] <= ci.mult()[0]);
    }
}
