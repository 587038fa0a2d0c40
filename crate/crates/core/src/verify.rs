//! Differential check of the dynamic program against exhaustive enumeration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::format::render_instance;
use crate::gen::{generate, GenKind, GenSpec};
use crate::model::{
    cut_value_sweep, CompressedInstance, Constraint, Instance, Objective, ProblemSpec,
};
use crate::oracle::{oracle_solve_capped, DEFAULT_ORACLE_CAP};
use crate::solver::{solve_with, Fault, SolveOptions};

const SPANS: [i64; 6] = [1, 3, 10, 100, 10_000, 1_000_000];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub oracle_cap: u128,
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(n_max: usize, trials: usize, seed: u64) -> Self {
        Self { n_max, trials, seed, oracle_cap: DEFAULT_ORACLE_CAP, fault: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub trial: usize,
    pub instance: Instance,
    pub spec: ProblemSpec,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub problems: usize,
    pub failures: usize,
    /// Lowest-numbered failing trial.
    pub first_failure: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "verify: {} trials, {} problems, {} failures\n",
            self.trials, self.problems, self.failures
        );
        if let Some(cx) = &self.first_failure {
            s.push_str(&format!(
                "first counterexample: trial {}, {}\n{}\ninstance:\n{}",
                cx.trial,
                describe(&cx.spec),
                cx.detail,
                render_instance(&cx.instance)
            ));
        }
        s
    }
}

fn describe(spec: &ProblemSpec) -> String {
    match spec.constraint {
        Constraint::Unconstrained => format!("{} unconstrained", spec.objective.name()),
        Constraint::Exact(k) => format!("{} k={k}", spec.objective.name()),
    }
}

/// The random instance used for one trial.
pub fn trial_instance(trial_seed: u64, trial: usize, n_max: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let n = rng.gen_range(1..=n_max);
    let span = SPANS[rng.gen_range(0..SPANS.len())];
    let kind = [GenKind::Uniform, GenKind::Duplicates, GenKind::Clustered][trial % 3];
    let spec = match kind {
        GenKind::Uniform => GenSpec::uniform(n, span, rng.gen()),
        GenKind::Duplicates => {
            let max_l = n.min(span as usize + 1);
            GenSpec::duplicates(n, span, rng.gen_range(1..=max_l), rng.gen())
        }
        GenKind::Clustered => GenSpec::clustered(n, span, rng.gen_range(1..=3), rng.gen()),
    };
    let shift: i64 = rng.gen_range(-1000..=1000);
    let base = generate(&spec)?;
    Instance::new(base.coords().iter().map(|c| c + shift).collect(), 0)
}

/// Every problem checked per instance: max-cut plus both objectives for each k.
pub fn all_specs(n: usize) -> Vec<ProblemSpec> {
    let mut specs = vec![ProblemSpec::max_cut()];
    for k in 0..=n as i64 {
        specs.push(ProblemSpec::exact(Objective::Max, k));
        specs.push(ProblemSpec::exact(Objective::Min, k));
    }
    specs
}

struct InstanceCheck {
    problems: usize,
    failures: usize,
    first: Option<(ProblemSpec, String)>,
}

fn check_instance(ci: &CompressedInstance, config: &VerifyConfig) -> Result<InstanceCheck> {
    let options = SolveOptions { fault: config.fault };
    let specs = all_specs(ci.n());
    let mut failures = 0;
    let mut first = None;
    for spec in &specs {
        let expected = oracle_solve_capped(ci, spec, config.oracle_cap)?;
        let problem = match solve_with(ci, spec, &options) {
            Err(e) => Some(format!("solver error: {e}; oracle value {}", expected.value)),
            Ok(got) => {
                let recheck = cut_value_sweep(ci, &got.profile)?;
                let k_ok = match spec.constraint {
                    Constraint::Exact(k) => got.k_actual == k as usize,
                    Constraint::Unconstrained => true,
                };
                if got.value != expected.value {
                    Some(format!("dp value {} != oracle value {}", got.value, expected.value))
                } else if recheck != got.value {
                    Some(format!("profile {:?} evaluates to {recheck}, reported {}", got.profile.counts(), got.value))
                } else if !k_ok {
                    Some(format!("first set has {} points", got.k_actual))
                } else {
                    None
                }
            }
        };
        if let Some(detail) = problem {
            failures += 1;
            first.get_or_insert((*spec, detail));
        }
    }
    Ok(InstanceCheck { problems: specs.len(), failures, first })
}

/// Runs `trials` seeded instances with `n <= n_max` through every problem and
/// compares the solver with the oracle. Trials run in parallel; the report
/// does not depend on scheduling.
pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.n_max == 0 {
        return Err(Error::InvalidArgument("n-max must be at least 1".into()));
    }
    let mut seeder = ChaCha8Rng::seed_from_u64(config.seed);
    let seeds: Vec<u64> = (0..config.trials).map(|_| seeder.gen()).collect();
    let outcomes: Vec<Result<(Instance, InstanceCheck)>> = seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &s)| {
            let instance = trial_instance(s, trial, config.n_max)?;
            let ci = CompressedInstance::compress(&instance)?;
            let check = check_instance(&ci, config)?;
            Ok((instance, check))
        })
        .collect();
    let mut report =
        VerifyReport { trials: config.trials, problems: 0, failures: 0, first_failure: None };
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        let (instance, check) = outcome?;
        report.problems += check.problems;
        report.failures += check.failures;
        if report.first_failure.is_none() {
            if let Some((spec, detail)) = check.first {
                report.first_failure = Some(Counterexample { trial, instance, spec, detail });
            }
        }
    }
    Ok(report)
}
