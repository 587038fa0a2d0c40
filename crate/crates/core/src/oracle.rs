//! Ground truth for small instances.
//!
//! [`oracle_solve`] enumerates every count profile and evaluates each with
//! [`cut_value_sweep`]; it shares nothing with the dynamic program beyond the
//! evaluator. [`best_threshold`] is the baseline that only ever splits the
//! sorted points at one position.

use crate::error::{Error, Result};
use crate::model::{cut_value_sweep, CompressedInstance, CountProfile, CutValue, ProblemSpec};
use crate::solver::Solution;

pub const DEFAULT_ORACLE_CAP: u128 = 1 << 22;

/// Exhaustive search over all `prod (m_i + 1)` count profiles.
///
/// Among optimal profiles the lexicographically smallest is returned.
pub fn oracle_solve(ci: &CompressedInstance, spec: &ProblemSpec) -> Result<Solution> {
    oracle_solve_capped(ci, spec, DEFAULT_ORACLE_CAP)
}

pub fn oracle_solve_capped(
    ci: &CompressedInstance,
    spec: &ProblemSpec,
    cap: u128,
) -> Result<Solution> {
    let k = spec.validate(ci.n())?;
    let profiles = ci.profile_count();
    if profiles > cap {
        return Err(Error::TooLargeForOracle { profiles, cap });
    }
    let mult = ci.mult();
    let mut counts = vec![0usize; mult.len()];
    let mut best: Option<(CountProfile, CutValue)> = None;
    loop {
        if k.is_none_or(|k| counts.iter().sum::<usize>() == k) {
            let profile = CountProfile::new(counts.clone());
            let value = cut_value_sweep(ci, &profile)?;
            if best.as_ref().is_none_or(|(_, b)| spec.objective.improves(value.0, b.0)) {
                best = Some((profile, value));
            }
        }
        // Odometer, last position fastest: lexicographic order.
        let mut pos = counts.len();
        loop {
            if pos == 0 {
                let (profile, value) = best.expect("at least one profile is feasible");
                let k_actual = profile.first_size();
                return Ok(Solution { profile, value, spec: *spec, k_actual });
            }
            pos -= 1;
            if counts[pos] < mult[pos] {
                counts[pos] += 1;
                break;
            }
            counts[pos] = 0;
        }
    }
}

/// Profile whose first set is the `j` smallest points.
pub fn threshold_profile(ci: &CompressedInstance, j: usize) -> CountProfile {
    let mut left = j;
    CountProfile::new(
        ci.mult()
            .iter()
            .map(|&m| {
                let take = m.min(left);
                left -= take;
                take
            })
            .collect(),
    )
}

/// Best cut among the `n + 1` prefix splits of the sorted points; under a
/// size constraint only `j = k` is feasible. Ties go to the smallest `j`.
pub fn best_threshold(ci: &CompressedInstance, spec: &ProblemSpec) -> Result<Solution> {
    let k = spec.validate(ci.n())?;
    let candidates: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=ci.n()).collect(),
    };
    let mut best: Option<(CountProfile, CutValue)> = None;
    for j in candidates {
        let profile = threshold_profile(ci, j);
        let value = cut_value_sweep(ci, &profile)?;
        if best.as_ref().is_none_or(|(_, b)| spec.objective.improves(value.0, b.0)) {
            best = Some((profile, value));
        }
    }
    let (profile, value) = best.expect("at least one threshold");
    let k_actual = profile.first_size();
    Ok(Solution { profile, value, spec: *spec, k_actual })
}
