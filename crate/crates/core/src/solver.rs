//! Exact dynamic program for optimal cuts and `(k, n-k)` partitions on the line.
//!
//! Let `x_1 < ... < x_l` be the distinct values and `P_i` the points with
//! value at most `x_i`. A state at level `i` describes the multiset obtained
//! by moving every point at or right of `x_i` onto `x_i`:
//!
//! * `p` points of `P_{i-1}` are in the first set, `q = |P_{i-1}| - p` in the second;
//! * `r` of the collapsed copies at `x_i` are in the first set, `t = n - |P_{i-1}| - r`
//!   in the second.
//!
//! Stretching the collapsed copies from `x_{i-1}` back out to `x_i` adds exactly
//! `(x_i - x_{i-1}) * (p*t + q*r)` to the cut, so
//!
//! ```text
//! V_i(p, r) = gap * (p*t + q*r) + opt over r0 of V_{i-1}(p - r0, r0 + r)
//! ```
//!
//! where `r0` copies of `x_{i-1}` (out of `m_{i-1}`) join the first set and
//! `m_{i-1} - r0 <= q`, `r0 <= p`. Level 1 is identically zero. The optimum for
//! the full instance is found among the level-`l` states, and the partition is
//! recovered by walking the stored `r0` choices back down.
//!
//! The move `(p, r) -> (p - r0, r0 + r)` keeps `p + r` fixed, so every table is
//! stored by diagonal `k = p + r`. Along a diagonal the feasible predecessors
//! form a window whose ends only move right as `p` grows, and a monotone queue
//! finds the optimum of each window in amortized constant time. The total work
//! is proportional to the number of states, `sum_i (|P_{i-1}|+1)(n-|P_{i-1}|+1)`,
//! which is `O(n^3)` for all-distinct inputs and far less with duplicates.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    cut_value_sweep, CompressedInstance, Constraint, CountProfile, CutValue, Objective,
    ProblemSpec,
};

/// Marks a state with no feasible predecessor. Only reachable with an injected fault.
const INFEASIBLE: i128 = i128::MIN;
const NO_CHOICE: u32 = u32::MAX;

/// Levels with at least this many states are filled in parallel.
const PAR_MIN_STATES: usize = 1 << 14;

/// A subproblem at `level` (1-based) with `p` first-set points among `P_{level-1}`
/// and `r` first-set copies at `x_level`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DpState {
    pub level: usize,
    pub p: usize,
    pub r: usize,
}

impl DpState {
    pub fn q(&self, ci: &CompressedInstance) -> usize {
        ci.prefix()[self.level - 1] - self.p
    }

    pub fn t(&self, ci: &CompressedInstance) -> usize {
        ci.n() - ci.prefix()[self.level - 1] - self.r
    }

    pub fn is_valid(&self, ci: &CompressedInstance) -> bool {
        self.level >= 1
            && self.level <= ci.distinct()
            && self.p <= ci.prefix()[self.level - 1]
            && self.r <= ci.n() - ci.prefix()[self.level - 1]
    }
}

/// `gap * (p*t + q*r)`: the cut increase from stretching the collapsed copies
/// back over one gap.
#[inline]
pub fn gap_term(gap: i64, p: usize, q: usize, r: usize, t: usize) -> CutValue {
    let crossing = p as i128 * t as i128 + q as i128 * r as i128;
    CutValue(gap as i128 * crossing)
}

/// Feasible range `[lo, hi]` for the number `r0` of `x_{i-1}` copies in the first
/// set, given `p + q = |P_{i-1}|` and `m_prev = m_{i-1}` copies. Both `r0 = 0`
/// and `r0 = m_prev` are allowed. `None` when the range is empty.
pub fn transition_bounds(p: usize, q: usize, m_prev: usize) -> Option<(usize, usize)> {
    let lo = m_prev.saturating_sub(q);
    let hi = p.min(m_prev);
    (lo <= hi).then_some((lo, hi))
}

/// Test-only mutations used to check that verification catches solver bugs.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Raises the lower transition bound on `r0` by one.
    TransitionLowerBoundOffByOne,
}

/// Per-solve knobs.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    #[doc(hidden)]
    pub fault: Option<Fault>,
}

/// Shape of a level: `left = |P_{i-1}|`, `right = n - |P_{i-1}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Shape {
    left: usize,
    right: usize,
}

impl Shape {
    fn of(ci: &CompressedInstance, level: usize) -> Self {
        let left = ci.prefix()[level - 1];
        Self { left, right: ci.n() - left }
    }

    fn n(&self) -> usize {
        self.left + self.right
    }

    /// Range of `p` on diagonal `k`.
    fn p_range(&self, k: usize) -> (usize, usize) {
        (k.saturating_sub(self.right), self.left.min(k))
    }

    fn states(&self) -> usize {
        (self.left + 1) * (self.right + 1)
    }

    fn locate(&self, p: usize, r: usize) -> Option<(usize, usize)> {
        if p > self.left || r > self.right {
            return None;
        }
        let k = p + r;
        Some((k, p - self.p_range(k).0))
    }
}

/// Optimal values of every state of one level, stored by diagonal `p + r`.
#[derive(Debug, Clone)]
pub struct LevelValues {
    level: usize,
    shape: Shape,
    diags: Vec<Vec<i128>>,
}

impl LevelValues {
    /// Level 1: every point sits at `x_1`, so every cut is 0.
    pub fn base(ci: &CompressedInstance) -> Self {
        let shape = Shape::of(ci, 1);
        Self { level: 1, shape, diags: vec![vec![0]; shape.n() + 1] }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Optimal value of state `(p, r)`; `None` outside the level or if infeasible.
    pub fn get(&self, p: usize, r: usize) -> Option<CutValue> {
        let (k, j) = self.shape.locate(p, r)?;
        let v = self.diags[k][j];
        (v != INFEASIBLE).then_some(CutValue(v))
    }

    pub fn state_count(&self) -> usize {
        self.shape.states()
    }
}

/// Optimal `r0` for every state of one level `>= 2`.
#[derive(Debug, Clone)]
pub struct LevelChoices {
    level: usize,
    shape: Shape,
    diags: Vec<Vec<u32>>,
}

impl LevelChoices {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn get(&self, p: usize, r: usize) -> Option<usize> {
        let (k, j) = self.shape.locate(p, r)?;
        let c = self.diags[k][j];
        (c != NO_CHOICE).then_some(c as usize)
    }
}

/// Backtracking data for every level plus the values of the top level.
#[derive(Debug, Clone)]
pub struct DpTables {
    /// `choices[i - 2]` belongs to level `i`.
    choices: Vec<LevelChoices>,
    top: LevelValues,
}

impl DpTables {
    pub fn top(&self) -> &LevelValues {
        &self.top
    }

    pub fn choices(&self, level: usize) -> Option<&LevelChoices> {
        level.checked_sub(2).and_then(|i| self.choices.get(i))
    }
}

/// Fills level `level >= 2` from the completed level below it.
pub fn fill_level(
    ci: &CompressedInstance,
    level: usize,
    prev: &LevelValues,
    objective: Objective,
) -> (LevelValues, LevelChoices) {
    let (values, choices) = fill_level_with(ci, level, prev, objective, true, None);
    (values, choices.expect("choices requested"))
}

fn fill_level_with(
    ci: &CompressedInstance,
    level: usize,
    prev: &LevelValues,
    objective: Objective,
    keep_choices: bool,
    fault: Option<Fault>,
) -> (LevelValues, Option<LevelChoices>) {
    assert!(level >= 2 && level <= ci.distinct(), "level {level} out of range");
    assert_eq!(prev.level, level - 1, "previous level mismatch");
    let shape = Shape::of(ci, level);
    let m_prev = ci.mult()[level - 2];
    let gap = ci.gaps()[level - 2];
    let shrink = usize::from(fault == Some(Fault::TransitionLowerBoundOffByOne));

    let fill = |k: usize| fill_diagonal(shape, k, m_prev, gap, &prev.diags[k], prev.shape, objective, keep_choices, shrink);
    let diags: Vec<(Vec<i128>, Vec<u32>)> = if shape.states() >= PAR_MIN_STATES {
        (0..=shape.n()).into_par_iter().map(fill).collect()
    } else {
        (0..=shape.n()).map(fill).collect()
    };
    let (values, choices): (Vec<_>, Vec<_>) = diags.into_iter().unzip();
    let values = LevelValues { level, shape, diags: values };
    let choices = keep_choices.then_some(LevelChoices { level, shape, diags: choices });
    (values, choices)
}

#[allow(clippy::too_many_arguments)]
fn fill_diagonal(
    shape: Shape,
    k: usize,
    m_prev: usize,
    gap: i64,
    prev_diag: &[i128],
    prev_shape: Shape,
    objective: Objective,
    keep_choices: bool,
    shrink: usize,
) -> (Vec<i128>, Vec<u32>) {
    let (p_lo, p_hi) = shape.p_range(k);
    let (prev_lo, _) = prev_shape.p_range(k);
    let len = p_hi - p_lo + 1;
    let mut values = Vec::with_capacity(len);
    let mut choices = if keep_choices { Vec::with_capacity(len) } else { Vec::new() };

    // Predecessor p' = p - r0 ranges over [max(0, p - m_prev), min(p, |P_{i-2}|)].
    // Candidates in the queue have increasing p' and strictly worsening values,
    // so the front is the optimum with the largest p', i.e. the smallest r0.
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut next = prev_lo;
    for p in p_lo..=p_hi {
        let r = k - p;
        let q = shape.left - p;
        let t = shape.right - r;
        let win_lo = p.saturating_sub(m_prev);
        let win_hi = p.min(prev_shape.left).checked_sub(shrink);
        if let Some(win_hi) = win_hi {
            while next <= win_hi {
                let v = prev_diag[next - prev_lo];
                if v != INFEASIBLE {
                    while let Some(&back) = queue.back() {
                        if objective.improves(prev_diag[back - prev_lo], v) {
                            break;
                        }
                        queue.pop_back();
                    }
                    queue.push_back(next);
                }
                next += 1;
            }
        }
        while queue.front().is_some_and(|&f| f < win_lo) {
            queue.pop_front();
        }
        match (queue.front(), win_hi) {
            (Some(&best), Some(hi)) if best <= hi => {
                values.push(gap_term(gap, p, q, r, t).0 + prev_diag[best - prev_lo]);
                if keep_choices {
                    choices.push((p - best) as u32);
                }
            }
            _ => {
                values.push(INFEASIBLE);
                if keep_choices {
                    choices.push(NO_CHOICE);
                }
            }
        }
    }
    (values, choices)
}

/// Fills every level, keeping all backtracking choices and the top values.
pub fn fill_tables(ci: &CompressedInstance, objective: Objective) -> DpTables {
    fill_tables_with(ci, objective, &SolveOptions::default())
}

fn fill_tables_with(ci: &CompressedInstance, objective: Objective, options: &SolveOptions) -> DpTables {
    let mut choices = Vec::with_capacity(ci.distinct().saturating_sub(1));
    let mut current = LevelValues::base(ci);
    for level in 2..=ci.distinct() {
        let (values, level_choices) =
            fill_level_with(ci, level, &current, objective, true, options.fault);
        choices.push(level_choices.expect("choices requested"));
        current = values;
    }
    DpTables { choices, top: current }
}

/// Top level values only; two levels in memory at a time.
fn fill_values_only(ci: &CompressedInstance, objective: Objective, options: &SolveOptions) -> LevelValues {
    let mut current = LevelValues::base(ci);
    for level in 2..=ci.distinct() {
        current = fill_level_with(ci, level, &current, objective, false, options.fault).0;
    }
    current
}

/// Picks the best root state at the top level. Ties go to the lexicographically
/// smallest `(p, r)`.
pub fn scan_roots(
    ci: &CompressedInstance,
    top: &LevelValues,
    spec: &ProblemSpec,
) -> Result<(DpState, CutValue)> {
    let k = spec.validate(ci.n())?;
    if top.level != ci.distinct() {
        return Err(Error::InternalInconsistency(format!(
            "root scan on level {} of {}",
            top.level,
            ci.distinct()
        )));
    }
    let shape = top.shape;
    let mut best: Option<(DpState, CutValue)> = None;
    let mut consider = |p: usize, r: usize| {
        if let Some(v) = top.get(p, r) {
            if best.is_none_or(|(_, b)| spec.objective.improves(v.0, b.0)) {
                best = Some((DpState { level: top.level, p, r }, v));
            }
        }
    };
    match k {
        None => {
            for p in 0..=shape.left {
                for r in 0..=shape.right {
                    consider(p, r);
                }
            }
        }
        Some(k) => {
            let (lo, hi) = shape.p_range(k);
            for p in lo..=hi {
                consider(p, k - p);
            }
        }
    }
    best.ok_or_else(|| Error::InternalInconsistency("no feasible root state".into()))
}

/// Walks the stored choices from `root` back to level 1.
pub fn reconstruct(
    ci: &CompressedInstance,
    tables: &DpTables,
    root: DpState,
) -> Result<CountProfile> {
    let l = ci.distinct();
    if root.level != l || !root.is_valid(ci) {
        return Err(Error::InternalInconsistency(format!("invalid root state {root:?}")));
    }
    let mut counts = vec![0usize; l];
    counts[l - 1] = root.r;
    let (mut p, mut r) = (root.p, root.r);
    for level in (2..=l).rev() {
        let state = DpState { level, p, r };
        let choice = tables
            .choices(level)
            .and_then(|c| c.get(p, r))
            .ok_or_else(|| Error::InternalInconsistency(format!("no choice stored for {state:?}")))?;
        let m_prev = ci.mult()[level - 2];
        match transition_bounds(p, state.q(ci), m_prev) {
            Some((lo, hi)) if (lo..=hi).contains(&choice) => {}
            _ => {
                return Err(Error::InternalInconsistency(format!(
                    "choice {choice} out of bounds at {state:?}"
                )))
            }
        }
        counts[level - 2] = choice;
        p -= choice;
        r += choice;
    }
    if p != 0 {
        return Err(Error::InternalInconsistency(format!("backtracking ended at p = {p}")));
    }
    Ok(CountProfile::new(counts))
}

/// An optimal partition and its cut value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub profile: CountProfile,
    pub value: CutValue,
    pub spec: ProblemSpec,
    /// Size of the first set.
    pub k_actual: usize,
}

/// Optimal value without a partition, from the value-only mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueOnly {
    pub value: CutValue,
    pub spec: ProblemSpec,
    /// Size of the first set in the optimal root state; the smaller side
    /// when unconstrained.
    pub k_actual: usize,
}

fn check_capacity(ci: &CompressedInstance) -> Result<()> {
    let n = ci.n() as i128;
    n.checked_mul(n)
        .and_then(|nn| nn.checked_mul(ci.span() as i128 + 1))
        .map(|_| ())
        .ok_or(Error::Overflow)
}

/// Solves `spec` exactly on `ci` and reconstructs an optimal partition.
///
/// Unconstrained answers are reported with the side choice that makes the
/// profile lexicographically smaller than its complement, so `a_1 <= m_1 - a_1`.
pub fn solve(ci: &CompressedInstance, spec: &ProblemSpec) -> Result<Solution> {
    solve_with(ci, spec, &SolveOptions::default())
}

pub fn solve_with(
    ci: &CompressedInstance,
    spec: &ProblemSpec,
    options: &SolveOptions,
) -> Result<Solution> {
    spec.validate(ci.n())?;
    check_capacity(ci)?;
    let tables = fill_tables_with(ci, spec.objective, options);
    let (root, value) = scan_roots(ci, tables.top(), spec)?;
    let mut profile = reconstruct(ci, &tables, root)?;
    if spec.constraint == Constraint::Unconstrained {
        let complement = profile.complement(ci);
        if complement < profile {
            profile = complement;
        }
    }
    if cfg!(debug_assertions) {
        let check = cut_value_sweep(ci, &profile)?;
        if check != value {
            return Err(Error::InternalInconsistency(format!(
                "reconstructed profile evaluates to {check}, table holds {value}"
            )));
        }
    }
    let k_actual = profile.first_size();
    Ok(Solution { profile, value, spec: *spec, k_actual })
}

/// Optimal value only, keeping two levels in memory (`O(n^2)`).
pub fn solve_value(ci: &CompressedInstance, spec: &ProblemSpec) -> Result<ValueOnly> {
    solve_value_with(ci, spec, &SolveOptions::default())
}

pub fn solve_value_with(
    ci: &CompressedInstance,
    spec: &ProblemSpec,
    options: &SolveOptions,
) -> Result<ValueOnly> {
    spec.validate(ci.n())?;
    check_capacity(ci)?;
    let top = fill_values_only(ci, spec.objective, options);
    let (root, value) = scan_roots(ci, &top, spec)?;
    let mut k_actual = root.p + root.r;
    if spec.constraint == Constraint::Unconstrained {
        k_actual = k_actual.min(ci.n() - k_actual);
    }
    Ok(ValueOnly { value, spec: *spec, k_actual })
}

/// Number of DP states over all levels.
pub fn state_count(ci: &CompressedInstance) -> usize {
    (1..=ci.distinct()).map(|i| Shape::of(ci, i).states()).sum()
}
