//! Instances, partitions and the cut-value evaluators.
//!
//! Coordinates are decimal fixed-point numbers: every point of an instance is
//! stored as an integer `scaled = x * 10^scale_exp`, with one `scale_exp` shared
//! by the whole instance. All arithmetic downstream is therefore exact.

use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted magnitude of a scaled coordinate.
pub const MAX_ABS_SCALED: i64 = 1 << 40;

/// Largest accepted number of fractional digits.
pub const MAX_SCALE_EXP: u32 = 9;

/// A finite multiset of points on the line, in input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    scale_exp: u32,
    coords: Vec<i64>,
}

impl Instance {
    pub fn new(coords: Vec<i64>, scale_exp: u32) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InstanceEmpty);
        }
        if scale_exp > MAX_SCALE_EXP {
            return Err(Error::ScaleTooLarge(scale_exp));
        }
        if let Some(&c) = coords.iter().find(|c| c.unsigned_abs() > MAX_ABS_SCALED as u64) {
            return Err(Error::CoordOutOfRange(c));
        }
        Ok(Self { scale_exp, coords })
    }

    /// Integer coordinates (`scale_exp = 0`).
    pub fn from_integers(coords: Vec<i64>) -> Result<Self> {
        Self::new(coords, 0)
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Sorted distinct values with multiplicities, prefix sizes and gaps.
///
/// `prefix[i]` is the number of points with value at most `xs[i - 1]`, so
/// `prefix[0] = 0` and `prefix[l] = n`. `gaps[i] = xs[i + 1] - xs[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedInstance {
    scale_exp: u32,
    xs: Vec<i64>,
    mult: Vec<usize>,
    prefix: Vec<usize>,
    gaps: Vec<i64>,
}

impl CompressedInstance {
    /// Groups equal coordinates. Fails only on an empty instance.
    pub fn compress(instance: &Instance) -> Result<Self> {
        let mut sorted = instance.coords.clone();
        if sorted.is_empty() {
            return Err(Error::InstanceEmpty);
        }
        sorted.sort_unstable();
        let mut xs: Vec<i64> = Vec::new();
        let mut mult: Vec<usize> = Vec::new();
        for c in sorted {
            match xs.last() {
                Some(&last) if last == c => *mult.last_mut().unwrap() += 1,
                _ => {
                    xs.push(c);
                    mult.push(1);
                }
            }
        }
        Ok(Self::from_parts_unchecked(instance.scale_exp, xs, mult))
    }

    /// Builds from distinct values and multiplicities; values need not be sorted.
    pub fn from_counts(values: &[(i64, usize)], scale_exp: u32) -> Result<Self> {
        let mut coords = Vec::new();
        for &(x, m) in values {
            coords.extend(std::iter::repeat_n(x, m));
        }
        Self::compress(&Instance::new(coords, scale_exp)?)
    }

    fn from_parts_unchecked(scale_exp: u32, xs: Vec<i64>, mult: Vec<usize>) -> Self {
        let mut prefix = Vec::with_capacity(xs.len() + 1);
        prefix.push(0);
        for &m in &mult {
            prefix.push(prefix.last().unwrap() + m);
        }
        let gaps = xs.windows(2).map(|w| w[1] - w[0]).collect();
        Self { scale_exp, xs, mult, prefix, gaps }
    }

    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        *self.prefix.last().unwrap()
    }

    /// Number of distinct values.
    pub fn distinct(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[i64] {
        &self.xs
    }

    pub fn mult(&self) -> &[usize] {
        &self.mult
    }

    pub fn prefix(&self) -> &[usize] {
        &self.prefix
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    /// `x_l - x_1`.
    pub fn span(&self) -> i64 {
        self.xs[self.xs.len() - 1] - self.xs[0]
    }

    /// Expands back to an instance in sorted order.
    pub fn to_instance(&self) -> Instance {
        let coords = self
            .xs
            .iter()
            .zip(&self.mult)
            .flat_map(|(&x, &m)| std::iter::repeat_n(x, m))
            .collect();
        Instance { scale_exp: self.scale_exp, coords }
    }

    /// Number of distinct count profiles, `prod (m_i + 1)`, saturating.
    pub fn profile_count(&self) -> u128 {
        self.mult
            .iter()
            .fold(1u128, |acc, &m| acc.saturating_mul(m as u128 + 1))
    }
}

/// How many copies of each distinct value go to the first set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CountProfile(pub Vec<usize>);

impl CountProfile {
    pub fn new(counts: Vec<usize>) -> Self {
        Self(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Size of the first set.
    pub fn first_size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn validate(&self, ci: &CompressedInstance) -> Result<()> {
        if self.0.len() != ci.distinct() {
            return Err(Error::InvalidProfile(format!(
                "profile has {} entries, instance has {} distinct values",
                self.0.len(),
                ci.distinct()
            )));
        }
        for (i, (&a, &m)) in self.0.iter().zip(ci.mult()).enumerate() {
            if a > m {
                return Err(Error::InvalidProfile(format!(
                    "entry {i} assigns {a} copies but only {m} exist"
                )));
            }
        }
        Ok(())
    }

    /// The same partition with the two sides swapped.
    pub fn complement(&self, ci: &CompressedInstance) -> Self {
        Self(self.0.iter().zip(ci.mult()).map(|(&a, &m)| m - a).collect())
    }
}

/// Cut value in units of `10^-scale_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CutValue(pub i128);

impl CutValue {
    pub const ZERO: CutValue = CutValue(0);

    pub fn get(self) -> i128 {
        self.0
    }

    /// Exact decimal rendering at the given scale.
    pub fn to_decimal(self, scale_exp: u32) -> String {
        format_fixed(self.0, scale_exp)
    }
}

impl fmt::Display for CutValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Renders `scaled * 10^-scale_exp` without trailing fractional zeros.
pub fn format_fixed(scaled: i128, scale_exp: u32) -> String {
    let neg = scaled < 0;
    let digits = scaled.unsigned_abs().to_string();
    let scale = scale_exp as usize;
    let (int_part, frac_part) = if digits.len() > scale {
        let (a, b) = digits.split_at(digits.len() - scale);
        (a.to_string(), b.to_string())
    } else {
        ("0".to_string(), format!("{digits:0>scale$}"))
    };
    let frac = frac_part.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part);
    if !frac.is_empty() {
        out.push('.');
        out.push_str(frac);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    Min,
    Max,
}

impl Objective {
    /// True when `candidate` strictly beats `incumbent`.
    #[inline]
    pub fn improves(self, candidate: i128, incumbent: i128) -> bool {
        match self {
            Objective::Max => candidate > incumbent,
            Objective::Min => candidate < incumbent,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Objective::Min => "min",
            Objective::Max => "max",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Unconstrained,
    /// The first set has exactly `k` points.
    Exact(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    pub objective: Objective,
    pub constraint: Constraint,
}

impl ProblemSpec {
    pub fn max_cut() -> Self {
        Self { objective: Objective::Max, constraint: Constraint::Unconstrained }
    }

    pub fn exact(objective: Objective, k: i64) -> Self {
        Self { objective, constraint: Constraint::Exact(k) }
    }

    /// Checks the spec against an instance of `n` points and returns the
    /// required first-set size, if any.
    pub fn validate(&self, n: usize) -> Result<Option<usize>> {
        match self.constraint {
            Constraint::Unconstrained => match self.objective {
                Objective::Max => Ok(None),
                Objective::Min => Err(Error::UnsupportedProblem(
                    "unconstrained minimum cut is trivially 0; give a first-set size k".into(),
                )),
            },
            Constraint::Exact(k) if k < 0 || k as u128 > n as u128 => Err(Error::InvalidK { k, n }),
            Constraint::Exact(k) => Ok(Some(k as usize)),
        }
    }
}

/// The named problems of the command-line interface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    MaxCut,
    MaxBisection,
    MinBisection,
    MaxPartition(i64),
    MinPartition(i64),
}

impl Problem {
    pub const ALL_NAMES: [&'static str; 5] =
        ["max-cut", "max-bisection", "min-bisection", "max-partition", "min-partition"];

    pub fn name(self) -> &'static str {
        match self {
            Problem::MaxCut => "max-cut",
            Problem::MaxBisection => "max-bisection",
            Problem::MinBisection => "min-bisection",
            Problem::MaxPartition(_) => "max-partition",
            Problem::MinPartition(_) => "min-partition",
        }
    }

    /// Resolves to a concrete spec for `n` points. Bisections need even `n`.
    pub fn to_spec(self, n: usize) -> Result<ProblemSpec> {
        let spec = match self {
            Problem::MaxCut => ProblemSpec::max_cut(),
            Problem::MaxBisection | Problem::MinBisection => {
                if !n.is_multiple_of(2) {
                    return Err(Error::OddBisection { n });
                }
                let objective =
                    if self == Problem::MaxBisection { Objective::Max } else { Objective::Min };
                ProblemSpec::exact(objective, (n / 2) as i64)
            }
            Problem::MaxPartition(k) => ProblemSpec::exact(Objective::Max, k),
            Problem::MinPartition(k) => ProblemSpec::exact(Objective::Min, k),
        };
        spec.validate(n)?;
        Ok(spec)
    }
}

/// Cut value by sweeping the gaps between consecutive distinct values.
///
/// Each gap `g_i` is crossed by every pair with one end on each side of it and
/// the two ends in different sets, so it contributes
/// `g_i * (A_left * B_right + B_left * A_right)`. Linear in `l`.
pub fn cut_value_sweep(ci: &CompressedInstance, profile: &CountProfile) -> Result<CutValue> {
    profile.validate(ci)?;
    let a = profile.counts();
    let n = ci.n() as i128;
    let total_first: i128 = a.iter().map(|&v| v as i128).sum();
    let mut first_left: i128 = 0;
    let mut value: i128 = 0;
    for (i, &gap) in ci.gaps().iter().enumerate() {
        first_left += a[i] as i128;
        let left = ci.prefix()[i + 1] as i128;
        let second_left = left - first_left;
        let first_right = total_first - first_left;
        let second_right = n - left - first_right;
        value += gap as i128 * (first_left * second_right + second_left * first_right);
    }
    Ok(CutValue(value))
}

/// Cut value straight from the definition: sum of `|x_i - x_j|` over all
/// pairs split between the sets, weighted by copy counts. Quadratic in `l`.
pub fn cut_value_naive(ci: &CompressedInstance, profile: &CountProfile) -> Result<CutValue> {
    profile.validate(ci)?;
    let a = profile.counts();
    let mut value: i128 = 0;
    for (i, &xi) in ci.xs().iter().enumerate() {
        for (j, &xj) in ci.xs().iter().enumerate() {
            let pairs = a[i] as i128 * (ci.mult()[j] - a[j]) as i128;
            value += pairs * (xi as i128 - xj as i128).abs();
        }
    }
    Ok(CutValue(value))
}
