//! Timing harness for the empirical growth rate of the solver.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gen::{generate, GenSpec};
use crate::model::{cut_value_sweep, CompressedInstance, Objective, ProblemSpec};
use crate::solver::solve;

pub const CSV_HEADER: &str = "n,l,kind,seed,problem,elapsed_ns,value";
const BENCH_SPAN: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub l: usize,
    pub kind: &'static str,
    pub seed: u64,
    pub problem: &'static str,
    pub elapsed_ns: u128,
    pub value: i128,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.n, self.l, self.kind, self.seed, self.problem, self.elapsed_ns, self.value
        )
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    /// `(n, median elapsed_ns)` per size.
    pub medians: Vec<(usize, u128)>,
    /// Least-squares slope of `ln(time)` against `ln(n)`.
    pub slope: f64,
}

impl BenchOutcome {
    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.records {
            s.push_str(&r.csv_row());
            s.push('\n');
        }
        s
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn median(mut v: Vec<u128>) -> u128 {
    v.sort_unstable();
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        (v[mid - 1] + v[mid]) / 2
    }
}

/// Times max-bisection (`k = n / 2`) on all-distinct uniform instances.
///
/// Trials run one after another on the calling thread's rayon pool, so a
/// one-thread pool gives single-threaded timings.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    if config.sizes.len() < 2 {
        return Err(Error::InvalidArgument("bench needs at least two sizes".into()));
    }
    if config.sizes.windows(2).any(|w| w[0] >= w[1]) || config.sizes[0] < 50 {
        return Err(Error::InvalidArgument("sizes must be ascending and at least 50".into()));
    }
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut seeder = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::new();
    let mut medians = Vec::new();
    for &n in &config.sizes {
        let mut times = Vec::with_capacity(config.trials);
        for _ in 0..config.trials {
            let seed: u64 = seeder.gen();
            // n distinct values, multiplicity one each
            let instance = generate(&GenSpec::duplicates(n, BENCH_SPAN.max(n as i64), n, seed))?;
            let ci = CompressedInstance::compress(&instance)?;
            let spec = ProblemSpec::exact(Objective::Max, (n / 2) as i64);
            let start = Instant::now();
            let sol = solve(&ci, &spec)?;
            let elapsed_ns = start.elapsed().as_nanos().max(1);
            if cut_value_sweep(&ci, &sol.profile)? != sol.value {
                return Err(Error::InternalInconsistency(format!(
                    "bench n={n} seed={seed}: profile does not re-evaluate to {}",
                    sol.value
                )));
            }
            times.push(elapsed_ns);
            records.push(BenchRecord {
                n,
                l: ci.distinct(),
                kind: "uniform-distinct",
                seed,
                problem: if n % 2 == 0 { "max-bisection" } else { "max-partition" },
                elapsed_ns,
                value: sol.value.0,
            });
        }
        medians.push((n, median(times)));
    }
    let points: Vec<(f64, f64)> = medians.iter().map(|&(n, t)| (n as f64, t as f64)).collect();
    let slope = loglog_slope(&points);
    Ok(BenchOutcome { records, medians, slope })
}
