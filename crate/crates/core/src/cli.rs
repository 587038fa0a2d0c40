//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on solver or validation errors, 2 on usage errors.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, BenchConfig};
use crate::error::Error;
use crate::format::{parse_instance, render_instance, render_solution, OutputFormat, SolveReport};
use crate::gen::{generate, GenKind, GenSpec};
use crate::model::{CompressedInstance, Constraint, Instance, Problem};
use crate::oracle::{oracle_solve_capped, DEFAULT_ORACLE_CAP};
use crate::solver::{solve, solve_value};
use crate::verify::{run_verify, VerifyConfig};

/// Environment variable capping the worker count (0 or unset: automatic).
pub const THREADS_ENV: &str = "LINECUT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "linecut", version, about = "Exact optimal cuts and partitions of points on a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve with the dynamic program.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        io: IoArgs,
        /// Report the optimal value only, using O(n^2) memory.
        #[arg(long)]
        no_assignment: bool,
    },
    /// Solve by exhaustive enumeration of count profiles.
    Oracle {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        io: IoArgs,
        /// Largest number of count profiles to enumerate.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: u128,
    },
    /// Compare the solver against the oracle on random small instances.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a random instance file.
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        span: i64,
        /// Distinct values for `duplicates` (default n/4).
        #[arg(long)]
        distinct: Option<usize>,
        #[arg(long, default_value_t = 4)]
        clusters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time max-bisection on all-distinct instances and fit the growth exponent.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![100, 200, 400])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProblemName {
    MaxCut,
    MaxBisection,
    MinBisection,
    MaxPartition,
    MinPartition,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Uniform,
    Duplicates,
    Clustered,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    #[arg(long, value_enum)]
    problem: ProblemName,
    /// First-set size for max-partition / min-partition.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<i64>,
}

#[derive(Debug, Args)]
struct IoArgs {
    /// Instance file, `-` for stdin.
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    output: FormatArg,
    /// Include the solve time as elapsed_ns.
    #[arg(long)]
    timing: bool,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl ProblemArgs {
    fn resolve(&self) -> Result<Problem, Failure> {
        let needs_k = matches!(self.problem, ProblemName::MaxPartition | ProblemName::MinPartition);
        match (needs_k, self.k) {
            (true, None) => return Err(Failure::Usage("--k is required for partitions".into())),
            (false, Some(_)) => {
                return Err(Failure::Usage("--k only applies to max-partition and min-partition".into()))
            }
            _ => {}
        }
        Ok(match self.problem {
            ProblemName::MaxCut => Problem::MaxCut,
            ProblemName::MaxBisection => Problem::MaxBisection,
            ProblemName::MinBisection => Problem::MinBisection,
            ProblemName::MaxPartition => Problem::MaxPartition(self.k.unwrap()),
            ProblemName::MinPartition => Problem::MinPartition(self.k.unwrap()),
        })
    }
}

impl IoArgs {
    fn load(&self) -> Result<CompressedInstance, Failure> {
        let text = if self.input == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(&self.input)
        }
        .map_err(|e| Failure::Run(format!("cannot read {}: {e}", self.input)))?;
        let instance = parse_instance(&text)?;
        Ok(CompressedInstance::compress(&instance)?)
    }

    fn format(&self) -> OutputFormat {
        match self.output {
            FormatArg::Text => OutputFormat::Text,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

fn run(cli: Cli, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> Result<(), Failure> {
    let write_failed = |e: std::io::Error| Failure::Run(format!("write failed: {e}"));
    match cli.command {
        Command::Solve { problem, io, no_assignment } => {
            let problem = problem.resolve()?;
            let ci = io.load()?;
            let spec = problem.to_spec(ci.n())?;
            let start = Instant::now();
            let text = if no_assignment {
                let sol = solve_value(&ci, &spec)?;
                let elapsed = start.elapsed().as_nanos();
                let report = SolveReport {
                    problem,
                    ci: &ci,
                    value: sol.value,
                    k: matches!(spec.constraint, Constraint::Exact(_)).then_some(sol.k_actual),
                    profile: None,
                    elapsed_ns: io.timing.then_some(elapsed),
                };
                render_solution(&report, io.format())
            } else {
                let sol = solve(&ci, &spec)?;
                let elapsed = start.elapsed().as_nanos();
                let report = SolveReport {
                    problem,
                    ci: &ci,
                    value: sol.value,
                    k: Some(sol.k_actual),
                    profile: Some(&sol.profile),
                    elapsed_ns: io.timing.then_some(elapsed),
                };
                render_solution(&report, io.format())
            };
            out.write_all(text.as_bytes()).map_err(write_failed)?;
        }
        Command::Oracle { problem, io, cap } => {
            let problem = problem.resolve()?;
            let ci = io.load()?;
            let spec = problem.to_spec(ci.n())?;
            let start = Instant::now();
            let sol = oracle_solve_capped(&ci, &spec, cap)?;
            let elapsed = start.elapsed().as_nanos();
            let report = SolveReport {
                problem,
                ci: &ci,
                value: sol.value,
                k: Some(sol.k_actual),
                profile: Some(&sol.profile),
                elapsed_ns: io.timing.then_some(elapsed),
            };
            out.write_all(render_solution(&report, io.format()).as_bytes()).map_err(write_failed)?;
        }
        Command::Verify { n_max, trials, seed } => {
            let report = run_verify(&VerifyConfig::new(n_max, trials, seed))?;
            out.write_all(report.render().as_bytes()).map_err(write_failed)?;
            if !report.passed() {
                return Err(Failure::Run(format!("{} mismatches", report.failures)));
            }
        }
        Command::Gen { kind, n, span, distinct, clusters, seed } => {
            let kind = match kind {
                KindArg::Uniform => GenKind::Uniform,
                KindArg::Duplicates => GenKind::Duplicates,
                KindArg::Clustered => GenKind::Clustered,
            };
            let spec = GenSpec { kind, n, span, distinct_target: distinct, clusters, seed };
            let instance: Instance = generate(&spec)?;
            let header = format!(
                "# linecut gen kind={} n={n} span={span} seed={seed}\n",
                kind.name()
            );
            out.write_all(header.as_bytes()).map_err(write_failed)?;
            out.write_all(render_instance(&instance).as_bytes()).map_err(write_failed)?;
        }
        Command::Bench { sizes, trials, seed } => {
            let outcome = run_bench(&BenchConfig { sizes, trials, seed })?;
            out.write_all(outcome.to_csv().as_bytes()).map_err(write_failed)?;
            for (n, t) in &outcome.medians {
                writeln!(err, "n={n} median_ns={t}").map_err(write_failed)?;
            }
            writeln!(err, "fitted log-log slope: {:.3}", outcome.slope).map_err(write_failed)?;
        }
    }
    Ok(())
}

/// Reads `LINECUT_THREADS`; `None` means automatic.
pub fn threads_from_env() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(t) => Ok(Some(t)),
            Err(_) => Err(format!("{THREADS_ENV} must be a non-negative integer, got `{v}`")),
        },
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn dispatch<I, T>(argv: I, out: &mut (dyn Write + Send), err: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return 1;
        }
    };
    match pool.install(|| run(cli, out, err)) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Run(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}
