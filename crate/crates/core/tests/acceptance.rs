//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; the process exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use linecut::bench::{run_bench, BenchConfig};
use linecut::gen::{generate, GenSpec};
use linecut::oracle::best_threshold;
use linecut::verify::{run_verify, VerifyConfig};
use linecut::{
    cut_value_naive, cut_value_sweep, solve, CompressedInstance, CountProfile, Instance, Objective,
    Problem, ProblemSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed < Duration::from_secs(limit_s), || {
        format!("took {:.1}s, limit {limit_s}s", elapsed.as_secs_f64())
    })
}

fn ci_of(xs: &[i64]) -> CompressedInstance {
    CompressedInstance::compress(&Instance::from_integers(xs.to_vec()).unwrap()).unwrap()
}

fn transformed(ci: &CompressedInstance, f: impl Fn(i64) -> i64) -> CompressedInstance {
    let counts: Vec<(i64, usize)> = ci.xs().iter().zip(ci.mult()).map(|(&x, &m)| (f(x), m)).collect();
    CompressedInstance::from_counts(&counts, ci.scale_exp()).unwrap()
}

/// Mixed-generator instance with `1 <= n <= n_max`.
fn random_instance(rng: &mut ChaCha8Rng, n_max: usize) -> CompressedInstance {
    let n = rng.gen_range(1..=n_max);
    let spans = [5i64, 50, 1_000, 1_000_000];
    let span = spans[rng.gen_range(0..spans.len())];
    let seed = rng.gen();
    let spec = match rng.gen_range(0..3) {
        0 => GenSpec::uniform(n, span, seed),
        1 => GenSpec::duplicates(n, span, rng.gen_range(1..=n.min(span as usize + 1)), seed),
        _ => GenSpec::clustered(n, span, rng.gen_range(1..=4), seed),
    };
    CompressedInstance::compress(&generate(&spec).unwrap()).unwrap()
}

fn value(ci: &CompressedInstance, spec: ProblemSpec) -> i128 {
    solve(ci, &spec).unwrap().value.get()
}

// 1. Solver equals exhaustive enumeration on every problem for n <= 8.
fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = run_verify(&VerifyConfig::new(8, 500, 7)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed(), || report.render())?;
    within(elapsed, 60)?;
    Ok(format!("{} problems, 0 mismatches, {:.1}s", report.problems, elapsed.as_secs_f64()))
}

// 2. Gap sweep equals the pairwise definition.
fn evaluator_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..10_000 {
        let ci = random_instance(&mut rng, 40);
        let a = CountProfile::new(ci.mult().iter().map(|&m| rng.gen_range(0..=m)).collect());
        let (s, n) = (cut_value_sweep(&ci, &a).unwrap(), cut_value_naive(&ci, &a).unwrap());
        ensure(s == n, || format!("case {case}: sweep {s} != naive {n}"))?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("10000 pairs, {:.2}s", start.elapsed().as_secs_f64()))
}

// 3. Reconstructed profiles re-evaluate to the reported optimum.
fn reconstruction_consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..1_000 {
        let ci = random_instance(&mut rng, 200);
        let n = ci.n();
        let problem = match case % 5 {
            0 => Problem::MaxCut,
            1 => Problem::MaxBisection,
            2 => Problem::MinBisection,
            3 => Problem::MaxPartition(rng.gen_range(0..=n as i64)),
            _ => Problem::MinPartition(rng.gen_range(0..=n as i64)),
        };
        let spec = match problem.to_spec(n) {
            Ok(spec) => spec,
            // odd n: bisection on the instance minus its largest point
            Err(_) => {
                let mut counts: Vec<(i64, usize)> = ci.xs().iter().copied().zip(ci.mult().iter().copied()).collect();
                counts.last_mut().unwrap().1 -= 1;
                let trimmed = CompressedInstance::from_counts(&counts, 0);
                let Ok(trimmed) = trimmed else { continue };
                let spec = problem.to_spec(trimmed.n()).unwrap();
                let sol = solve(&trimmed, &spec).unwrap();
                let check = cut_value_sweep(&trimmed, &sol.profile).unwrap();
                ensure(check == sol.value, || format!("case {case}: {check} != {}", sol.value))?;
                continue;
            }
        };
        let sol = solve(&ci, &spec).unwrap();
        let check = cut_value_sweep(&ci, &sol.profile).unwrap();
        ensure(check == sol.value, || format!("case {case}: {check} != {}", sol.value))?;
    }
    within(start.elapsed(), 120)?;
    Ok(format!("1000 solves, {:.1}s", start.elapsed().as_secs_f64()))
}

// 4. Small instances checkable by hand.
fn anchors() -> Outcome {
    let max = |k| ProblemSpec::exact(Objective::Max, k);
    let min = |k| ProblemSpec::exact(Objective::Min, k);
    let checks = [
        ("{0,1,2} max-cut", value(&ci_of(&[0, 1, 2]), ProblemSpec::max_cut()), 3),
        ("{0,1,2,3} max-bisection", value(&ci_of(&[0, 1, 2, 3]), max(2)), 8),
        ("{0,1,2,3} min-bisection", value(&ci_of(&[0, 1, 2, 3]), min(2)), 6),
        ("{0,0,0,1} max-cut", value(&ci_of(&[0, 0, 0, 1]), ProblemSpec::max_cut()), 3),
    ];
    for (name, got, want) in checks {
        ensure(got == want, || format!("{name}: got {got}, want {want}"))?;
    }
    let fives = ci_of(&[5, 5, 5]);
    let mut specs = vec![ProblemSpec::max_cut()];
    for k in 0..=3 {
        specs.push(max(k));
        specs.push(min(k));
    }
    for spec in specs {
        let v = value(&fives, spec);
        ensure(v == 0, || format!("{{5,5,5}} {spec:?}: got {v}"))?;
    }
    Ok("all exact".into())
}

// 5. Translation, scaling, reflection and side-swap.
fn invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..200 {
        let ci = random_instance(&mut rng, 100);
        let n = ci.n() as i64;
        let k = rng.gen_range(0..=n);
        let specs = [
            ProblemSpec::max_cut(),
            ProblemSpec::exact(Objective::Max, k),
            ProblemSpec::exact(Objective::Min, k),
        ];
        let variants = [
            ("shift +1e6", transformed(&ci, |x| x + 1_000_000), 1),
            ("shift -1e6", transformed(&ci, |x| x - 1_000_000), 1),
            ("scale 7", transformed(&ci, |x| 7 * x), 7),
            ("reflect", transformed(&ci, |x| -x), 1),
        ];
        for spec in specs {
            let base = value(&ci, spec);
            for (name, other, factor) in &variants {
                let got = value(other, spec);
                ensure(got == base * factor, || format!("case {case} {name} {spec:?}: {got} vs {base}"))?;
            }
        }
        for objective in [Objective::Max, Objective::Min] {
            let a = value(&ci, ProblemSpec::exact(objective, k));
            let b = value(&ci, ProblemSpec::exact(objective, n - k));
            ensure(a == b, || format!("case {case} {objective:?}: value({k}) = {a}, value({}) = {b}", n - k))?;
        }
    }
    Ok("200 instances".into())
}

// 6. max-cut equals the best max-partition over all k.
fn decomposition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..100 {
        let ci = random_instance(&mut rng, 60);
        let cut = value(&ci, ProblemSpec::max_cut());
        let best = (0..=ci.n() as i64).map(|k| value(&ci, ProblemSpec::exact(Objective::Max, k))).max().unwrap();
        ensure(cut == best, || format!("case {case}: max-cut {cut}, best partition {best}"))?;
    }
    Ok("100 instances".into())
}

// 7. Empirical growth on all-distinct inputs.
fn complexity() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let config = BenchConfig { sizes: vec![100, 200, 400], trials: 5, seed: 7 };
    let outcome = pool.install(|| run_bench(&config)).map_err(|e| e.to_string())?;
    let (_, t400) = *outcome.medians.last().unwrap();
    ensure((2.5..=4.0).contains(&outcome.slope), || format!("slope {:.3} outside [2.5, 4.0]", outcome.slope))?;
    ensure(t400 < 30_000_000_000, || format!("n=400 took {} ns", t400))?;
    Ok(format!("slope {:.3}, n=400 median {:.3}s", outcome.slope, t400 as f64 * 1e-9))
}

// 8. DP never loses to the best threshold cut, and beats it for some MIN instance.
fn baseline_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut strict_min = 0usize;
    for case in 0..500 {
        let ci = random_instance(&mut rng, 30);
        let mut specs = vec![ProblemSpec::max_cut()];
        for k in 0..=ci.n() as i64 {
            specs.push(ProblemSpec::exact(Objective::Max, k));
            specs.push(ProblemSpec::exact(Objective::Min, k));
        }
        for spec in specs {
            let dp = value(&ci, spec);
            let th = best_threshold(&ci, &spec).unwrap().value.get();
            match spec.objective {
                Objective::Max => ensure(dp >= th, || format!("case {case} {spec:?}: dp {dp} < threshold {th}"))?,
                Objective::Min => {
                    ensure(dp <= th, || format!("case {case} {spec:?}: dp {dp} > threshold {th}"))?;
                    strict_min += usize::from(dp < th);
                }
            }
        }
    }
    let anchor = ci_of(&[0, 1, 2, 3]);
    let spec = ProblemSpec::exact(Objective::Min, 2);
    let (dp, th) = (value(&anchor, spec), best_threshold(&anchor, &spec).unwrap().value.get());
    ensure(dp == 6 && th == 8, || format!("{{0,1,2,3}} min-bisection: dp {dp}, threshold {th}"))?;
    Ok(format!("500 instances, {strict_min} strict MIN improvements, {{0,1,2,3}}: 6 < 8"))
}

// 9. Byte-identical stdout across runs and thread counts.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let big = dir.path().join("big.txt");
    let small = dir.path().join("small.txt");
    let run = |args: &[&str], threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_linecut"))
            .args(args)
            .env("LINECUT_THREADS", threads)
            .output()
            .expect("spawn linecut")
    };
    let gen_big = run(&["gen", "--kind", "duplicates", "--n", "300", "--span", "100000", "--distinct", "150", "--seed", "9"], "1");
    std::fs::write(&big, &gen_big.stdout).unwrap();
    let gen_small = run(&["gen", "--kind", "duplicates", "--n", "16", "--span", "30", "--distinct", "6", "--seed", "9"], "1");
    std::fs::write(&small, &gen_small.stdout).unwrap();
    let (big, small) = (big.to_str().unwrap(), small.to_str().unwrap());

    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "--kind", "clustered", "--n", "200", "--clusters", "5", "--seed", "3"],
        vec!["solve", "--problem", "max-cut", "--input", big, "--output", "json"],
        vec!["solve", "--problem", "min-bisection", "--input", big, "--output", "json"],
        vec!["solve", "--problem", "max-partition", "--k", "77", "--input", big],
        vec!["solve", "--problem", "min-partition", "--k", "120", "--input", big, "--no-assignment"],
        vec!["oracle", "--problem", "min-bisection", "--input", small, "--output", "json"],
        vec!["verify", "--n-max", "8", "--trials", "100", "--seed", "5"],
        vec!["bench", "--sizes", "50,80", "--trials", "2", "--seed", "1"],
    ];
    // the elapsed_ns column of bench output is a measurement
    let strip_timing = |s: &[u8]| -> String {
        String::from_utf8_lossy(s)
            .lines()
            .map(|l| {
                let mut cols: Vec<&str> = l.split(',').collect();
                if cols.len() == 7 {
                    cols[5] = "_";
                }
                cols.join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    for args in &commands {
        let outputs: Vec<_> = ["1", "1", "8", "8"].iter().map(|t| run(args, t)).collect();
        for o in &outputs {
            ensure(o.status.success(), || format!("{args:?} failed: {}", String::from_utf8_lossy(&o.stderr)))?;
        }
        let first = if args[0] == "bench" { strip_timing(&outputs[0].stdout) } else { String::from_utf8_lossy(&outputs[0].stdout).into() };
        for o in &outputs[1..] {
            let other = if args[0] == "bench" { strip_timing(&o.stdout) } else { String::from_utf8_lossy(&o.stdout).into() };
            ensure(first == other, || format!("{args:?}: stdout differs between runs"))?;
        }
    }
    Ok(format!("{} commands x 4 runs (threads 1,1,8,8)", commands.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 evaluator agreement", evaluator_agreement),
        ("3 reconstruction consistency", reconstruction_consistency),
        ("4 hand-checkable anchors", anchors),
        ("5 invariance suite", invariance),
        ("6 decomposition", decomposition),
        ("7 complexity", complexity),
        ("8 baseline bounds", baseline_bounds),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
