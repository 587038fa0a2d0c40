//! Exact optimal cuts, partitions and bisections of finite point multisets on
//! the real line.
//!
//! The cut value of a split of the points into two sets is the sum of
//! `|x - y|` over all pairs with `x` and `y` in different sets. [`solver`]
//! finds a split that maximizes it (optionally with a fixed first-set size `k`)
//! or minimizes it for a fixed `k`, exactly, in polynomial time.
//!
//! ```
//! use linecut::{solve, CompressedInstance, Instance, Objective, ProblemSpec};
//!
//! let points = Instance::from_integers(vec![0, 1, 2, 3]).unwrap();
//! let ci = CompressedInstance::compress(&points).unwrap();
//! let best = solve(&ci, &ProblemSpec::exact(Objective::Max, 2)).unwrap();
//! assert_eq!(best.value.get(), 8);
//! let worst = solve(&ci, &ProblemSpec::exact(Objective::Min, 2)).unwrap();
//! assert_eq!(worst.value.get(), 6);
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod format;
pub mod gen;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    cut_value_naive, cut_value_sweep, CompressedInstance, Constraint, CountProfile, CutValue,
    Instance, Objective, Problem, ProblemSpec,
};
pub use oracle::{best_threshold, oracle_solve};
pub use solver::{solve, solve_value, Solution, ValueOnly};
