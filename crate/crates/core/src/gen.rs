//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `ChaCha8Rng::seed_from_u64`, with integer ranges drawn through `rand` 0.8's
//! `gen_range`. Both are value-stable, so a spec always yields the same
//! coordinates in the same order on every platform.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, MAX_ABS_SCALED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `n` i.i.d. integers uniform on `[0, span]`.
    Uniform,
    /// `distinct_target` distinct values with a random composition of `n` as multiplicities.
    Duplicates,
    /// Points within `span / 1000` of uniformly placed cluster centers.
    Clustered,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::Uniform => "uniform",
            GenKind::Duplicates => "duplicates",
            GenKind::Clustered => "clustered",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub span: i64,
    /// Number of distinct values for [`GenKind::Duplicates`]; defaults to `max(1, n / 4)`.
    pub distinct_target: Option<usize>,
    pub clusters: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn uniform(n: usize, span: i64, seed: u64) -> Self {
        Self { kind: GenKind::Uniform, n, span, distinct_target: None, clusters: 1, seed }
    }

    pub fn duplicates(n: usize, span: i64, distinct: usize, seed: u64) -> Self {
        Self { kind: GenKind::Duplicates, n, span, distinct_target: Some(distinct), clusters: 1, seed }
    }

    pub fn clustered(n: usize, span: i64, clusters: usize, seed: u64) -> Self {
        Self { kind: GenKind::Clustered, n, span, distinct_target: None, clusters, seed }
    }

    fn distinct(&self) -> usize {
        self.distinct_target.unwrap_or((self.n / 4).max(1))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidGenSpec(msg));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.span < 1 || self.span > MAX_ABS_SCALED {
            return bad(format!("span must be in 1..=2^40, got {}", self.span));
        }
        if self.clusters == 0 {
            return bad("clusters must be at least 1".into());
        }
        if self.kind == GenKind::Duplicates {
            let l = self.distinct();
            if l == 0 || l > self.n {
                return bad(format!("distinct target {l} must be in 1..={}", self.n));
            }
            if l as u128 > self.span as u128 + 1 {
                return bad(format!("cannot place {l} distinct values in [0, {}]", self.span));
            }
        }
        Ok(())
    }
}

pub fn generate(spec: &GenSpec) -> Result<Instance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let coords = match spec.kind {
        GenKind::Uniform => (0..spec.n).map(|_| rng.gen_range(0..=spec.span)).collect(),
        GenKind::Duplicates => duplicates(spec, &mut rng),
        GenKind::Clustered => {
            let centers: Vec<i64> =
                (0..spec.clusters).map(|_| rng.gen_range(0..=spec.span)).collect();
            let width = spec.span / 1000;
            (0..spec.n)
                .map(|_| {
                    let c = centers[rng.gen_range(0..centers.len())];
                    (c + rng.gen_range(-width..=width)).clamp(0, spec.span)
                })
                .collect()
        }
    };
    Instance::from_integers(coords)
}

fn duplicates(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<i64> {
    let l = spec.distinct();
    let mut values: Vec<i64> = index::sample(rng, spec.span as usize + 1, l)
        .into_iter()
        .map(|v| v as i64)
        .collect();
    values.sort_unstable();
    // Random composition of n into l positive parts: l - 1 cut points in 1..n.
    let mut cuts: Vec<usize> = if l > 1 {
        index::sample(rng, spec.n - 1, l - 1).into_iter().map(|c| c + 1).collect()
    } else {
        Vec::new()
    };
    cuts.sort_unstable();
    cuts.push(spec.n);
    let mut coords = Vec::with_capacity(spec.n);
    let mut start = 0;
    for (&v, &end) in values.iter().zip(&cuts) {
        coords.extend(std::iter::repeat_n(v, end - start));
        start = end;
    }
    coords.shuffle(rng);
    coords
}
