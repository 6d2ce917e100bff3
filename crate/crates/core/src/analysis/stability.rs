//! Edge-deletion stability study: how far diagram distances and raw matrix norms move
//! as a growing share of edges is removed from a baseline graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, dims_for, embed_and_persist, matrix_norm_delta, MatrixNorm, Measure};
use crate::distance::{bottleneck, preprocess, wasserstein, EssentialPolicy};
use crate::error::{Error, Result};
use crate::graph::{generate_gnm, perturb_delete_edges, GraphInstance, PerturbationSpec};
use crate::metric::MetricConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityConfig {
    /// Percent of edges deleted at each step.
    pub steps: Vec<u32>,
    pub repetitions: usize,
    pub metric: MetricConfig,
    pub dim: usize,
    pub q: f64,
    pub apply_root: bool,
    pub essential: EssentialPolicy,
    pub seed: u64,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            steps: (1..=20).collect(),
            repetitions: 20,
            metric: MetricConfig::default(),
            dim: 0,
            q: 2.0,
            apply_root: true,
            essential: EssentialPolicy::Drop,
            seed: 7,
        }
    }
}

impl StabilityConfig {
    /// Edge deletion behind record `(step, repetition)`.
    pub fn deletion(&self, step: u32, repetition: usize) -> PerturbationSpec {
        PerturbationSpec::random(step as f64, derive_seed(self.seed, &[repetition as u64]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilityRecord {
    pub step: u32,
    /// 1-based.
    pub repetition: usize,
    pub bottleneck: f64,
    pub wasserstein: f64,
    pub max_norm: Measure,
    pub frobenius: Measure,
}

/// Runs every `(step, repetition)` pair against the baseline `g0`, which must be
/// connected. Each repetition is one progressive deletion run: all its steps share a
/// seed, so a larger step deletes a superset of the edges of a smaller one. Records come back ordered by
/// step, then repetition.
pub fn stability_study(g0: &GraphInstance, cfg: &StabilityConfig) -> Result<Vec<StabilityRecord>> {
    if !g0.is_connected() {
        return Err(Error::Disconnected);
    }
    let dims = dims_for(cfg.dim);
    let pick = |pd0, pd1| if cfg.dim == 0 { pd0 } else { pd1 };
    let (d0, pd0, pd1) = embed_and_persist(g0, &cfg.metric, dims)?;
    let base = pick(pd0, pd1);

    let work: Vec<(u32, usize)> = cfg.steps.iter().flat_map(|&s| (1..=cfg.repetitions).map(move |r| (s, r))).collect();
    let runs = work
        .par_iter()
        .map(|&(step, repetition)| {
            let g = perturb_delete_edges(g0, &cfg.deletion(step, repetition))?;
            let (d, pd0, pd1) = embed_and_persist(&g, &cfg.metric, dims)?;
            Ok((
                pick(pd0, pd1),
                matrix_norm_delta(&d, &d0, MatrixNorm::Max)?,
                matrix_norm_delta(&d, &d0, MatrixNorm::Frobenius)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let policy = cfg.essential.resolve(std::iter::once(&base).chain(runs.iter().map(|r| &r.0)));
    let base = preprocess(&base, policy)?;
    work.par_iter()
        .zip(&runs)
        .map(|(&(step, repetition), (pd, max_norm, frobenius))| {
            let points = preprocess(pd, policy)?;
            Ok(StabilityRecord {
                step,
                repetition,
                bottleneck: bottleneck(&base, &points),
                wasserstein: wasserstein(&base, &points, cfg.q, cfg.apply_root),
                max_norm: *max_norm,
                frobenius: *frobenius,
            })
        })
        .collect()
}

/// Seeded `G(554, 2276)` baseline with weights in `(0.1, 1)`, standing in for a real
/// graph of the same size. Reseeds deterministically until the sample is connected.
pub fn surrogate_baseline(seed: u64) -> Result<GraphInstance> {
    for attempt in 0u64.. {
        let g = generate_gnm(554, 2276, (0.1, 1.0), derive_seed(seed, &[attempt]))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    unreachable!()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityMeasure {
    Bottleneck,
    Wasserstein,
    MaxNorm,
    Frobenius,
}

impl StabilityMeasure {
    pub const ALL: [Self; 4] = [Self::Bottleneck, Self::Wasserstein, Self::MaxNorm, Self::Frobenius];

    pub fn of(self, r: &StabilityRecord) -> Measure {
        match self {
            Self::Bottleneck => Measure::Value(r.bottleneck),
            Self::Wasserstein => Measure::Value(r.wasserstein),
            Self::MaxNorm => r.max_norm,
            Self::Frobenius => r.frobenius,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bottleneck => "bottleneck",
            Self::Wasserstein => "wasserstein",
            Self::MaxNorm => "max-norm",
            Self::Frobenius => "frobenius",
        }
    }
}

/// Largest defined value of `measure` over all records (0 if none).
pub fn observed_max(records: &[StabilityRecord], measure: StabilityMeasure) -> f64 {
    records.iter().filter_map(|r| measure.of(r).value()).fold(0.0, f64::max)
}

/// `measure` divided by its observed maximum; undefined values stay undefined.
pub fn normalized(records: &[StabilityRecord], measure: StabilityMeasure) -> Vec<Measure> {
    let max = observed_max(records, measure);
    records
        .iter()
        .map(|r| match measure.of(r) {
            Measure::Value(v) if max > 0.0 => Measure::Value(v / max),
            other => other,
        })
        .collect()
}

/// Box-plot statistics of one measure at one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepSummary {
    pub step: u32,
    pub measure: StabilityMeasure,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub undefined: usize,
}

impl StepSummary {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

/// Linear-interpolation quantile of sorted data.
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = p * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Per-step quartiles of the normalized measure.
pub fn summarize(records: &[StabilityRecord], measure: StabilityMeasure) -> Vec<StepSummary> {
    let values = normalized(records, measure);
    let mut steps: Vec<u32> = records.iter().map(|r| r.step).collect();
    steps.dedup();
    steps
        .into_iter()
        .map(|step| {
            let mut defined = Vec::new();
            let mut undefined = 0;
            for (r, v) in records.iter().zip(&values) {
                if r.step != step {
                    continue;
                }
                match v.value() {
                    Some(x) => defined.push(x),
                    None => undefined += 1,
                }
            }
            defined.sort_by(f64::total_cmp);
            StepSummary {
                step,
                measure,
                q1: quantile(&defined, 0.25),
                median: quantile(&defined, 0.5),
                q3: quantile(&defined, 0.75),
                undefined,
            }
        })
        .collect()
}
