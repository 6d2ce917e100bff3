//! Analyses over sequences of persistence diagrams: dissimilarity matrices, the MDS
//! timeline, period clustering, and the perturbation and property experiments.

mod mds;
mod norms;
mod pairwise;
mod periods;
pub mod properties;
pub mod stability;

pub use mds::classical_mds;
pub use norms::{matrix_norm_delta, MatrixNorm, Measure};
pub use pairwise::pairwise_diagram_distances;
pub use periods::{kmeans, kmeans_periods, period_features, split_periods, KMeans, PeriodSegment, TimelineRecord};
pub use properties::{property_suite, PropertyConfig, PropertyReport};
pub use stability::{stability_study, StabilityConfig, StabilityRecord};

use crate::distance::{DiagramDistance, EssentialPolicy};
use crate::error::Result;
use crate::graph::GraphInstance;
use crate::metric::{DistanceMatrix, MetricConfig};
use crate::persistence::{diagrams, Dimensions, PersistenceDiagram, RMax};

/// Everything that determines a diagram-to-diagram distance between two instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramDistanceConfig {
    pub metric: MetricConfig,
    /// Homology dimension compared, 0 or 1.
    pub dim: usize,
    pub distance: DiagramDistance,
    pub essential: EssentialPolicy,
}

impl Default for DiagramDistanceConfig {
    fn default() -> Self {
        Self {
            metric: MetricConfig::default(),
            dim: 0,
            distance: DiagramDistance::wasserstein(2.0, true),
            essential: EssentialPolicy::Drop,
        }
    }
}

/// Embeds `g` and returns its distance matrix with both diagrams (`PD_1` left empty
/// for [`Dimensions::Zero`]).
pub fn embed_and_persist(
    g: &GraphInstance,
    metric: &MetricConfig,
    dims: Dimensions,
) -> Result<(DistanceMatrix, PersistenceDiagram, PersistenceDiagram)> {
    let d = metric.embed(g)?;
    let (pd0, pd1) = diagrams(&d, RMax::Diameter, dims)?;
    Ok((d, pd0, pd1))
}

pub(crate) fn dims_for(dim: usize) -> Dimensions {
    if dim == 0 {
        Dimensions::Zero
    } else {
        Dimensions::Both
    }
}

/// Mixes `tags` into `seed` (SplitMix64 finalizer) so sub-experiments get independent
/// reproducible streams.
pub(crate) fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    tags.iter().fold(mix(seed), |acc, &t| mix(acc ^ mix(t)))
}
