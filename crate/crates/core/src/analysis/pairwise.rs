use rayon::prelude::*;

use crate::distance::{preprocess, DiagramDistance, EssentialPolicy};
use crate::error::Result;
use crate::persistence::PersistenceDiagram;

/// Symmetric matrix of diagram distances with zero diagonal. A `CapAtMax` policy is
/// resolved over the whole collection.
///
/// Pairs are evaluated on the current rayon pool and written back by index, so the result
/// does not depend on scheduling.
pub fn pairwise_diagram_distances(
    diagrams: &[PersistenceDiagram],
    distance: DiagramDistance,
    policy: EssentialPolicy,
) -> Result<Vec<Vec<f64>>> {
    let policy = policy.resolve(diagrams);
    let points = diagrams.iter().map(|pd| preprocess(pd, policy)).collect::<Result<Vec<_>>>()?;
    let n = points.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let values: Vec<f64> = pairs.par_iter().map(|&(i, j)| distance.eval(&points[i], &points[j])).collect();

    let mut out = vec![vec![0.0; n]; n];
    for (&(i, j), &v) in pairs.iter().zip(&values) {
        out[i][j] = v;
        out[j][i] = v;
    }
    Ok(out)
}
