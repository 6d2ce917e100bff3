use super::{PersistenceDiagram, PersistencePoint, RMax};
use crate::error::Result;
use crate::metric::DistanceMatrix;
use crate::union_find::UnionFind;

/// `PD_0` of the Rips filtration as single-linkage merge heights (Kruskal order).
pub fn pd0_single_linkage(d: &DistanceMatrix, r_max: RMax) -> Result<PersistenceDiagram> {
    let r = r_max.resolve(d)?;
    let n = d.len();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for (j, &v) in d.row(i).iter().enumerate().skip(i + 1) {
            if v.is_finite() && v <= r {
                edges.push((v, i, j));
            }
        }
    }
    edges.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut uf = UnionFind::new(n);
    let mut deaths = Vec::with_capacity(n.saturating_sub(1));
    for (v, i, j) in edges {
        if uf.union(i, j) {
            deaths.push(PersistencePoint::new(0.0, v));
            if uf.components() == 1 {
                break;
            }
        }
    }
    Ok(PersistenceDiagram::new(0, deaths, vec![0.0; uf.components()]))
}
