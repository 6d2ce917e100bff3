use serde::{Deserialize, Serialize};

use super::PersistenceDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub dim: usize,
    pub start: f64,
    pub end: f64,
    /// Essential class drawn up to `r_max`.
    pub open: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Barcode {
    pub bars: Vec<Bar>,
}

/// One bar per diagram point, sorted by `(dim, start, end)`; essentials end at `r_max`.
pub fn barcode(pd: &PersistenceDiagram, r_max: f64) -> Barcode {
    let mut bars: Vec<Bar> = pd
        .finite
        .iter()
        .map(|p| Bar { dim: pd.dim, start: p.birth, end: p.death, open: false })
        .chain(pd.essential.iter().map(|&b| Bar { dim: pd.dim, start: b, end: r_max, open: true }))
        .collect();
    bars.sort_by(|a, b| {
        a.dim.cmp(&b.dim).then(a.start.total_cmp(&b.start)).then(a.end.total_cmp(&b.end)).then(a.open.cmp(&b.open))
    });
    Barcode { bars }
}
