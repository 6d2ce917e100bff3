//! Rips filtrations and their 0- and 1-dimensional persistence diagrams.

mod barcode;
mod cohomology;
mod filtration;
mod reduction;
mod single_linkage;

pub use barcode::{barcode, Bar, Barcode};
pub use cohomology::pd1_cohomology;
pub use filtration::{rips_filtration, Filtration, RMax, Simplex};
pub use reduction::compute_persistence;
pub use single_linkage::pd0_single_linkage;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metric::{format_entry, DistanceMatrix};

/// A finite `(birth, death)` pair with `death > birth`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PersistencePoint {
    pub birth: f64,
    pub death: f64,
}

impl PersistencePoint {
    pub fn new(birth: f64, death: f64) -> Self {
        Self { birth, death }
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }
}

/// Diagram of one homological dimension: finite points plus births of classes that
/// never die.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PersistenceDiagram {
    pub dim: usize,
    pub finite: Vec<PersistencePoint>,
    pub essential: Vec<f64>,
}

impl PersistenceDiagram {
    pub fn new(dim: usize, mut finite: Vec<PersistencePoint>, mut essential: Vec<f64>) -> Self {
        finite.retain(|p| p.death > p.birth);
        finite.sort_by(|a, b| a.birth.total_cmp(&b.birth).then(a.death.total_cmp(&b.death)));
        essential.sort_by(f64::total_cmp);
        Self { dim, finite, essential }
    }

    pub fn point_count(&self) -> usize {
        self.finite.len() + self.essential.len()
    }

    pub fn is_empty(&self) -> bool {
        self.point_count() == 0
    }
}

/// CSV rows `dim,birth,death`, `inf` for essential classes.
pub fn write_diagrams_csv<W: Write>(diagrams: &[&PersistenceDiagram], mut w: W) -> std::io::Result<()> {
    writeln!(w, "dim,birth,death")?;
    for pd in diagrams {
        for p in &pd.finite {
            writeln!(w, "{},{},{}", pd.dim, format_entry(p.birth), format_entry(p.death))?;
        }
        for &b in &pd.essential {
            writeln!(w, "{},{},inf", pd.dim, format_entry(b))?;
        }
    }
    Ok(())
}

/// Which homology dimensions to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimensions {
    /// Only `PD_0`, via single linkage.
    Zero,
    /// `PD_0` via single linkage and `PD_1` via coboundary reduction.
    Both,
}

/// `PD_0` and (when requested) `PD_1` of the Rips filtration of `d`.
///
/// Uses the single-linkage and coboundary fast paths; [`compute_persistence`] is the
/// plain boundary reduction. With [`Dimensions::Zero`], `PD_1` is returned empty.
pub fn diagrams(d: &DistanceMatrix, r_max: RMax, dims: Dimensions) -> Result<(PersistenceDiagram, PersistenceDiagram)> {
    match dims {
        Dimensions::Zero => Ok((pd0_single_linkage(d, r_max)?, PersistenceDiagram { dim: 1, ..Default::default() })),
        Dimensions::Both => Ok((pd0_single_linkage(d, r_max)?, pd1_cohomology(d, r_max)?)),
    }
}
