//! The JSON bundle consumed by the viewer, and CSV writers for experiment results.
//!
//! Floating-point numbers in the bundle are written with 17 significant digits, which
//! round-trips every `f64` and does not depend on the shortest-representation algorithm.

use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};

use crate::analysis::stability::{normalized, StabilityMeasure};
use crate::analysis::{PeriodSegment, StabilityRecord};
use crate::error::Result;
use crate::graph::{Edge, Vertex};
use crate::metric::format_entry;
use crate::persistence::PersistenceDiagram;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExportBundle {
    pub schema_version: u32,
    pub dataset: DatasetMeta,
    pub config: ConfigEcho,
    pub instances: Vec<InstanceExport>,
    /// Pairwise diagram distances between instances, row major by instance order.
    pub distances: Vec<Vec<f64>>,
    pub periods: Vec<PeriodSegment>,
    pub clustering: Option<ClusteringExport>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub source: String,
    pub format: String,
    pub events: usize,
    pub dropped_events: usize,
    pub vertices: usize,
    pub window_length: f64,
    pub overlap: f64,
    pub stride: f64,
}

/// Every setting that influenced the bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub metric: String,
    pub weight_scheme: String,
    pub eigenvectors: String,
    pub dim: usize,
    pub distance: String,
    /// Wasserstein exponent; absent for the bottleneck distance.
    pub q: Option<f64>,
    pub apply_root: bool,
    pub essential: String,
    pub period_length: usize,
    pub k: usize,
    pub mds_dims: usize,
    pub seed: u64,
    pub time_scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceExport {
    pub id: usize,
    pub window: (f64, f64),
    pub midpoint: f64,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub components: usize,
    /// Eigenpairs used for commute-time distance.
    pub eigenpairs: Option<usize>,
    pub diagrams: DiagramPair,
    pub mds: Vec<f64>,
    pub period: usize,
    pub cluster: Option<usize>,
    pub hour_of_day: u32,
    pub day_of_week: u32,
}

/// Essential classes are listed by birth only, so the JSON never needs an infinity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramPair {
    pub dim0: PersistenceDiagram,
    pub dim1: PersistenceDiagram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringExport {
    pub k: usize,
    /// Cluster of each full period, in period order.
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
}

struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Writes `value` as compact JSON with 17 significant digits per float.
pub fn write_json<T: Serialize, W: Write>(value: &T, w: W) -> Result<()> {
    let mut ser = serde_json::Serializer::with_formatter(w, FixedDigits);
    value.serialize(&mut ser)?;
    Ok(())
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    write_json(value, &mut out)?;
    Ok(out)
}

pub fn write_bundle<W: Write>(bundle: &ExportBundle, mut w: W) -> Result<()> {
    write_json(bundle, &mut w)?;
    w.write_all(b"\n")?;
    Ok(())
}

pub fn read_bundle<R: Read>(r: R) -> Result<ExportBundle> {
    Ok(serde_json::from_reader(r)?)
}

/// Square CSV of a dense matrix, `inf` for infinite entries.
pub fn write_matrix_csv<W: Write>(rows: &[Vec<f64>], mut w: W) -> io::Result<()> {
    for row in rows {
        let line: Vec<String> = row.iter().map(|&v| format_entry(v)).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

/// Long-format stability results: one row per record and measure, with the raw value
/// and the value normalized by that measure's observed maximum. Undefined values are
/// written as `undefined`.
pub fn write_stability_csv<W: Write>(records: &[StabilityRecord], config: &str, mut w: W) -> io::Result<()> {
    writeln!(w, "config,step,repetition,measure,value,normalized")?;
    for measure in StabilityMeasure::ALL {
        let norm = normalized(records, measure);
        for (r, n) in records.iter().zip(&norm) {
            writeln!(w, "{config},{},{},{},{},{}", r.step, r.repetition, measure.name(), measure.of(r), n)?;
        }
    }
    Ok(())
}
