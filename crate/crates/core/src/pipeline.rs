//! End-to-end run: ingest a temporal edge stream, embed and persist every window, compare
//! the diagrams, lay them out with MDS, split into periods, cluster, and assemble the
//! export bundle.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;

use crate::analysis::{
    classical_mds, embed_and_persist, kmeans_periods, pairwise_diagram_distances, split_periods, DiagramDistanceConfig,
    TimelineRecord,
};
use crate::distance::DiagramDistance;
use crate::error::Result;
use crate::export::{
    write_bundle, write_matrix_csv, ClusteringExport, ConfigEcho, DatasetMeta, DiagramPair, ExportBundle,
    InstanceExport, SCHEMA_VERSION,
};
use crate::graph::io::{read_categories, read_stream, ParsedStream, StreamFormat};
use crate::graph::{ingest_temporal_edges, IngestConfig};
use crate::metric::{DistanceMatrix, MetricConfig};
use crate::persistence::{write_diagrams_csv, Dimensions, PersistenceDiagram};

const SECONDS_PER_HOUR: f64 = 3600.0;
const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub format: StreamFormat,
    pub ingest: IngestConfig,
    pub comparison: DiagramDistanceConfig,
    pub period_length: usize,
    pub k: usize,
    pub mds_dims: usize,
    pub seed: u64,
    /// Seconds per unit of event time, used for the hour-of-day and day-of-week keys
    /// (times are read as offsets from the Unix epoch).
    pub time_scale: f64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            format: StreamFormat::Generic,
            ingest: IngestConfig::new(SECONDS_PER_DAY, 0.45),
            comparison: DiagramDistanceConfig::default(),
            period_length: 7,
            k: 2,
            mds_dims: 2,
            seed: 7,
            time_scale: 1.0,
        }
    }
}

/// The bundle plus the per-instance artifacts that only go to optional sidecars.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub bundle: ExportBundle,
    pub matrices: Vec<DistanceMatrix>,
}

/// Reads a stream file and an optional `vertex category` sidecar; sidecar entries win
/// over categories carried by the stream itself.
pub fn load_stream(path: &Path, format: StreamFormat, categories: Option<&Path>) -> Result<ParsedStream> {
    let mut parsed = read_stream(BufReader::new(File::open(path)?), format)?;
    if let Some(c) = categories {
        parsed.categories.extend(read_categories(BufReader::new(File::open(c)?))?);
    }
    Ok(parsed)
}

/// `(hour_of_day, day_of_week)` with Monday = 0, for `seconds` since the Unix epoch.
pub fn calendar_keys(seconds: f64) -> (u32, u32) {
    let hour = (seconds / SECONDS_PER_HOUR).floor().rem_euclid(24.0) as u32;
    // 1970-01-01 was a Thursday.
    let day = ((seconds / SECONDS_PER_DAY).floor() + 3.0).rem_euclid(7.0) as u32;
    (hour, day)
}

pub fn run_pipeline(stream: ParsedStream, source: &str, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let mut ingest = cfg.ingest.clone();
    ingest.categories.extend(stream.categories);
    let tvg = ingest_temporal_edges(&stream.events, &ingest)?;
    let mut warnings = Vec::new();
    if tvg.dropped_events > 0 {
        warnings.push(format!("dropped {} self-loop or non-positive-weight events", tvg.dropped_events));
    }

    let persisted = tvg
        .instances
        .par_iter()
        .map(|g| embed_and_persist(g, &cfg.comparison.metric, Dimensions::Both))
        .collect::<Result<Vec<_>>>()?;
    for g in &tvg.instances {
        let components = g.component_count();
        if components > 1 {
            warnings.push(format!(
                "instance {} is disconnected ({components} components); unreachable pairs never enter the filtration and essential classes follow the `{}` policy",
                g.id, cfg.comparison.essential
            ));
        }
    }

    let compared: Vec<PersistenceDiagram> =
        persisted.iter().map(|(_, pd0, pd1)| if cfg.comparison.dim == 0 { pd0.clone() } else { pd1.clone() }).collect();
    let distances = pairwise_diagram_distances(&compared, cfg.comparison.distance, cfg.comparison.essential)?;
    let mds = classical_mds(&distances, cfg.mds_dims)?;

    let segments = split_periods(tvg.len(), cfg.period_length)?;
    let mut records: Vec<TimelineRecord> = tvg
        .instances
        .iter()
        .zip(&mds)
        .enumerate()
        .map(|(i, (g, coords))| {
            let midpoint = 0.5 * (g.window.0 + g.window.1);
            let (hour_of_day, day_of_week) = calendar_keys(midpoint * cfg.time_scale);
            TimelineRecord {
                id: g.id,
                midpoint,
                mds: coords.clone(),
                period: i / cfg.period_length,
                cluster: None,
                hour_of_day,
                day_of_week,
            }
        })
        .collect();

    let full = segments.iter().filter(|s| !s.partial).count();
    let clustering = if cfg.k == 0 || cfg.k > full {
        warnings.push(format!(
            "clustering skipped: k = {} but {full} full period(s) of length {}",
            cfg.k, cfg.period_length
        ));
        None
    } else {
        let km = kmeans_periods(&records, &segments, cfg.k, cfg.seed)?;
        for (segment, &cluster) in segments.iter().filter(|s| !s.partial).zip(&km.assignments) {
            for r in &mut records[segment.start..segment.end] {
                r.cluster = Some(cluster);
            }
        }
        Some(ClusteringExport { k: cfg.k, inertia: km.inertia(), assignments: km.assignments, centroids: km.centroids })
    };

    let mut matrices = Vec::with_capacity(persisted.len());
    let instances = tvg
        .instances
        .iter()
        .zip(persisted)
        .zip(records)
        .map(|((g, (d, pd0, pd1)), r)| {
            let eigenpairs = d.eigenpairs;
            matrices.push(d);
            InstanceExport {
                id: g.id,
                window: g.window,
                midpoint: r.midpoint,
                vertices: g.vertices().to_vec(),
                edges: g.edges().to_vec(),
                components: g.component_count(),
                eigenpairs,
                diagrams: DiagramPair { dim0: pd0, dim1: pd1 },
                mds: r.mds,
                period: r.period,
                cluster: r.cluster,
                hour_of_day: r.hour_of_day,
                day_of_week: r.day_of_week,
            }
        })
        .collect();

    let bundle = ExportBundle {
        schema_version: SCHEMA_VERSION,
        dataset: DatasetMeta {
            source: source.to_owned(),
            format: format!("{:?}", cfg.format).to_lowercase(),
            events: stream.events.len(),
            dropped_events: tvg.dropped_events,
            vertices: tvg.universe.len(),
            window_length: tvg.window_length,
            overlap: cfg.ingest.overlap_fraction,
            stride: tvg.stride,
        },
        config: echo(cfg),
        instances,
        distances,
        periods: segments,
        clustering,
        warnings,
    };
    Ok(PipelineOutput { bundle, matrices })
}

fn echo(cfg: &PipelineConfig) -> ConfigEcho {
    let c = &cfg.comparison;
    let eigenvectors = match c.metric {
        MetricConfig::CommuteTime(ct) => ct.eigen_count.to_string(),
        MetricConfig::ShortestPath(_) => "n/a".to_owned(),
    };
    let (distance, q, apply_root) = match c.distance {
        DiagramDistance::Bottleneck => ("bottleneck", None, false),
        DiagramDistance::Wasserstein { q, apply_root } => ("wasserstein", Some(q), apply_root),
    };
    ConfigEcho {
        metric: c.metric.kind().to_string(),
        weight_scheme: c.metric.weight_scheme().to_string(),
        eigenvectors,
        dim: c.dim,
        distance: distance.to_owned(),
        q,
        apply_root,
        essential: c.essential.to_string(),
        period_length: cfg.period_length,
        k: cfg.k,
        mds_dims: cfg.mds_dims,
        seed: cfg.seed,
        time_scale: cfg.time_scale,
    }
}

/// Writes `bundle.json` into `out_dir`, plus per-instance distance and diagram CSVs and
/// the pairwise matrix when `intermediates` is set.
pub fn write_outputs(output: &PipelineOutput, out_dir: &Path, intermediates: bool) -> Result<()> {
    fs::create_dir_all(out_dir)?;
    write_bundle(&output.bundle, std::io::BufWriter::new(File::create(out_dir.join("bundle.json"))?))?;
    if !intermediates {
        return Ok(());
    }
    write_matrix_csv(&output.bundle.distances, File::create(out_dir.join("pairwise.csv"))?)?;
    for (inst, d) in output.bundle.instances.iter().zip(&output.matrices) {
        d.write_csv(File::create(out_dir.join(format!("distance_{}.csv", inst.id)))?)?;
        write_diagrams_csv(
            &[&inst.diagrams.dim0, &inst.diagrams.dim1],
            File::create(out_dir.join(format!("diagrams_{}.csv", inst.id)))?,
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::TemporalEdgeEvent;

    #[test]
    fn calendar() {
        assert_eq!(calendar_keys(0.0), (0, 3));
        // 2024-01-01T13:30:00Z, a Monday.
        assert_eq!(calendar_keys(1_704_115_800.0), (13, 0));
        assert_eq!(calendar_keys(-1.0), (23, 2));
    }

    #[test]
    fn two_windows() {
        let events = (0..10)
            .map(|i| TemporalEdgeEvent::new(i as f64, format!("v{}", i % 4), format!("v{}", (i + 1) % 4)))
            .collect();
        let cfg = PipelineConfig { ingest: IngestConfig::new(5.0, 0.0), ..Default::default() };
        let out = run_pipeline(ParsedStream { events, categories: Default::default() }, "test", &cfg).unwrap();
        let b = &out.bundle;
        assert_eq!(b.instances.len(), 2);
        assert_eq!(b.distances.len(), 2);
        assert!(b.clustering.is_none());
        assert!(b.warnings.iter().any(|w| w.starts_with("clustering skipped")));
        assert_eq!(b.instances[1].window, (5.0, 10.0));
    }
}
