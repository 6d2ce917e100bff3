use std::collections::{BTreeMap, BTreeSet};

use super::{Edge, GraphInstance, TemporalEdgeEvent, TimeVaryingGraph, Vertex};
use crate::error::{Error, Result};

/// Which vertices each windowed instance carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VertexScope {
    /// Every vertex of the stream appears in every instance, edgeless or not.
    #[default]
    Universe,
    /// Only vertices touched by an event inside the window.
    PerWindow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IngestConfig {
    pub window_length: f64,
    pub overlap_fraction: f64,
    pub vertex_scope: VertexScope,
    /// Optional vertex id -> category label.
    pub categories: BTreeMap<String, String>,
}

impl IngestConfig {
    pub fn new(window_length: f64, overlap_fraction: f64) -> Self {
        Self { window_length, overlap_fraction, vertex_scope: VertexScope::Universe, categories: BTreeMap::new() }
    }

    /// Distance between consecutive window starts, rounded to a whole time unit.
    pub fn stride(&self) -> f64 {
        ((1.0 - self.overlap_fraction) * self.window_length).round()
    }
}

/// Slices an event stream into overlapping windows, one graph instance per window.
///
/// Window `k` covers `[t0 + k * stride, t0 + k * stride + window_length)` where `t0` is the
/// earliest event time. Windows are emitted until one starts after the last event. Edge
/// weight is the sum of event weights on that pair inside the window.
pub fn ingest_temporal_edges(events: &[TemporalEdgeEvent], config: &IngestConfig) -> Result<TimeVaryingGraph> {
    if events.is_empty() {
        return Err(Error::NoEvents);
    }
    if !(config.window_length > 0.0 && config.window_length.is_finite()) {
        return Err(Error::InvalidParameter(format!("window length must be positive, got {}", config.window_length)));
    }
    if !(0.0..1.0).contains(&config.overlap_fraction) {
        return Err(Error::InvalidParameter(format!(
            "overlap fraction must lie in [0, 1), got {}",
            config.overlap_fraction
        )));
    }

    if config.stride() < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "stride rounds to zero for window {} and overlap {}",
            config.window_length, config.overlap_fraction
        )));
    }

    let mut kept: Vec<&TemporalEdgeEvent> = Vec::with_capacity(events.len());
    for e in events {
        if e.u != e.v && e.weight > 0.0 && e.weight.is_finite() && e.time.is_finite() {
            kept.push(e);
        }
    }
    let dropped_events = events.len() - kept.len();
    if kept.is_empty() {
        return Err(Error::NoEvents);
    }
    // Stable, so equal timestamps keep input order and aggregation stays reproducible.
    kept.sort_by(|a, b| a.time.total_cmp(&b.time));

    let universe: Vec<String> = kept
        .iter()
        .flat_map(|e| [e.u.as_str(), e.v.as_str()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(str::to_owned)
        .collect();
    let index_of: BTreeMap<&str, usize> = universe.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();

    let stride = config.stride();
    let t0 = kept[0].time;
    let t_last = kept[kept.len() - 1].time;
    let window_count = ((t_last - t0) / stride).floor() as usize + 1;

    let mut instances = Vec::with_capacity(window_count);
    for k in 0..window_count {
        let start = t0 + k as f64 * stride;
        let end = start + config.window_length;
        let lo = kept.partition_point(|e| e.time < start);
        let hi = kept.partition_point(|e| e.time < end);

        let mut pairs: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for e in &kept[lo..hi] {
            let (a, b) = (index_of[e.u.as_str()], index_of[e.v.as_str()]);
            *pairs.entry((a.min(b), a.max(b))).or_insert(0.0) += e.weight;
        }

        let instance = match config.vertex_scope {
            VertexScope::Universe => {
                let vertices = universe.iter().map(|id| vertex_with_category(id, config)).collect();
                let edges = pairs.into_iter().map(|((u, v), weight)| Edge { u, v, weight }).collect();
                GraphInstance::from_parts(k, (start, end), vertices, edges)
            }
            VertexScope::PerWindow => {
                let touched: BTreeSet<usize> = pairs.keys().flat_map(|&(u, v)| [u, v]).collect();
                let local: BTreeMap<usize, usize> = touched.iter().enumerate().map(|(i, &g)| (g, i)).collect();
                let vertices = touched.iter().map(|&g| vertex_with_category(&universe[g], config)).collect();
                let edges =
                    pairs.into_iter().map(|((u, v), weight)| Edge { u: local[&u], v: local[&v], weight }).collect();
                GraphInstance::from_parts(k, (start, end), vertices, edges)
            }
        };
        instances.push(instance);
    }

    Ok(TimeVaryingGraph { instances, universe, window_length: config.window_length, stride, dropped_events })
}

fn vertex_with_category(id: &str, config: &IngestConfig) -> Vertex {
    Vertex { id: id.to_owned(), category: config.categories.get(id).cloned() }
}
