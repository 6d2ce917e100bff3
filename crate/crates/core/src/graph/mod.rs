//! Weighted undirected graph instances and the time-varying sequences built from them.
//!
//! Vertices are addressed by index; their order is the canonical order used for every
//! tie-break downstream. Ingested graphs sort vertex ids lexicographically, synthetic
//! graphs label vertices `0..n` in index order. Edges are stored once per unordered pair
//! with `u < v`, sorted by `(u, v)`.

mod generate;
mod ingest;
pub mod io;
mod perturb;

pub use generate::{exemplar, generate_gnm, Exemplar};
pub use ingest::{ingest_temporal_edges, IngestConfig, VertexScope};
pub use perturb::{delete_nodes, modify_edge_weight, perturb_delete_edges, DeletionMode, PerturbationSpec};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// One timestamped interaction between two vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct TemporalEdgeEvent {
    pub time: f64,
    pub u: String,
    pub v: String,
    pub weight: f64,
}

impl TemporalEdgeEvent {
    pub fn new(time: f64, u: impl Into<String>, v: impl Into<String>) -> Self {
        Self { time, u: u.into(), v: v.into(), weight: 1.0 }
    }

    pub fn weighted(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
}

impl Vertex {
    pub fn new(id: impl Into<String>) -> Self {
        Self { id: id.into(), category: None }
    }
}

/// Undirected weighted edge between vertex indices `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    pub fn key(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// A single static graph `G_i` of a time-varying sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphInstance {
    pub id: usize,
    pub window: (f64, f64),
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl GraphInstance {
    /// Builds an instance, aggregating repeated pairs by summing their weights.
    ///
    /// Endpoints may be given in either order. Self-loops, out-of-range endpoints and
    /// non-positive weights are rejected.
    pub fn new<I>(vertices: Vec<Vertex>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let n = vertices.len();
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(a.max(b).to_string()));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop on vertex {a}")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight(w));
            }
            *merged.entry((a.min(b), a.max(b))).or_insert(0.0) += w;
        }
        let edges = merged.into_iter().map(|((u, v), weight)| Edge { u, v, weight }).collect();
        Ok(Self { id: 0, window: (0.0, 0.0), vertices, edges })
    }

    /// Instance on vertices labelled `0..n`.
    pub fn with_numbered_vertices<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        Self::new((0..n).map(|i| Vertex::new(i.to_string())).collect(), edges)
    }

    pub fn with_id(mut self, id: usize, window: (f64, f64)) -> Self {
        self.id = id;
        self.window = window;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Edges in canonical `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by(|e| e.key().cmp(&key)).ok()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// Adjacency lists of `(neighbor, weight)`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    /// Connected-component label of every vertex, numbered in vertex order.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.labels()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub(crate) fn from_parts(id: usize, window: (f64, f64), vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0].key() < w[1].key()));
        Self { id, window, vertices, edges }
    }
}

/// Ordered sequence of graph instances `G_0, ..., G_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeVaryingGraph {
    pub instances: Vec<GraphInstance>,
    /// Every vertex id seen in the stream, sorted.
    pub universe: Vec<String>,
    pub window_length: f64,
    pub stride: f64,
    /// Events discarded at ingestion (self-loops, non-positive weights).
    pub dropped_events: usize,
}

impl TimeVaryingGraph {
    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }
}
