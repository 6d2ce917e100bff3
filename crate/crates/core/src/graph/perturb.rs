use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Edge, GraphInstance, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionMode {
    /// Uniform without replacement: a prefix of one seeded shuffle, so for a fixed seed
    /// larger fractions delete supersets of smaller ones.
    Random,
    /// Largest weights first, ties in canonical edge order.
    Targeted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSpec {
    pub mode: DeletionMode,
    /// Percentage of edges to delete, in `[0, 100]`.
    pub fraction: f64,
    pub repetitions: usize,
    pub seed: u64,
}

impl PerturbationSpec {
    pub fn random(fraction: f64, seed: u64) -> Self {
        Self { mode: DeletionMode::Random, fraction, repetitions: 1, seed }
    }

    pub fn targeted(fraction: f64) -> Self {
        Self { mode: DeletionMode::Targeted, fraction, repetitions: 1, seed: 0 }
    }

    /// Number of edges removed from a graph with `edge_count` edges.
    pub fn deletion_count(&self, edge_count: usize) -> usize {
        ((self.fraction / 100.0 * edge_count as f64).round() as usize).min(edge_count)
    }
}

/// Deletes `round(fraction / 100 * |E|)` edges; vertices are untouched.
pub fn perturb_delete_edges(g: &GraphInstance, spec: &PerturbationSpec) -> Result<GraphInstance> {
    if !(0.0..=100.0).contains(&spec.fraction) {
        return Err(Error::InvalidParameter(format!("fraction {} outside [0, 100]", spec.fraction)));
    }
    let k = spec.deletion_count(g.edge_count());
    let mut remove = vec![false; g.edge_count()];
    match spec.mode {
        DeletionMode::Random => {
            let mut order: Vec<usize> = (0..g.edge_count()).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(spec.seed));
            for &i in &order[..k] {
                remove[i] = true;
            }
        }
        DeletionMode::Targeted => {
            let mut order: Vec<usize> = (0..g.edge_count()).collect();
            // Stable sort keeps canonical order among equal weights.
            order.sort_by(|&a, &b| g.edges()[b].weight.total_cmp(&g.edges()[a].weight));
            for &i in &order[..k] {
                remove[i] = true;
            }
        }
    }
    let edges = g.edges().iter().zip(&remove).filter(|(_, &r)| !r).map(|(e, _)| *e).collect();
    Ok(GraphInstance::from_parts(g.id, g.window, g.vertices().to_vec(), edges))
}

/// Removes the listed vertices (by index) and every incident edge.
pub fn delete_nodes(g: &GraphInstance, nodes: &[usize]) -> Result<GraphInstance> {
    let n = g.vertex_count();
    let mut gone = vec![false; n];
    for &x in nodes {
        if x >= n {
            return Err(Error::UnknownVertex(x.to_string()));
        }
        gone[x] = true;
    }
    let mut new_index = vec![usize::MAX; n];
    let mut vertices: Vec<Vertex> = Vec::with_capacity(n);
    for (i, v) in g.vertices().iter().enumerate() {
        if !gone[i] {
            new_index[i] = vertices.len();
            vertices.push(v.clone());
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| !gone[e.u] && !gone[e.v])
        .map(|e| Edge { u: new_index[e.u], v: new_index[e.v], weight: e.weight })
        .collect();
    Ok(GraphInstance::from_parts(g.id, g.window, vertices, edges))
}

/// Adds `delta` to the weight of edge `{u, v}`.
pub fn modify_edge_weight(g: &GraphInstance, u: usize, v: usize, delta: f64) -> Result<GraphInstance> {
    let idx = g.edge_index(u, v).ok_or(Error::MissingEdge(u, v))?;
    let w = g.edges()[idx].weight + delta;
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::NonPositiveWeight(w));
    }
    let mut edges = g.edges().to_vec();
    edges[idx].weight = w;
    Ok(GraphInstance::from_parts(g.id, g.window, g.vertices().to_vec(), edges))
}
