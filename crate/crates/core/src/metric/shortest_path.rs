use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use super::{DistanceMatrix, MetricKind, WeightScheme};
use crate::graph::GraphInstance;

#[derive(Copy, Clone, PartialEq)]
struct State {
    dist: f64,
    node: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        other.dist.total_cmp(&self.dist).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(State { dist: 0.0, node: source });
    while let Some(State { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for &(next, len) in &adj[node] {
            let nd = d + len;
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(State { dist: nd, node: next });
            }
        }
    }
    dist
}

/// All-pairs shortest-path lengths, one Dijkstra run per source.
pub fn shortest_path_matrix(g: &GraphInstance, scheme: WeightScheme) -> DistanceMatrix {
    let n = g.vertex_count();
    let adj: Vec<Vec<(usize, f64)>> =
        g.adjacency().into_iter().map(|nbrs| nbrs.into_iter().map(|(v, w)| (v, scheme.length(w))).collect()).collect();
    let rows: Vec<Vec<f64>> = (0..n).into_par_iter().map(|s| dijkstra(&adj, s)).collect();

    // Path sums can differ in the last bit depending on direction; keep the smaller.
    let mut m = DistanceMatrix::from_fn(n, |i, j| rows[i][j].min(rows[j][i]));
    m.kind = MetricKind::ShortestPath;
    m.weight_scheme = scheme;
    m
}
