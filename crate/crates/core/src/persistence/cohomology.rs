//! `PD_1` through reduction of the coboundary matrix.
//!
//! Edges are processed in reverse filtration order. Edges that merge two components are
//! skipped: they are paired in dimension 0, so their coboundary columns would be cleared.
//! The pairing is the same as the one produced by boundary reduction, but only about
//! `|E| - |V|` short columns are reduced instead of one column per triangle.

use std::collections::HashMap;

use super::{PersistenceDiagram, PersistencePoint, RMax};
use crate::error::Result;
use crate::metric::DistanceMatrix;
use crate::union_find::UnionFind;

/// Triangle in filtration order: value, then vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Tri {
    value: f64,
    v: [u32; 3],
}

impl Tri {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value.total_cmp(&other.value).then(self.v.cmp(&other.v))
    }
}

fn add_columns(a: &[Tri], b: &[Tri], out: &mut Vec<Tri>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Column owning each pivot triangle: a dense table indexed by the combinatorial number
/// system when it fits, a hash map otherwise.
enum Owners {
    Dense { n: usize, slots: Vec<u32> },
    Sparse(HashMap<[u32; 3], usize>),
}

const DENSE_LIMIT: usize = 1 << 24;

impl Owners {
    fn new(n: usize) -> Self {
        let triangles = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        if triangles <= DENSE_LIMIT {
            Self::Dense { n, slots: vec![u32::MAX; triangles] }
        } else {
            Self::Sparse(HashMap::new())
        }
    }

    fn slot(n: usize, v: [u32; 3]) -> usize {
        let [a, b, c] = v.map(|x| x as usize);
        debug_assert!(a < b && b < c && c < n);
        c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
    }

    fn get(&self, v: [u32; 3]) -> Option<usize> {
        match self {
            Self::Dense { n, slots } => Some(slots[Self::slot(*n, v)]).filter(|&k| k != u32::MAX).map(|k| k as usize),
            Self::Sparse(map) => map.get(&v).copied(),
        }
    }

    fn insert(&mut self, v: [u32; 3], column: usize) {
        match self {
            Self::Dense { n, slots } => slots[Self::slot(*n, v)] = column as u32,
            Self::Sparse(map) => {
                map.insert(v, column);
            }
        }
    }
}

/// `PD_1` of the Rips filtration of `d`, truncated at `r_max`.
pub fn pd1_cohomology(d: &DistanceMatrix, r_max: RMax) -> Result<PersistenceDiagram> {
    let r = r_max.resolve(d)?;
    let n = d.len();
    let admitted = |x: usize, y: usize| {
        let v = d.get(x, y);
        v.is_finite() && v <= r
    };

    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if admitted(a, b) {
                edges.push((d.get(a, b), a, b));
            }
        }
    }
    edges.sort_unstable_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));

    let mut uf = UnionFind::new(n);
    let positive: Vec<(f64, usize, usize)> = edges.into_iter().filter(|&(_, a, b)| !uf.union(a, b)).collect();

    let triangle = |value: f64, a: usize, b: usize, c: usize| {
        let mut v = [a as u32, b as u32, c as u32];
        v.sort_unstable();
        Tri { value, v }
    };
    // Cofacet values of edge (a, b) with its third vertex; `c` ascending is also the
    // vertex-lexicographic order of the triangles, since a < b.
    let cofacets = |value: f64, a: usize, b: usize| {
        let (ra, rb) = (d.row(a), d.row(b));
        (0..n).filter_map(move |c| {
            let (x, y) = (ra[c], rb[c]);
            (c != a && c != b && x <= r && y <= r).then(|| (value.max(x).max(y), c))
        })
    };
    // Coboundary of edge (a, b), sorted in filtration order.
    let coboundary = |value: f64, a: usize, b: usize| {
        let mut col: Vec<Tri> = cofacets(value, a, b).map(|(v, c)| triangle(v, a, b, c)).collect();
        col.sort_by(|x, y| x.value.total_cmp(&y.value));
        col
    };

    let mut owner = Owners::new(n);
    // Columns that needed reduction are stored; the rest equal their coboundary and are
    // rebuilt on demand.
    let mut reduced: Vec<Option<Vec<Tri>>> = Vec::with_capacity(positive.len());
    let mut scratch = Vec::new();
    let mut finite = Vec::new();
    let mut essential = Vec::new();
    let order: Vec<(f64, usize, usize)> = positive.into_iter().rev().collect();

    for &(value, a, b) in &order {
        let mut best: Option<(f64, usize)> = None;
        for (v, c) in cofacets(value, a, b) {
            if best.is_none_or(|(w, _)| v < w) {
                best = Some((v, c));
            }
        }
        let first = best.map(|(v, c)| triangle(v, a, b, c));
        let mut stored = None;
        let mut pivot = first;
        if let Some(k) = first.and_then(|t| owner.get(t.v)) {
            let mut col = coboundary(value, a, b);
            let mut k = Some(k);
            while let Some(j) = k {
                match &reduced[j] {
                    Some(other) => add_columns(&col, other, &mut scratch),
                    None => {
                        let (w, x, y) = order[j];
                        add_columns(&col, &coboundary(w, x, y), &mut scratch)
                    }
                }
                std::mem::swap(&mut col, &mut scratch);
                k = col.first().and_then(|t| owner.get(t.v));
            }
            pivot = col.first().copied();
            stored = Some(col);
        }
        match pivot {
            Some(t) => {
                owner.insert(t.v, reduced.len());
                finite.push(PersistencePoint::new(value, t.value));
            }
            None => essential.push(value),
        }
        reduced.push(stored);
    }
    Ok(PersistenceDiagram::new(1, finite, essential))
}
