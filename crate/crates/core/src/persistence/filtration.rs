use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

/// Largest diameter admitted into the filtration.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RMax {
    /// Largest finite entry of the distance matrix.
    #[default]
    Diameter,
    Value(f64),
}

impl RMax {
    pub fn resolve(self, d: &DistanceMatrix) -> Result<f64> {
        match self {
            Self::Diameter => Ok(d.max_finite()),
            Self::Value(r) if r > 0.0 => Ok(r),
            Self::Value(r) => Err(Error::InvalidParameter(format!("r_max must be positive, got {r}"))),
        }
    }
}

/// Vertex, edge or triangle of a Rips complex with its entry value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simplex {
    pub dim: usize,
    vertices: [usize; 3],
    pub value: f64,
}

impl Simplex {
    pub fn vertex(v: usize) -> Self {
        Self { dim: 0, vertices: [v, 0, 0], value: 0.0 }
    }

    pub fn edge(a: usize, b: usize, value: f64) -> Self {
        Self { dim: 1, vertices: [a.min(b), a.max(b), 0], value }
    }

    /// Triangle on `a < b < c`.
    pub fn triangle(a: usize, b: usize, c: usize, value: f64) -> Self {
        debug_assert!(a < b && b < c);
        Self { dim: 2, vertices: [a, b, c], value }
    }

    /// Sorted vertex indices.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices[..=self.dim]
    }

    /// Filtration order: value, then dimension, then lexicographic vertices.
    pub fn filtration_cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then(self.dim.cmp(&other.dim))
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Filtration {
    pub simplices: Vec<Simplex>,
    pub r_max: f64,
    pub vertex_count: usize,
}

impl Filtration {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }
}

/// Rips complex up to triangles: edge `{x, y}` enters at `d(x, y)`, a triangle at the
/// largest of its three edge values. Nothing above `r_max` (and no `+inf` pair) enters.
pub fn rips_filtration(d: &DistanceMatrix, r_max: RMax) -> Result<Filtration> {
    let r = r_max.resolve(d)?;
    let n = d.len();
    let admitted = |x: usize, y: usize| {
        let v = d.get(x, y);
        v.is_finite() && v <= r
    };

    let mut simplices: Vec<Simplex> = (0..n).map(Simplex::vertex).collect();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in x + 1..n {
            if admitted(x, y) {
                simplices.push(Simplex::edge(x, y, d.get(x, y)));
                nbrs[x].push(y);
            }
        }
    }
    for x in 0..n {
        for (i, &y) in nbrs[x].iter().enumerate() {
            for &z in &nbrs[x][i + 1..] {
                if admitted(y, z) {
                    let value = d.get(x, y).max(d.get(x, z)).max(d.get(y, z));
                    simplices.push(Simplex::triangle(x, y, z, value));
                }
            }
        }
    }
    simplices.sort_by(Simplex::filtration_cmp);
    Ok(Filtration { simplices, r_max: r, vertex_count: n })
}
