use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GraphInstance;
use crate::error::{Error, Result};

/// Uniform sample from all graphs with `n` vertices and exactly `m` edges.
///
/// Weights are drawn i.i.d. uniform in `[lo, hi)` in canonical edge order.
pub fn generate_gnm(n: usize, m: usize, weight_range: (f64, f64), seed: u64) -> Result<GraphInstance> {
    let max = n * n.saturating_sub(1) / 2;
    if m > max {
        return Err(Error::TooManyEdges { n, requested: m, max });
    }
    let (lo, hi) = weight_range;
    if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidParameter(format!("weight range ({lo}, {hi}) must be positive")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, max, m).into_vec();
    picked.sort_unstable();

    // Walk the row-major upper triangle once, decoding sorted pair indices.
    let mut pairs = Vec::with_capacity(m);
    let (mut row, mut row_start) = (0usize, 0usize);
    for p in picked {
        while p >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        pairs.push((row, row + 1 + (p - row_start)));
    }

    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = if hi > lo { rng.gen_range(lo..hi) } else { lo };
            (u, v, w)
        })
        .collect();
    GraphInstance::with_numbered_vertices(n, edges)
}

/// Small named graphs with unit weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Exemplar {
    Cycle(usize),
    Complete(usize),
    Path(usize),
    /// Complete graph on `clique` vertices with a path of `tail` extra vertices hanging off it.
    Lollipop {
        clique: usize,
        tail: usize,
    },
    /// Two complete graphs on `clique` vertices joined through `bridge` path vertices.
    Barbell {
        clique: usize,
        bridge: usize,
    },
    Custom {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
}

impl Exemplar {
    /// Parses `C5`, `K9`, `P5`, `lollipop:5:4` or `barbell:4:2`.
    pub fn parse(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownExemplar(name.to_owned());
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let parts: Vec<&str> = name.split(':').collect();
        match parts.as_slice() {
            ["lollipop", c, t] => Ok(Self::Lollipop { clique: num(c)?, tail: num(t)? }),
            ["barbell", c, b] => Ok(Self::Barbell { clique: num(c)?, bridge: num(b)? }),
            [single] if single.len() > 1 => {
                let (kind, n) = single.split_at(1);
                let n = num(n)?;
                match kind {
                    "C" => Ok(Self::Cycle(n)),
                    "K" => Ok(Self::Complete(n)),
                    "P" => Ok(Self::Path(n)),
                    _ => Err(unknown()),
                }
            }
            _ => Err(unknown()),
        }
    }

    pub fn build(&self) -> Result<GraphInstance> {
        let (n, edges): (usize, Vec<(usize, usize)>) = match *self {
            Self::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
                }
                (n, (0..n).map(|i| (i, (i + 1) % n)).collect())
            }
            Self::Complete(n) => (n, clique_edges(0, n)),
            Self::Path(n) => (n, (1..n).map(|i| (i - 1, i)).collect()),
            Self::Lollipop { clique, tail } => {
                let mut edges = clique_edges(0, clique);
                edges.extend((clique..clique + tail).map(|i| (i - 1, i)));
                (clique + tail, edges)
            }
            Self::Barbell { clique, bridge } => {
                let mut edges = clique_edges(0, clique);
                edges.extend((clique..=clique + bridge).map(|i| (i - 1, i)));
                edges.extend(clique_edges(clique + bridge, clique));
                (2 * clique + bridge, edges)
            }
            Self::Custom { n, ref edges } => (n, edges.clone()),
        };
        if n == 0 {
            return Err(Error::InvalidParameter("exemplar needs at least one vertex".into()));
        }
        GraphInstance::with_numbered_vertices(n, edges.into_iter().map(|(u, v)| (u, v, 1.0)))
    }
}

fn clique_edges(offset: usize, k: usize) -> Vec<(usize, usize)> {
    (0..k).flat_map(|i| (i + 1..k).map(move |j| (offset + i, offset + j))).collect()
}

/// Builds a named exemplar; see [`Exemplar::parse`].
pub fn exemplar(name: &str) -> Result<GraphInstance> {
    Exemplar::parse(name)?.build()
}
