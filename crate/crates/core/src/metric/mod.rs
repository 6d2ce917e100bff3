//! Metric-space representations of graph instances.

mod shortest_path;
mod spectral;

pub use shortest_path::shortest_path_matrix;
pub use spectral::{
    commute_time_matrix, effective_resistance_oracle, laplacian, spectral_data, CommuteTimeConfig, EigenCount,
    Eigenproblem, SpectralData, ZERO_EIGENVALUE_TOL,
};

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::GraphInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    ShortestPath,
    CommuteTime,
}

/// How an edge weight becomes an edge length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightScheme {
    /// Length equals weight.
    #[default]
    Length,
    /// Length equals `1 / weight`; heavier edges pull vertices closer.
    Inverse,
}

impl WeightScheme {
    pub fn length(self, weight: f64) -> f64 {
        match self {
            Self::Length => weight,
            Self::Inverse => 1.0 / weight,
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sp" | "shortest-path" => Ok(Self::ShortestPath),
            "ct" | "commute-time" => Ok(Self::CommuteTime),
            other => Err(Error::InvalidParameter(format!("unknown metric `{other}`"))),
        }
    }
}

impl std::fmt::Display for MetricKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::ShortestPath => "sp",
            Self::CommuteTime => "ct",
        })
    }
}

impl std::str::FromStr for WeightScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "length" => Ok(Self::Length),
            "inverse" => Ok(Self::Inverse),
            other => Err(Error::InvalidParameter(format!("unknown weight scheme `{other}`"))),
        }
    }
}

impl std::fmt::Display for WeightScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Length => "length",
            Self::Inverse => "inverse",
        })
    }
}

/// Which embedding to compute for an instance, with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricConfig {
    ShortestPath(WeightScheme),
    CommuteTime(CommuteTimeConfig),
}

impl Default for MetricConfig {
    fn default() -> Self {
        Self::ShortestPath(WeightScheme::Length)
    }
}

impl MetricConfig {
    pub fn embed(&self, g: &GraphInstance) -> Result<DistanceMatrix> {
        match self {
            Self::ShortestPath(scheme) => Ok(shortest_path_matrix(g, *scheme)),
            Self::CommuteTime(cfg) => commute_time_matrix(g, cfg),
        }
    }

    pub fn weight_scheme(&self) -> WeightScheme {
        match self {
            Self::ShortestPath(scheme) => *scheme,
            Self::CommuteTime(cfg) => cfg.weight_scheme,
        }
    }

    pub fn kind(&self) -> MetricKind {
        match self {
            Self::ShortestPath(_) => MetricKind::ShortestPath,
            Self::CommuteTime(_) => MetricKind::CommuteTime,
        }
    }
}

/// Symmetric `n x n` distance matrix with zero diagonal; `+inf` marks unreachable pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
    pub kind: MetricKind,
    pub weight_scheme: WeightScheme,
    /// Eigenpairs summed for commute-time matrices.
    pub eigenpairs: Option<usize>,
}

impl DistanceMatrix {
    /// Builds a matrix from full rows, checking shape, symmetry and the zero diagonal.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            entries.extend_from_slice(row);
        }
        let m = Self::from_entries(n, entries);
        for i in 0..n {
            if m.get(i, i) != 0.0 {
                return Err(Error::InvalidParameter(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) || m.get(i, j).is_nan() || m.get(i, j) < 0.0 {
                    return Err(Error::InvalidParameter(format!("entry ({i}, {j}) breaks symmetry or sign")));
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn from_entries(n: usize, entries: Vec<f64>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self { n, entries, kind: MetricKind::ShortestPath, weight_scheme: WeightScheme::Length, eigenpairs: None }
    }

    /// Symmetric matrix from a function evaluated on `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = f(i, j);
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        Self::from_entries(n, entries)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn all_finite(&self) -> bool {
        self.entries.iter().all(|d| d.is_finite())
    }

    /// Largest finite entry, 0 for matrices without finite off-diagonal entries.
    pub fn max_finite(&self) -> f64 {
        self.entries.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max)
    }

    /// Square CSV, `inf` for unreachable pairs.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for i in 0..self.n {
            let line: Vec<String> = self.row(i).iter().map(|&d| format_entry(d)).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn format_entry(d: f64) -> String {
    if d.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{d:?}")
    }
}
