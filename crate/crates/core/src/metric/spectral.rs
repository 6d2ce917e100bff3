use nalgebra::{DMatrix, DVector};

use super::{DistanceMatrix, MetricKind, WeightScheme};
use crate::error::{Error, Result};
use crate::graph::GraphInstance;

/// Eigenvalues at or below this are treated as zero (one per connected component).
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Above this vertex count `EigenCount::Auto` truncates to [`AUTO_TRUNCATION`] eigenpairs.
const AUTO_FULL_SPECTRUM_MAX_N: usize = 500;
const AUTO_TRUNCATION: usize = 30;

/// Number of nonzero eigenpairs summed in the commute-time distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenCount {
    /// Full spectrum up to 500 vertices, the first 30 pairs beyond that.
    #[default]
    Auto,
    All,
    First(usize),
}

impl EigenCount {
    fn resolve(self, n: usize) -> usize {
        match self {
            Self::Auto if n <= AUTO_FULL_SPECTRUM_MAX_N => n,
            Self::Auto => AUTO_TRUNCATION,
            Self::All => n,
            Self::First(k) => k,
        }
    }
}

impl std::str::FromStr for EigenCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Self::Auto),
            "all" => Ok(Self::All),
            n => match n.parse() {
                Ok(k) if k > 0 => Ok(Self::First(k)),
                _ => Err(Error::InvalidParameter(format!(
                    "eigenvector count must be `auto`, `all` or a positive integer, got `{n}`"
                ))),
            },
        }
    }
}

impl std::fmt::Display for EigenCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Auto => f.write_str("auto"),
            Self::All => f.write_str("all"),
            Self::First(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Eigenproblem {
    /// `L phi = lambda phi`; the full sum equals effective resistance.
    #[default]
    Standard,
    /// `L phi = lambda D phi`, with `D` the weighted degree matrix.
    DegreeGeneralized,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CommuteTimeConfig {
    pub eigen_count: EigenCount,
    pub eigenproblem: Eigenproblem,
    /// Transform applied to edge weights before they enter the Laplacian.
    pub weight_scheme: WeightScheme,
}

/// Laplacian eigenpairs sorted by ascending eigenvalue; column `i` of `eigenvectors`
/// belongs to `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<f64>,
}

/// Combinatorial Laplacian `L = D - W`.
pub fn laplacian(g: &GraphInstance) -> DMatrix<f64> {
    laplacian_with(g, WeightScheme::Length)
}

fn laplacian_with(g: &GraphInstance, scheme: WeightScheme) -> DMatrix<f64> {
    let n = g.vertex_count();
    let mut l = DMatrix::zeros(n, n);
    for e in g.edges() {
        let w = scheme.length(e.weight);
        l[(e.u, e.v)] -= w;
        l[(e.v, e.u)] -= w;
        l[(e.u, e.u)] += w;
        l[(e.v, e.v)] += w;
    }
    l
}

pub fn spectral_data(g: &GraphInstance, eigenproblem: Eigenproblem, scheme: WeightScheme) -> SpectralData {
    let n = g.vertex_count();
    let l = laplacian_with(g, scheme);
    let (values, vectors) = match eigenproblem {
        Eigenproblem::Standard => {
            let eig = l.symmetric_eigen();
            (eig.eigenvalues, eig.eigenvectors)
        }
        Eigenproblem::DegreeGeneralized => {
            // Symmetric reduction: D^-1/2 L D^-1/2 psi = lambda psi, phi = D^-1/2 psi.
            // Isolated vertices get a zero scale and so only contribute zero eigenvalues.
            let scale =
                DVector::from_iterator(n, (0..n).map(|i| if l[(i, i)] > 0.0 { l[(i, i)].sqrt().recip() } else { 0.0 }));
            let s = DMatrix::from_diagonal(&scale);
            let eig = (&s * &l * &s).symmetric_eigen();
            (eig.eigenvalues, s * eig.eigenvectors)
        }
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    SpectralData {
        eigenvalues: order.iter().map(|&i| values[i]).collect(),
        eigenvectors: DMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]),
    }
}

/// Commute-time distance from the `k` smallest nonzero Laplacian eigenpairs:
/// `d(x, y)^2 = sum_i (phi_i(x) - phi_i(y))^2 / lambda_i`.
///
/// Vertices in different connected components are at `+inf`.
pub fn commute_time_matrix(g: &GraphInstance, cfg: &CommuteTimeConfig) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidParameter("commute-time distance needs at least one vertex".into()));
    }
    let labels = g.component_labels();
    let spectrum = spectral_data(g, cfg.eigenproblem, cfg.weight_scheme);
    let used: Vec<usize> =
        (0..n).filter(|&i| spectrum.eigenvalues[i] > ZERO_EIGENVALUE_TOL).take(cfg.eigen_count.resolve(n)).collect();

    // Pre-scale each used eigenvector by 1/sqrt(lambda) so distances are plain Euclidean.
    let coords: Vec<Vec<f64>> = (0..n)
        .map(|x| used.iter().map(|&i| spectrum.eigenvectors[(x, i)] / spectrum.eigenvalues[i].sqrt()).collect())
        .collect();
    let mut m = DistanceMatrix::from_fn(n, |x, y| {
        if labels[x] != labels[y] {
            return f64::INFINITY;
        }
        coords[x].iter().zip(&coords[y]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    });
    m.kind = MetricKind::CommuteTime;
    m.weight_scheme = cfg.weight_scheme;
    m.eigenpairs = Some(used.len());
    Ok(m)
}

/// `sqrt(L+_xx + L+_yy - 2 L+_xy)` per connected component, via the inverse of
/// `L + J / s` on each component of size `s`.
pub fn effective_resistance_oracle(g: &GraphInstance) -> DistanceMatrix {
    let n = g.vertex_count();
    let labels = g.component_labels();
    let comps = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); comps];
    let mut local = vec![0; n];
    for (x, &c) in labels.iter().enumerate() {
        local[x] = members[c].len();
        members[c].push(x);
    }

    let mut entries = vec![f64::INFINITY; n * n];
    for x in 0..n {
        entries[x * n + x] = 0.0;
    }
    for verts in members.iter().filter(|m| m.len() > 1) {
        let s = verts.len();
        let shift = 1.0 / s as f64;
        let mut a = DMatrix::from_element(s, s, shift);
        for e in g.edges().iter().filter(|e| labels[e.u] == labels[verts[0]]) {
            let (u, v) = (local[e.u], local[e.v]);
            a[(u, v)] -= e.weight;
            a[(v, u)] -= e.weight;
            a[(u, u)] += e.weight;
            a[(v, v)] += e.weight;
        }
        let pinv = a.try_inverse().expect("L + J/s is nonsingular on a connected component").add_scalar(-shift);
        for (i, &x) in verts.iter().enumerate() {
            for (j, &y) in verts.iter().enumerate().skip(i + 1) {
                let r = pinv[(i, i)] + pinv[(j, j)] - 2.0 * pinv[(i, j)];
                let d = r.max(0.0).sqrt();
                entries[x * n + y] = d;
                entries[y * n + x] = d;
            }
        }
    }
    let mut m = DistanceMatrix::from_entries(n, entries);
    m.kind = MetricKind::CommuteTime;
    m
}
