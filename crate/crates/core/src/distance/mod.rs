//! Bottleneck and Wasserstein distances between persistence diagrams.
//!
//! Both diagrams are augmented with the diagonal projections of the other's points, which
//! turns the partial matching into a square assignment problem. Ground costs are L∞
//! distances in the plane; two diagonal slots match at cost 0.

mod assignment;
mod line;
mod matching;

pub use assignment::hungarian;
pub use matching::hopcroft_karp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::{PersistenceDiagram, PersistencePoint};

/// What happens to classes that never die before diagrams are compared.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EssentialPolicy {
    #[default]
    Drop,
    /// Essential classes become `(birth, cap)`.
    Cap(f64),
    /// `Cap` at the largest finite death (or essential birth) across all diagrams being
    /// compared; see [`EssentialPolicy::resolve`].
    CapAtMax,
}

impl EssentialPolicy {
    /// Replaces [`EssentialPolicy::CapAtMax`] by a concrete cap over `diagrams`.
    pub fn resolve<'a>(self, diagrams: impl IntoIterator<Item = &'a PersistenceDiagram>) -> Self {
        match self {
            Self::CapAtMax => Self::Cap(
                diagrams
                    .into_iter()
                    .flat_map(|pd| pd.finite.iter().map(|p| p.death).chain(pd.essential.iter().copied()))
                    .fold(0.0, f64::max),
            ),
            other => other,
        }
    }
}

/// Parses `drop`, `cap=V` or `cap=max`.
impl std::str::FromStr for EssentialPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('=') {
            None if s == "drop" => Ok(Self::Drop),
            Some(("cap", "max")) => Ok(Self::CapAtMax),
            Some(("cap", v)) => match v.parse::<f64>() {
                Ok(cap) if cap.is_finite() => Ok(Self::Cap(cap)),
                _ => Err(Error::InvalidParameter(format!("invalid cap `{v}`"))),
            },
            _ => Err(Error::InvalidParameter(format!("unknown essential policy `{s}`"))),
        }
    }
}

impl std::fmt::Display for EssentialPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Drop => f.write_str("drop"),
            Self::Cap(v) => write!(f, "cap={v}"),
            Self::CapAtMax => f.write_str("cap=max"),
        }
    }
}

/// Finite point multiset of `pd` under `policy`.
///
/// An unresolved [`EssentialPolicy::CapAtMax`] is resolved against `pd` alone.
pub fn preprocess(pd: &PersistenceDiagram, policy: EssentialPolicy) -> Result<Vec<PersistencePoint>> {
    let policy = policy.resolve([pd]);
    let mut points = pd.finite.clone();
    if let EssentialPolicy::Cap(cap) = policy {
        if let Some(p) = pd.finite.iter().find(|p| p.death > cap) {
            return Err(Error::CapBelowDeath { cap, death: p.death });
        }
        if let Some(&b) = pd.essential.iter().find(|&&b| b > cap) {
            return Err(Error::CapBelowDeath { cap, death: b });
        }
        points.extend(pd.essential.iter().map(|&b| PersistencePoint::new(b, cap)));
    }
    Ok(points)
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn diagonal_projection(p: &PersistencePoint) -> (f64, f64) {
    let m = 0.5 * (p.birth + p.death);
    (m, m)
}

fn diagonal_cost(p: &PersistencePoint) -> f64 {
    linf((p.birth, p.death), diagonal_projection(p))
}

/// Square cost matrix of the diagonal-augmented matching between `x` and `y`.
///
/// Rows are `x` followed by the projections of `y`; columns are `y` followed by the
/// projections of `x`.
#[derive(Debug, Clone)]
pub struct MatchingProblem {
    pub size: usize,
    pub cost: Vec<f64>,
}

impl MatchingProblem {
    pub fn new(x: &[PersistencePoint], y: &[PersistencePoint]) -> Self {
        let (nx, ny) = (x.len(), y.len());
        let size = nx + ny;
        let left: Vec<((f64, f64), bool)> = x
            .iter()
            .map(|p| ((p.birth, p.death), false))
            .chain(y.iter().map(|p| (diagonal_projection(p), true)))
            .collect();
        let right: Vec<((f64, f64), bool)> = y
            .iter()
            .map(|p| ((p.birth, p.death), false))
            .chain(x.iter().map(|p| (diagonal_projection(p), true)))
            .collect();
        let mut cost = Vec::with_capacity(size * size);
        for &(a, a_diag) in &left {
            for &(b, b_diag) in &right {
                cost.push(if a_diag && b_diag { 0.0 } else { linf(a, b) });
            }
        }
        Self { size, cost }
    }
}

/// Bottleneck distance `W_inf`.
pub fn bottleneck(x: &[PersistencePoint], y: &[PersistencePoint]) -> f64 {
    if line::common_birth(x, y).is_some() {
        line::bottleneck(x, y)
    } else {
        bottleneck_by_matching(x, y)
    }
}

/// General bottleneck solver: the smallest threshold admitting a perfect matching,
/// searched over the sorted distinct costs.
pub fn bottleneck_by_matching(x: &[PersistencePoint], y: &[PersistencePoint]) -> f64 {
    let problem = MatchingProblem::new(x, y);
    let n = problem.size;
    if n == 0 {
        return 0.0;
    }
    let mut candidates = problem.cost.clone();
    candidates.sort_unstable_by(f64::total_cmp);
    candidates.dedup();

    let feasible = |t: f64| {
        let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| problem.cost[i * n + j] <= t).collect()).collect();
        hopcroft_karp(&adj, n) == n
    };
    // The largest candidate is always feasible.
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if feasible(candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Wasserstein distance: optimal assignment on costs raised to `q`; the `1/q` root is
/// applied only when `apply_root` is set.
pub fn wasserstein(x: &[PersistencePoint], y: &[PersistencePoint], q: f64, apply_root: bool) -> f64 {
    assert!(q > 0.0, "q must be positive");
    let total = if q >= 1.0 && line::common_birth(x, y).is_some() {
        line::wasserstein_sum(x, y, q)
    } else {
        wasserstein_by_assignment(x, y, q)
    };
    if apply_root {
        total.powf(1.0 / q)
    } else {
        total
    }
}

/// General solver for `sum cost^q` over the augmented assignment problem (no root).
pub fn wasserstein_by_assignment(x: &[PersistencePoint], y: &[PersistencePoint], q: f64) -> f64 {
    let mut problem = MatchingProblem::new(x, y);
    for c in &mut problem.cost {
        *c = c.powf(q);
    }
    hungarian(&problem.cost, problem.size).0
}

/// Bottleneck or Wasserstein.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DiagramDistance {
    Bottleneck,
    Wasserstein { q: f64, apply_root: bool },
}

impl DiagramDistance {
    pub fn wasserstein(q: f64, apply_root: bool) -> Self {
        Self::Wasserstein { q, apply_root }
    }

    pub fn eval(&self, x: &[PersistencePoint], y: &[PersistencePoint]) -> f64 {
        match *self {
            Self::Bottleneck => bottleneck(x, y),
            Self::Wasserstein { q, apply_root } => wasserstein(x, y, q, apply_root),
        }
    }
}
