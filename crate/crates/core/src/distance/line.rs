//! Exact matching when every point of both diagrams shares one birth value, as in
//! `PD_0` of a Rips filtration. Points then live on a line, and for costs that are
//! convex in the death gap an optimal partial matching never crosses, so a dynamic
//! program over the sorted deaths replaces the cubic assignment solver.

use super::{diagonal_cost, linf};
use crate::persistence::PersistencePoint;

/// The birth value shared by all points of `x` and `y`, if there is one.
pub(super) fn common_birth(x: &[PersistencePoint], y: &[PersistencePoint]) -> Option<f64> {
    let b = x.iter().chain(y).next().map_or(0.0, |p| p.birth);
    x.iter().chain(y).all(|p| p.birth == b).then_some(b)
}

fn sorted(points: &[PersistencePoint]) -> Vec<PersistencePoint> {
    let mut v = points.to_vec();
    v.sort_by(|a, b| a.death.total_cmp(&b.death));
    v
}

/// Minimum over non-crossing partial matchings of `combine`-accumulated costs.
fn solve(
    x: &[PersistencePoint],
    y: &[PersistencePoint],
    cost: impl Fn(f64) -> f64,
    combine: impl Fn(f64, f64) -> f64,
) -> f64 {
    let (x, y) = (sorted(x), sorted(y));
    let pair = |a: &PersistencePoint, b: &PersistencePoint| cost(linf((a.birth, a.death), (b.birth, b.death)));
    // prev[j]: best value for x[..i] against y[..j].
    let mut prev = vec![0.0; y.len() + 1];
    for j in 1..=y.len() {
        prev[j] = combine(prev[j - 1], cost(diagonal_cost(&y[j - 1])));
    }
    let mut cur = vec![0.0; y.len() + 1];
    for a in &x {
        let skip_a = cost(diagonal_cost(a));
        cur[0] = combine(prev[0], skip_a);
        for j in 1..=y.len() {
            let b = &y[j - 1];
            cur[j] = combine(prev[j], skip_a)
                .min(combine(cur[j - 1], cost(diagonal_cost(b))))
                .min(combine(prev[j - 1], pair(a, b)));
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

pub(super) fn wasserstein_sum(x: &[PersistencePoint], y: &[PersistencePoint], q: f64) -> f64 {
    solve(x, y, |c| c.powf(q), |acc, c| acc + c)
}

pub(super) fn bottleneck(x: &[PersistencePoint], y: &[PersistencePoint]) -> f64 {
    solve(x, y, |c| c, f64::max)
}
