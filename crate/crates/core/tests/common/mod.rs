//! Brute-force oracles shared by the integration tests. Nothing here calls into the
//! library's own algorithms beyond its data types.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempograph::graph::GraphInstance;
use tempograph::metric::DistanceMatrix;
use tempograph::persistence::PersistenceDiagram;

/// Sorted finite pairs and sorted essential births.
#[derive(Debug, Clone, PartialEq)]
pub struct Pairs {
    pub finite: Vec<(f64, f64)>,
    pub essential: Vec<f64>,
}

impl Pairs {
    fn sorted(mut finite: Vec<(f64, f64)>, mut essential: Vec<f64>) -> Self {
        finite.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        essential.sort_by(f64::total_cmp);
        Self { finite, essential }
    }
}

pub fn pairs_of(pd: &PersistenceDiagram) -> Pairs {
    Pairs::sorted(pd.finite.iter().map(|p| (p.birth, p.death)).collect(), pd.essential.clone())
}

struct Cell {
    dim: usize,
    verts: Vec<usize>,
    value: f64,
}

/// `PD_0` and `PD_1` of the Rips complex of `d` (up to triangles, nothing above the
/// largest finite entry) from ranks of lower-left boundary submatrices over GF(2):
/// `(i, j)` is a pair exactly when `r(i, j) - r(i + 1, j) - r(i, j - 1) + r(i + 1, j - 1) = 1`.
pub fn rips_pairs_by_rank(d: &DistanceMatrix) -> [Pairs; 2] {
    let n = d.len();
    let r = d.max_finite();
    let ok = |x: usize, y: usize| d.get(x, y).is_finite() && d.get(x, y) <= r;
    let mut cells: Vec<Cell> = (0..n).map(|v| Cell { dim: 0, verts: vec![v], value: 0.0 }).collect();
    for a in 0..n {
        for b in a + 1..n {
            if ok(a, b) {
                cells.push(Cell { dim: 1, verts: vec![a, b], value: d.get(a, b) });
            }
            for c in b + 1..n {
                if ok(a, b) && ok(a, c) && ok(b, c) {
                    let value = d.get(a, b).max(d.get(a, c)).max(d.get(b, c));
                    cells.push(Cell { dim: 2, verts: vec![a, b, c], value });
                }
            }
        }
    }
    cells.sort_by(|x, y| x.value.total_cmp(&y.value).then(x.dim.cmp(&y.dim)).then(x.verts.cmp(&y.verts)));
    let m = cells.len();
    let pos: HashMap<&[usize], usize> = cells.iter().enumerate().map(|(i, c)| (c.verts.as_slice(), i)).collect();

    let words = m.div_ceil(64);
    let columns: Vec<Vec<u64>> = cells
        .iter()
        .map(|c| {
            let mut col = vec![0u64; words];
            if c.dim > 0 {
                for skip in 0..c.verts.len() {
                    let face: Vec<usize> =
                        c.verts.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    let row = pos[face.as_slice()];
                    col[row / 64] |= 1 << (row % 64);
                }
            }
            col
        })
        .collect();

    // rank[i][j] = rank of rows i.. and the first j columns.
    let mut rank = vec![vec![0usize; m + 1]; m + 1];
    for i in 0..m {
        let mut basis: Vec<Option<Vec<u64>>> = vec![None; m];
        let mut size = 0;
        for j in 0..m {
            let mut v = columns[j].clone();
            for (k, w) in v.iter_mut().enumerate() {
                for bit in 0..64 {
                    if k * 64 + bit < i {
                        *w &= !(1 << bit);
                    }
                }
            }
            while let Some(top) = highest_bit(&v) {
                match &basis[top] {
                    Some(b) => v.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                    None => {
                        basis[top] = Some(v);
                        size += 1;
                        break;
                    }
                }
            }
            rank[i][j + 1] = size;
        }
    }

    let mut paired = vec![false; m];
    let mut finite: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for j in 0..m {
        for i in 0..j {
            let mu = rank[i][j + 1] as i64 - rank[i + 1][j + 1] as i64 - rank[i][j] as i64 + rank[i + 1][j] as i64;
            if mu == 1 {
                paired[i] = true;
                paired[j] = true;
                if cells[i].dim < 2 && cells[j].value > cells[i].value {
                    finite[cells[i].dim].push((cells[i].value, cells[j].value));
                }
            }
        }
    }
    let essential =
        |dim: usize| cells.iter().zip(&paired).filter(|(c, &p)| c.dim == dim && !p).map(|(c, _)| c.value).collect();
    let [f0, f1] = finite;
    [Pairs::sorted(f0, essential(0)), Pairs::sorted(f1, essential(1))]
}

fn highest_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().rev().find(|(_, &w)| w != 0).map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(p: (f64, f64)) -> f64 {
    (p.1 - p.0) / 2.0
}

/// Every partial matching of `x` into `y`, unmatched points going to the diagonal.
/// Calls `visit` with the cost of each matched or diagonal edge.
fn each_matching(x: &[(f64, f64)], y: &[(f64, f64)], visit: &mut impl FnMut(&[f64])) {
    fn go(
        i: usize,
        x: &[(f64, f64)],
        y: &[(f64, f64)],
        used: &mut Vec<bool>,
        costs: &mut Vec<f64>,
        visit: &mut impl FnMut(&[f64]),
    ) {
        if i == x.len() {
            let before = costs.len();
            for (k, &p) in y.iter().enumerate() {
                if !used[k] {
                    costs.push(to_diagonal(p));
                }
            }
            visit(costs);
            costs.truncate(before);
            return;
        }
        costs.push(to_diagonal(x[i]));
        go(i + 1, x, y, used, costs, visit);
        costs.pop();
        for k in 0..y.len() {
            if !used[k] {
                used[k] = true;
                costs.push(linf(x[i], y[k]));
                go(i + 1, x, y, used, costs, visit);
                costs.pop();
                used[k] = false;
            }
        }
    }
    go(0, x, y, &mut vec![false; y.len()], &mut Vec::new(), visit);
}

pub fn brute_bottleneck(x: &[(f64, f64)], y: &[(f64, f64)]) -> f64 {
    let mut best = f64::INFINITY;
    each_matching(x, y, &mut |c| best = best.min(c.iter().copied().fold(0.0, f64::max)));
    best
}

/// Minimum of `sum c^q` over matchings, without the outer root.
pub fn brute_wasserstein(x: &[(f64, f64)], y: &[(f64, f64)], q: f64) -> f64 {
    let mut best = f64::INFINITY;
    each_matching(x, y, &mut |c| best = best.min(c.iter().map(|v| v.powf(q)).sum()));
    best
}

/// Moore–Penrose pseudoinverse of a graph Laplacian, `(L + P)^-1 - P` with `P` the
/// projector onto its null space (indicator vectors of the components), inverted by
/// Gauss–Jordan elimination. Panics if the Penrose conditions fail.
pub fn laplacian_pinv(g: &GraphInstance) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0.0; n]; n];
    for e in g.edges() {
        l[e.u][e.v] -= e.weight;
        l[e.v][e.u] -= e.weight;
        l[e.u][e.u] += e.weight;
        l[e.v][e.v] += e.weight;
    }
    let comp = components(n, g.edges().iter().map(|e| (e.u, e.v)));
    let size = |c: usize| comp.iter().filter(|&&k| k == c).count() as f64;
    let p: Vec<Vec<f64>> =
        (0..n).map(|x| (0..n).map(|y| if comp[x] == comp[y] { 1.0 / size(comp[x]) } else { 0.0 }).collect()).collect();

    let mut a: Vec<Vec<f64>> = (0..n).map(|x| (0..n).map(|y| l[x][y] + p[x][y]).collect()).collect();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|x| (0..n).map(|y| f64::from(u8::from(x == y))).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs())).unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col];
        assert!(scale.abs() > 1e-12, "L + P is singular");
        for k in 0..n {
            a[col][k] /= scale;
            inv[col][k] /= scale;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0.0 {
                let f = a[r][col];
                for k in 0..n {
                    a[r][k] -= f * a[col][k];
                    inv[r][k] -= f * inv[col][k];
                }
            }
        }
    }
    let pinv: Vec<Vec<f64>> = (0..n).map(|x| (0..n).map(|y| inv[x][y] - p[x][y]).collect()).collect();

    let mul = |a: &[Vec<f64>], b: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n).map(|x| (0..n).map(|y| (0..n).map(|k| a[x][k] * b[k][y]).sum()).collect()).collect()
    };
    let close =
        |a: &[Vec<f64>], b: &[Vec<f64>]| a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).abs() < 1e-9);
    assert!(close(&mul(&mul(&l, &pinv), &l), &l), "L L+ L != L");
    assert!(close(&mul(&mul(&pinv, &l), &pinv), &pinv), "L+ L L+ != L+");
    pinv
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = s;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = s;
                    stack.push(y);
                }
            }
        }
    }
    comp
}

/// `sqrt` of effective resistance `L+_xx + L+_yy - 2 L+_xy`; `+inf` across components.
pub fn resistance_distance_pinv(g: &GraphInstance) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let p = laplacian_pinv(g);
    let comp = components(n, g.edges().iter().map(|e| (e.u, e.v)));
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if comp[x] != comp[y] {
                        f64::INFINITY
                    } else {
                        (p[x][x] + p[y][y] - 2.0 * p[x][y]).max(0.0).sqrt()
                    }
                })
                .collect()
        })
        .collect()
}

/// Single-linkage merge heights by brute force: repeatedly join the two closest
/// clusters. Returns the `n - 1` heights (fewer when some pairs are infinite), sorted.
pub fn merge_heights(d: &DistanceMatrix) -> Vec<f64> {
    let n = d.len();
    let mut cluster: Vec<usize> = (0..n).collect();
    let mut heights = Vec::new();
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for a in 0..n {
            for b in a + 1..n {
                let v = d.get(a, b);
                if cluster[a] != cluster[b] && v.is_finite() && best.is_none_or(|(h, _, _)| v < h) {
                    best = Some((v, cluster[a], cluster[b]));
                }
            }
        }
        let Some((h, ca, cb)) = best else { break };
        heights.push(h);
        for c in &mut cluster {
            if *c == cb {
                *c = ca;
            }
        }
    }
    heights.sort_by(f64::total_cmp);
    heights
}

/// Random metric on `n` points: Euclidean distances between points on a coarse grid
/// (so ties are common), or shortest paths in a random graph with small integer
/// weights, possibly disconnected.
pub fn random_metric(n: usize, seed: u64) -> DistanceMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if rng.gen_bool(0.5) {
        let dim = rng.gen_range(1..=3);
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0..5) as f64).collect()).collect();
        DistanceMatrix::from_fn(n, |a, b| {
            pts[a].iter().zip(&pts[b]).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        })
    } else {
        let mut d = vec![vec![f64::INFINITY; n]; n];
        for (a, row) in d.iter_mut().enumerate() {
            row[a] = 0.0;
        }
        let p = rng.gen_range(0.2..0.9);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    let w = rng.gen_range(1..=4) as f64;
                    d[a][b] = w;
                    d[b][a] = w;
                }
            }
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let via = d[a][k] + d[k][b];
                    if via < d[a][b] {
                        d[a][b] = via;
                    }
                }
            }
        }
        DistanceMatrix::from_rows(&d).unwrap()
    }
}

/// Random diagram of up to `max_points` points. With `shared_birth` every birth is 0.
pub fn random_diagram(rng: &mut ChaCha8Rng, max_points: usize, shared_birth: bool) -> Vec<(f64, f64)> {
    let k = rng.gen_range(0..=max_points);
    (0..k)
        .map(|_| {
            let b = if shared_birth { 0.0 } else { rng.gen_range(0..6) as f64 * 0.5 + rng.gen_range(0.0..0.01) };
            (b, b + rng.gen_range(0.05..3.0))
        })
        .collect()
}
