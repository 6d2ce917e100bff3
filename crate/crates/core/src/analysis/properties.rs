//! Synthetic checks of what a graph similarity measure should be sensitive to:
//! edge importance (P1), weight awareness (P2), edge-submodularity (P3), focus
//! awareness (P4) and node awareness (P5).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{derive_seed, embed_and_persist};
use crate::distance::{bottleneck, preprocess, wasserstein, EssentialPolicy};
use crate::error::Result;
use crate::graph::{
    delete_nodes, exemplar, generate_gnm, modify_edge_weight, perturb_delete_edges, GraphInstance, PerturbationSpec,
};
use crate::metric::MetricConfig;
use crate::persistence::{Dimensions, PersistencePoint};

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyConfig {
    pub metric: MetricConfig,
    /// Metric for P4. Targeted corruption removes the heaviest edges, which only reads
    /// as "most important" when weight acts as conductance rather than length.
    pub focus_metric: MetricConfig,
    pub q: f64,
    pub apply_root: bool,
    pub essential: EssentialPolicy,
    pub dims: Dimensions,
    /// Random corruptions averaged per level in P4.
    pub focus_repetitions: usize,
}

impl Default for PropertyConfig {
    fn default() -> Self {
        Self {
            metric: MetricConfig::default(),
            focus_metric: MetricConfig::CommuteTime(Default::default()),
            q: 2.0,
            apply_root: false,
            essential: EssentialPolicy::Drop,
            dims: Dimensions::Both,
            focus_repetitions: 1,
        }
    }
}

/// Wasserstein and bottleneck distance between two diagrams of one dimension.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DistancePair {
    pub wasserstein: f64,
    pub bottleneck: f64,
}

/// Preprocessed `PD_0`, `PD_1` point sets of one graph.
struct Fingerprint([Vec<PersistencePoint>; 2]);

impl Fingerprint {
    fn of(g: &GraphInstance, cfg: &PropertyConfig) -> Result<Self> {
        let (_, pd0, pd1) = embed_and_persist(g, &cfg.metric, cfg.dims)?;
        Ok(Self([preprocess(&pd0, cfg.essential)?, preprocess(&pd1, cfg.essential)?]))
    }

    fn compare(&self, other: &Self, cfg: &PropertyConfig) -> [DistancePair; 2] {
        [0, 1].map(|dim| DistancePair {
            wasserstein: wasserstein(&self.0[dim], &other.0[dim], cfg.q, cfg.apply_root),
            bottleneck: bottleneck(&self.0[dim], &other.0[dim]),
        })
    }
}

/// `PD_0` distance matrices over a sequence of progressively damaged graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeletionSeries {
    pub base: String,
    pub labels: Vec<String>,
    pub wasserstein: Vec<Vec<f64>>,
    pub bottleneck: Vec<Vec<f64>>,
    /// Wasserstein distance from the base grows strictly with the amount deleted.
    pub monotone: bool,
}

fn deletion_series(base: &str, variants: Vec<(String, GraphInstance)>, cfg: &PropertyConfig) -> Result<DeletionSeries> {
    let prints = variants.iter().map(|(_, g)| Fingerprint::of(g, cfg)).collect::<Result<Vec<_>>>()?;
    let n = prints.len();
    let mut w = vec![vec![0.0; n]; n];
    let mut b = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let [dim0, _] = prints[i].compare(&prints[j], cfg);
            (w[i][j], w[j][i]) = (dim0.wasserstein, dim0.wasserstein);
            (b[i][j], b[j][i]) = (dim0.bottleneck, dim0.bottleneck);
        }
    }
    let monotone = w[0].windows(2).all(|p| p[1] > p[0]);
    Ok(DeletionSeries {
        base: base.to_owned(),
        labels: variants.into_iter().map(|(l, _)| l).collect(),
        wasserstein: w,
        bottleneck: b,
        monotone,
    })
}

pub const EDGE_IMPORTANCE_BASE: &str = "lollipop:5:4";
pub const NODE_AWARENESS_BASE: &str = "barbell:4:3";

/// P1: cut the tail of a lollipop one bridge at a time, from the far end inwards.
pub fn edge_importance(cfg: &PropertyConfig) -> Result<DeletionSeries> {
    let base = exemplar(EDGE_IMPORTANCE_BASE)?;
    let n = base.vertex_count();
    let mut variants = vec![("e0".to_owned(), base.clone())];
    let mut g = base;
    for i in 1..=4 {
        let (u, v) = (n - 1 - i, n - i);
        let edges: Vec<_> = g.edges().iter().filter(|e| e.key() != (u, v)).map(|e| (e.u, e.v, e.weight)).collect();
        g = GraphInstance::new(g.vertices().to_vec(), edges)?;
        variants.push((format!("e{i}"), g.clone()));
    }
    deletion_series(EDGE_IMPORTANCE_BASE, variants, cfg)
}

/// P5: delete the bridge vertices of a barbell, then one clique vertex.
pub fn node_awareness(cfg: &PropertyConfig) -> Result<DeletionSeries> {
    let base = exemplar(NODE_AWARENESS_BASE)?;
    let order = [4, 5, 6, 7];
    let mut variants = vec![("n0".to_owned(), base.clone())];
    for i in 1..=order.len() {
        variants.push((format!("n{i}"), delete_nodes(&base, &order[..i])?));
    }
    deletion_series(NODE_AWARENESS_BASE, variants, cfg)
}

/// One edge of a P2 graph: `x = W(eA, C^e)`, `y = W(eA, B^e)` per dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightAwarenessPoint {
    pub edge: (usize, usize),
    pub delta_b: f64,
    pub delta_c: f64,
    pub x: [DistancePair; 2],
    pub y: [DistancePair; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightAwarenessSet {
    pub vertices: usize,
    pub edges: usize,
    pub points: Vec<WeightAwarenessPoint>,
}

impl WeightAwarenessSet {
    /// Share of edges with `W(eA, B^e) >= W(eA, C^e)` in `dim`.
    pub fn satisfied_fraction(&self, dim: usize, use_bottleneck: bool) -> f64 {
        let pick = |p: &DistancePair| if use_bottleneck { p.bottleneck } else { p.wasserstein };
        let ok = self.points.iter().filter(|p| pick(&p.y[dim]) >= pick(&p.x[dim])).count();
        ok as f64 / self.points.len().max(1) as f64
    }
}

pub const WEIGHT_AWARENESS_GRAPHS: [(usize, usize); 3] = [(50, 200), (60, 250), (70, 300)];

/// P2: for every edge `e`, raise its weight by `delta ~ U(4, 5)` (graph `B^e`) or
/// `delta' ~ U(2, 3)` (graph `C^e`) and compare both against `A` with `e` removed.
pub fn weight_awareness(cfg: &PropertyConfig, seed: u64) -> Result<Vec<WeightAwarenessSet>> {
    WEIGHT_AWARENESS_GRAPHS
        .iter()
        .enumerate()
        .map(|(i, &(n, m))| {
            let a = generate_gnm(n, m, (0.1, 1.0), derive_seed(seed, &[2, i as u64]))?;
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &[2, i as u64, 1]));
            let points = a
                .edges()
                .iter()
                .map(|e| {
                    let delta_b = rng.gen_range(4.0..5.0);
                    let delta_c = rng.gen_range(2.0..3.0);
                    let rest: Vec<_> =
                        a.edges().iter().filter(|f| f.key() != e.key()).map(|f| (f.u, f.v, f.weight)).collect();
                    let removed = Fingerprint::of(&GraphInstance::new(a.vertices().to_vec(), rest)?, cfg)?;
                    let b = Fingerprint::of(&modify_edge_weight(&a, e.u, e.v, delta_b)?, cfg)?;
                    let c = Fingerprint::of(&modify_edge_weight(&a, e.u, e.v, delta_c)?, cfg)?;
                    Ok(WeightAwarenessPoint {
                        edge: e.key(),
                        delta_b,
                        delta_c,
                        x: removed.compare(&c, cfg),
                        y: removed.compare(&b, cfg),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(WeightAwarenessSet { vertices: n, edges: m, points })
        })
        .collect()
}

/// `Δ(W) = W(A, B) - W(C, D)` for one quadruple of graphs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubmodularityRow {
    pub graphs: [String; 4],
    pub w_q_0: f64,
    pub w_q_1: f64,
    pub w_inf_0: f64,
    pub w_inf_1: f64,
}

pub const SUBMODULARITY_ROWS: [(&str, &str); 4] = [("C5", "K5"), ("P5", "C5"), ("C9", "K9"), ("P9", "C9")];

/// Removes the canonically first edge.
fn without_first_edge(g: &GraphInstance) -> Result<GraphInstance> {
    let rest: Vec<_> = g.edges().iter().skip(1).map(|e| (e.u, e.v, e.weight)).collect();
    GraphInstance::new(g.vertices().to_vec(), rest)
}

/// P3: `A` versus `A` minus one edge, against the same for a denser `C`.
pub fn edge_submodularity(cfg: &PropertyConfig) -> Result<Vec<SubmodularityRow>> {
    SUBMODULARITY_ROWS
        .iter()
        .map(|&(sparse, dense)| {
            let pair = |name: &str| -> Result<[DistancePair; 2]> {
                let g = exemplar(name)?;
                Ok(Fingerprint::of(&g, cfg)?.compare(&Fingerprint::of(&without_first_edge(&g)?, cfg)?, cfg))
            };
            let (ab, cd) = (pair(sparse)?, pair(dense)?);
            Ok(SubmodularityRow {
                graphs: [sparse.to_owned(), format!("e1{sparse}"), dense.to_owned(), format!("e1{dense}")],
                w_q_0: ab[0].wasserstein - cd[0].wasserstein,
                w_q_1: ab[1].wasserstein - cd[1].wasserstein,
                w_inf_0: ab[0].bottleneck - cd[0].bottleneck,
                w_inf_1: ab[1].bottleneck - cd[1].bottleneck,
            })
        })
        .collect()
}

/// P4 curve for one graph: targeted minus random corruption per level and dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocusCurve {
    pub vertices: usize,
    pub edges: usize,
    pub levels: Vec<u32>,
    /// `delta[level][dim]`.
    pub delta: Vec<[DistancePair; 2]>,
}

pub const FOCUS_AWARENESS_GRAPHS: [(usize, usize); 3] = [(35, 70), (100, 500), (120, 300)];
pub const FOCUS_LEVELS: [u32; 7] = [10, 20, 30, 40, 50, 60, 70];

/// P4: delete the heaviest edges versus the same number of random edges.
pub fn focus_awareness(cfg: &PropertyConfig, seed: u64) -> Result<Vec<FocusCurve>> {
    let cfg = &PropertyConfig { metric: cfg.focus_metric, ..cfg.clone() };
    FOCUS_AWARENESS_GRAPHS
        .iter()
        .enumerate()
        .map(|(i, &(n, m))| {
            let a = generate_gnm(n, m, (0.1, 1.0), derive_seed(seed, &[4, i as u64]))?;
            let base = Fingerprint::of(&a, cfg)?;
            let delta = FOCUS_LEVELS
                .iter()
                .map(|&level| {
                    let targeted = base.compare(
                        &Fingerprint::of(&perturb_delete_edges(&a, &PerturbationSpec::targeted(level as f64))?, cfg)?,
                        cfg,
                    );
                    let reps = cfg.focus_repetitions.max(1);
                    let mut random = [DistancePair::default(); 2];
                    for rep in 0..reps {
                        let spec = PerturbationSpec::random(
                            level as f64,
                            derive_seed(seed, &[4, i as u64, level as u64, rep as u64]),
                        );
                        let r = base.compare(&Fingerprint::of(&perturb_delete_edges(&a, &spec)?, cfg)?, cfg);
                        for dim in 0..2 {
                            random[dim].wasserstein += r[dim].wasserstein / reps as f64;
                            random[dim].bottleneck += r[dim].bottleneck / reps as f64;
                        }
                    }
                    Ok([0, 1].map(|dim| DistancePair {
                        wasserstein: targeted[dim].wasserstein - random[dim].wasserstein,
                        bottleneck: targeted[dim].bottleneck - random[dim].bottleneck,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FocusCurve { vertices: n, edges: m, levels: FOCUS_LEVELS.to_vec(), delta })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub edge_importance: DeletionSeries,
    pub weight_awareness: Vec<WeightAwarenessSet>,
    pub edge_submodularity: Vec<SubmodularityRow>,
    pub focus_awareness: Vec<FocusCurve>,
    pub node_awareness: DeletionSeries,
}

pub fn property_suite(cfg: &PropertyConfig, seed: u64) -> Result<PropertyReport> {
    Ok(PropertyReport {
        edge_importance: edge_importance(cfg)?,
        weight_awareness: weight_awareness(cfg, seed)?,
        edge_submodularity: edge_submodularity(cfg)?,
        focus_awareness: focus_awareness(cfg, seed)?,
        node_awareness: node_awareness(cfg)?,
    })
}
