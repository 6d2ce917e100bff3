//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each, and exits
//! nonzero if any failed. Run with `cargo test -p tempograph --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::{
    brute_bottleneck, brute_wasserstein, merge_heights, pairs_of, random_diagram, random_metric,
    resistance_distance_pinv, rips_pairs_by_rank,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempograph::analysis::properties::{edge_submodularity, property_suite, PropertyConfig};
use tempograph::analysis::stability::{summarize, surrogate_baseline, StabilityMeasure};
use tempograph::analysis::{classical_mds, kmeans, stability_study, StabilityConfig};
use tempograph::distance::{bottleneck, wasserstein};
use tempograph::export::to_json_bytes;
use tempograph::graph::io::StreamFormat;
use tempograph::graph::{exemplar, generate_gnm, perturb_delete_edges};
use tempograph::metric::{commute_time_matrix, shortest_path_matrix, CommuteTimeConfig, EigenCount, WeightScheme};
use tempograph::persistence::{
    compute_persistence, diagrams, pd0_single_linkage, rips_filtration, Dimensions, PersistencePoint, RMax,
};
use tempograph::pipeline::{load_stream, run_pipeline, PipelineConfig};

const SEED: u64 = 7;

const TABLE1_TOL: f64 = 1e-12;
const TABLE1_BUDGET: Duration = Duration::from_secs(5);
/// `(A, B, C, D)` and `(W_2,0, W_2,1, W_inf,0, W_inf,1)` deltas.
const TABLE1: [([&str; 4], [f64; 4]); 4] = [
    (["C5", "e1C5", "K5", "e1K5"], [0.0, 0.25, 0.0, 0.5]),
    (["P5", "e1P5", "C5", "e1C5"], [0.25, -0.25, 0.5, -0.5]),
    (["C9", "e1C9", "K9", "e1K9"], [0.0, 1.0, 0.0, 1.0]),
    (["P9", "e1P9", "C9", "e1C9"], [0.25, -1.0, 0.5, -1.0]),
];

const ORACLE_METRICS: usize = 200;
const ORACLE_GRAPHS: usize = 100;
const ORACLE_DIAGRAM_PAIRS: usize = 1000;
const COMMUTE_TIME_TOL: f64 = 1e-8;
const MATCHING_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);

const STABILITY_MIN_NARROWER_STEPS: usize = 15;
const STABILITY_BUDGET: Duration = Duration::from_secs(15 * 60);

const MDS_TOL: f64 = 1e-8;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, format!("took {elapsed:.1?}, budget {budget:?}"))
}

fn table1() -> Check {
    let start = Instant::now();
    let rows = edge_submodularity(&PropertyConfig::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(rows.len() == TABLE1.len(), format!("{} rows", rows.len()))?;
    for (row, (graphs, expected)) in rows.iter().zip(TABLE1) {
        ensure(row.graphs == graphs.map(str::to_owned), format!("row {:?}", row.graphs))?;
        let got = [row.w_q_0, row.w_q_1, row.w_inf_0, row.w_inf_1];
        for (g, e) in got.iter().zip(expected) {
            ensure((g - e).abs() <= TABLE1_TOL, format!("{graphs:?}: got {got:?}, expected {expected:?}"))?;
        }
    }
    within(elapsed, TABLE1_BUDGET)?;
    Ok(format!("4 rows within {TABLE1_TOL:e} in {elapsed:.1?}"))
}

fn oracles() -> Check {
    let start = Instant::now();
    for seed in 0..ORACLE_METRICS as u64 {
        let n = 2 + (seed as usize % 13);
        let d = random_metric(n, seed);
        let (reduced, _) = compute_persistence(&rips_filtration(&d, RMax::Diameter).map_err(|e| e.to_string())?);
        let linkage = pd0_single_linkage(&d, RMax::Diameter).map_err(|e| e.to_string())?;
        ensure(reduced == linkage, format!("metric {seed}: reduction and union-find PD_0 differ"))?;
        let mut deaths: Vec<f64> = linkage.finite.iter().map(|p| p.death).collect();
        deaths.sort_by(f64::total_cmp);
        let heights: Vec<f64> = merge_heights(&d).into_iter().filter(|&h| h > 0.0).collect();
        ensure(deaths == heights, format!("metric {seed}: deaths are not the merge heights"))?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let full = CommuteTimeConfig { eigen_count: EigenCount::All, ..Default::default() };
    for i in 0..ORACLE_GRAPHS {
        let n = rng.gen_range(2..=30);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = generate_gnm(n, m, (0.1, 1.0), rng.gen()).map_err(|e| e.to_string())?;
        let ct = commute_time_matrix(&g, &full).map_err(|e| e.to_string())?;
        let oracle = resistance_distance_pinv(&g);
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (ct.get(x, y), oracle[x][y]);
                ensure(a == b || (a - b).abs() <= COMMUTE_TIME_TOL, format!("graph {i} ({x}, {y}): {a} vs {b}"))?;
            }
        }
    }

    for i in 0..ORACLE_DIAGRAM_PAIRS {
        let shared = i % 2 == 0;
        let (x, y) = (random_diagram(&mut rng, 5, shared), random_diagram(&mut rng, 5, shared));
        let px: Vec<_> = x.iter().map(|&(b, d)| PersistencePoint::new(b, d)).collect();
        let py: Vec<_> = y.iter().map(|&(b, d)| PersistencePoint::new(b, d)).collect();
        let b = brute_bottleneck(&x, &y);
        ensure((bottleneck(&px, &py) - b).abs() <= MATCHING_TOL, format!("pair {i}: bottleneck"))?;
        for q in [1.0, 2.0] {
            let w = brute_wasserstein(&x, &y, q).powf(1.0 / q);
            ensure((wasserstein(&px, &py, q, true) - w).abs() <= MATCHING_TOL, format!("pair {i}: W_{q}"))?;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, ORACLE_BUDGET)?;
    Ok(format!(
        "{ORACLE_METRICS} metrics exact, {ORACLE_GRAPHS} graphs within {COMMUTE_TIME_TOL:e}, {ORACLE_DIAGRAM_PAIRS} pairs within {MATCHING_TOL:e}, {elapsed:.1?}"
    ))
}

fn cycle_homology() -> Check {
    for (name, death) in [("C4", 2.0), ("C9", 3.0)] {
        let d = shortest_path_matrix(&exemplar(name).map_err(|e| e.to_string())?, WeightScheme::Length);
        let (_, pd1) = diagrams(&d, RMax::Diameter, Dimensions::Both).map_err(|e| e.to_string())?;
        ensure(
            pd1.finite == vec![PersistencePoint::new(1.0, death)] && pd1.essential.is_empty(),
            format!("{name}: {pd1:?}"),
        )?;
        ensure(pairs_of(&pd1) == rips_pairs_by_rank(&d)[1], format!("{name}: rank oracle disagrees"))?;
    }
    Ok("PD_1(C4) = {(1, 2)}, PD_1(C9) = {(1, 3)}".into())
}

fn properties() -> Check {
    let report = property_suite(&PropertyConfig::default(), SEED).map_err(|e| e.to_string())?;
    for set in &report.weight_awareness {
        for bottleneck in [false, true] {
            let f = set.satisfied_fraction(0, bottleneck);
            ensure(f == 1.0, format!("P2 G({}, {}): dim-0 fraction {f}", set.vertices, set.edges))?;
        }
    }
    let mut lowest = f64::INFINITY;
    for c in &report.focus_awareness {
        for (level, d) in c.levels.iter().zip(&c.delta) {
            lowest = lowest.min(d[0].wasserstein);
            ensure(
                d[0].wasserstein >= 0.0,
                format!("P4 G({}, {}) at {level}%: {}", c.vertices, c.edges, d[0].wasserstein),
            )?;
        }
    }
    for s in [&report.edge_importance, &report.node_awareness] {
        let row = &s.wasserstein[0];
        ensure(row.windows(2).all(|w| w[1] > w[0]), format!("{}: {row:?}", s.base))?;
    }
    Ok(format!("P2 dim-0 100% on 3 graphs, P4 dim-0 min delta {lowest:.3}, P1/P5 strictly increasing"))
}

fn stability() -> Check {
    let start = Instant::now();
    let g0 = surrogate_baseline(SEED).map_err(|e| e.to_string())?;
    let cfg = StabilityConfig { seed: SEED, ..Default::default() };
    let records = stability_study(&g0, &cfg).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(records.len() == 400, format!("{} records", records.len()))?;

    let w2 = summarize(&records, StabilityMeasure::Wasserstein);
    let winf = summarize(&records, StabilityMeasure::Bottleneck);
    for w in w2.windows(2) {
        ensure(w[1].median >= w[0].median, format!("W_2 median drops at step {}", w[1].step))?;
    }
    let narrower = w2.iter().zip(&winf).filter(|(a, b)| a.iqr() < b.iqr()).count();
    ensure(narrower >= STABILITY_MIN_NARROWER_STEPS, format!("IQR(W_2) < IQR(W_inf) on {narrower}/20 steps"))?;

    let mut disconnected = 0;
    for r in &records {
        let g = perturb_delete_edges(&g0, &cfg.deletion(r.step, r.repetition)).map_err(|e| e.to_string())?;
        let cut = !g.is_connected();
        disconnected += usize::from(cut);
        ensure(
            r.max_norm.is_undefined() == cut && r.frobenius.is_undefined() == cut,
            format!(
                "step {} rep {}: disconnected = {cut}, norms {:?} {:?}",
                r.step, r.repetition, r.max_norm, r.frobenius
            ),
        )?;
    }
    within(elapsed, STABILITY_BUDGET)?;
    Ok(format!(
        "W_2 medians non-decreasing, IQR(W_2) < IQR(W_inf) on {narrower}/20 steps, {disconnected} disconnected runs flagged, {elapsed:.1?}"
    ))
}

fn mds_and_kmeans() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..100 {
        let (n, dim) = (rng.gen_range(2..=30), rng.gen_range(1..=4));
        let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect();
        let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
        let d: Vec<Vec<f64>> = pts.iter().map(|a| pts.iter().map(|b| dist(a, b)).collect()).collect();
        let coords = classical_mds(&d, dim).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let err = (dist(&coords[i], &coords[j]) - d[i][j]).abs();
                ensure(err <= MDS_TOL, format!("MDS case {case}: error {err:e}"))?;
            }
        }

        let k = rng.gen_range(1..=n.min(6));
        let km = kmeans(&pts, k, case).map_err(|e| e.to_string())?;
        ensure(km.inertia_history.windows(2).all(|w| w[1] <= w[0]), format!("k-means case {case}: inertia rose"))?;
        let all = kmeans(&pts, n, case).map_err(|e| e.to_string())?;
        ensure(all.inertia() == 0.0, format!("k-means case {case}: k = n leaves inertia {}", all.inertia()))?;
    }
    Ok(format!("100 configurations: MDS within {MDS_TOL:e}, inertia monotone, k = n gives 0"))
}

fn determinism() -> Check {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let run = |threads: usize| -> Result<Vec<u8>, String> {
        let stream = load_stream(&root.join("contacts.txt"), StreamFormat::Generic, Some(&root.join("categories.txt")))
            .map_err(|e| e.to_string())?;
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(|e| e.to_string())?;
        let out = pool
            .install(|| run_pipeline(stream, "contacts.txt", &PipelineConfig::default()))
            .map_err(|e| e.to_string())?;
        to_json_bytes(&out.bundle).map_err(|e| e.to_string())
    };
    let reference = run(1)?;
    for threads in [1, 2, 3, 8] {
        ensure(run(threads)? == reference, format!("bundle differs with {threads} threads"))?;
    }
    Ok(format!("{} bytes identical across 1, 2, 3 and 8 threads", reference.len()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("table1-exact", table1),
        ("oracle-equivalences", oracles),
        ("cycle-homology", cycle_homology),
        ("property-suite", properties),
        ("stability-study", stability),
        ("mds-kmeans", mds_and_kmeans),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
