use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use tempograph::analysis::properties::{
    edge_importance, edge_submodularity, focus_awareness, node_awareness, weight_awareness, DeletionSeries,
    PropertyConfig,
};
use tempograph::analysis::stability::{
    stability_study, summarize, surrogate_baseline, StabilityConfig, StabilityMeasure,
};
use tempograph::export::write_stability_csv;
use tempograph::graph::io::read_edge_list;
use tempograph::metric::{CommuteTimeConfig, MetricConfig, MetricKind};

use crate::args::{parse_str, ComparisonArgs};

type Result<T = ()> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Edge-submodularity deltas on the cycle/complete/path exemplars.
    Table1,
    /// Edge-deletion stability of diagram distances and matrix norms.
    Stability,
    /// Edge importance on a lollipop graph.
    Property1,
    /// Weight awareness on three random graphs.
    Property2,
    /// Focus awareness: targeted versus random corruption.
    Property4,
    /// Node awareness on a barbell graph.
    Property5,
    /// Table 1 and properties 1, 2, 4, 5.
    Properties,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(value_enum)]
    pub which: Experiment,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Output directory for CSV files and the summary.
    #[arg(long, default_value = "out/experiments")]
    pub out: PathBuf,
    /// Deletion steps 1..=N percent (stability).
    #[arg(long, default_value_t = 20)]
    pub steps: u32,
    /// Repetitions per step (stability).
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    /// Baseline edge list `u v [w]` for the stability study; a seeded G(554, 2276) by default.
    #[arg(long)]
    pub baseline: Option<PathBuf>,
    /// Metric for the focus-awareness test.
    #[arg(long, default_value = "ct", value_parser = parse_str::<MetricKind>)]
    pub focus_metric: MetricKind,
    /// Random corruptions averaged per level (focus awareness).
    #[arg(long, default_value_t = 1)]
    pub focus_reps: usize,
    #[command(flatten)]
    pub comparison: ComparisonArgs,
}

impl ExperimentArgs {
    /// Root flag as given, or `default` when neither `--root` nor `--no-root` was passed.
    fn apply_root(&self, default: bool) -> bool {
        if self.comparison.root {
            true
        } else if self.comparison.no_root {
            false
        } else {
            default
        }
    }

    fn property_config(&self) -> PropertyConfig {
        let c = &self.comparison;
        let focus_metric = match self.focus_metric {
            MetricKind::ShortestPath => MetricConfig::ShortestPath(c.weight_scheme),
            MetricKind::CommuteTime => MetricConfig::CommuteTime(CommuteTimeConfig {
                weight_scheme: c.weight_scheme,
                eigen_count: c.k_eig,
                ..Default::default()
            }),
        };
        PropertyConfig {
            metric: c.metric_config(),
            focus_metric,
            q: c.q,
            apply_root: self.apply_root(false),
            essential: c.essential,
            focus_repetitions: self.focus_reps,
            ..Default::default()
        }
    }
}

pub fn run(args: &ExperimentArgs) -> Result {
    fs::create_dir_all(&args.out)?;
    let mut summary = String::new();
    let cfg = args.property_config();
    let all = args.which == Experiment::Properties;
    if all || args.which == Experiment::Table1 {
        table1(&cfg, &args.out, &mut summary)?;
    }
    if all || args.which == Experiment::Property1 {
        series("property1", &edge_importance(&cfg)?, &args.out, &mut summary)?;
    }
    if all || args.which == Experiment::Property2 {
        property2(&cfg, args.seed, &args.out, &mut summary)?;
    }
    if all || args.which == Experiment::Property4 {
        property4(&cfg, args.seed, &args.out, &mut summary)?;
    }
    if all || args.which == Experiment::Property5 {
        series("property5", &node_awareness(&cfg)?, &args.out, &mut summary)?;
    }
    if args.which == Experiment::Stability {
        stability(args, &mut summary)?;
    }
    print!("{summary}");
    let name = args.which.to_possible_value().map_or_else(|| "summary".to_owned(), |v| v.get_name().to_owned());
    fs::write(args.out.join(format!("{name}_summary.txt")), summary)?;
    Ok(())
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn table1(cfg: &PropertyConfig, out: &Path, summary: &mut String) -> Result {
    let rows = edge_submodularity(cfg)?;
    let mut w = create(out, "table1.csv")?;
    writeln!(w, "A,B,C,D,dW_q_0,dW_q_1,dW_inf_0,dW_inf_1")?;
    writeln!(summary, "Edge-submodularity, delta = W(A, B) - W(C, D)")?;
    writeln!(
        summary,
        "{:<5} {:<6} {:<5} {:<6} {:>10} {:>10} {:>10} {:>10}",
        "A", "B", "C", "D", "W_q,0", "W_q,1", "W_inf,0", "W_inf,1"
    )?;
    for r in &rows {
        let [a, b, c, d] = &r.graphs;
        writeln!(w, "{a},{b},{c},{d},{:?},{:?},{:?},{:?}", r.w_q_0, r.w_q_1, r.w_inf_0, r.w_inf_1)?;
        writeln!(
            summary,
            "{a:<5} {b:<6} {c:<5} {d:<6} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
            r.w_q_0, r.w_q_1, r.w_inf_0, r.w_inf_1
        )?;
    }
    writeln!(summary)?;
    Ok(())
}

fn series(name: &str, s: &DeletionSeries, out: &Path, summary: &mut String) -> Result {
    for (kind, m) in [("wasserstein", &s.wasserstein), ("bottleneck", &s.bottleneck)] {
        let mut w = create(out, &format!("{name}_{kind}.csv"))?;
        writeln!(w, ",{}", s.labels.join(","))?;
        for (label, row) in s.labels.iter().zip(m) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            writeln!(w, "{label},{}", cells.join(","))?;
        }
    }
    writeln!(summary, "{name} on {}: PD_0 distance from the base graph", s.base)?;
    writeln!(summary, "  {:<12} {}", "", s.labels.join("       "))?;
    for (kind, m) in [("wasserstein", &s.wasserstein), ("bottleneck", &s.bottleneck)] {
        let cells: Vec<String> = m[0].iter().map(|v| format!("{v:<8.4}")).collect();
        writeln!(summary, "  {kind:<12} {}", cells.join(""))?;
    }
    writeln!(summary, "  strictly increasing (wasserstein): {}\n", s.monotone)?;
    Ok(())
}

fn property2(cfg: &PropertyConfig, seed: u64, out: &Path, summary: &mut String) -> Result {
    writeln!(summary, "Weight awareness: share of edges with W(eA, B) >= W(eA, C)")?;
    writeln!(summary, "  {:<14} {:>8} {:>8} {:>8} {:>8}", "graph", "W_q,0", "W_inf,0", "W_q,1", "W_inf,1")?;
    for (i, set) in weight_awareness(cfg, seed)?.iter().enumerate() {
        let mut w = create(out, &format!("property2_A{}.csv", i + 1))?;
        writeln!(w, "u,v,delta_b,delta_c,x_w0,y_w0,x_b0,y_b0,x_w1,y_w1,x_b1,y_b1")?;
        for p in &set.points {
            let (x, y) = (p.x, p.y);
            writeln!(
                w,
                "{},{},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                p.edge.0,
                p.edge.1,
                p.delta_b,
                p.delta_c,
                x[0].wasserstein,
                y[0].wasserstein,
                x[0].bottleneck,
                y[0].bottleneck,
                x[1].wasserstein,
                y[1].wasserstein,
                x[1].bottleneck,
                y[1].bottleneck
            )?;
        }
        writeln!(
            summary,
            "  {:<14} {:>8.3} {:>8.3} {:>8.3} {:>8.3}",
            format!("G({}, {})", set.vertices, set.edges),
            set.satisfied_fraction(0, false),
            set.satisfied_fraction(0, true),
            set.satisfied_fraction(1, false),
            set.satisfied_fraction(1, true)
        )?;
    }
    writeln!(summary)?;
    Ok(())
}

fn property4(cfg: &PropertyConfig, seed: u64, out: &Path, summary: &mut String) -> Result {
    let curves = focus_awareness(cfg, seed)?;
    let mut w = create(out, "property4.csv")?;
    writeln!(w, "vertices,edges,level,dim,delta_wasserstein,delta_bottleneck")?;
    writeln!(summary, "Focus awareness: W(A, targeted) - W(A, random), dimension 0 Wasserstein")?;
    for c in &curves {
        for (level, d) in c.levels.iter().zip(&c.delta) {
            for (dim, pair) in d.iter().enumerate() {
                writeln!(w, "{},{},{level},{dim},{:?},{:?}", c.vertices, c.edges, pair.wasserstein, pair.bottleneck)?;
            }
        }
        let cells: Vec<String> = c.delta.iter().map(|d| format!("{:>9.3}", d[0].wasserstein)).collect();
        writeln!(summary, "  {:<14}{}", format!("G({}, {})", c.vertices, c.edges), cells.join(""))?;
    }
    writeln!(summary)?;
    Ok(())
}

fn stability(args: &ExperimentArgs, summary: &mut String) -> Result {
    let c = &args.comparison;
    let g0 = match &args.baseline {
        Some(path) => read_edge_list(BufReader::new(File::open(path)?))?,
        None => surrogate_baseline(args.seed)?,
    };
    let cfg = StabilityConfig {
        steps: (1..=args.steps).collect(),
        repetitions: args.reps,
        metric: c.metric_config(),
        dim: c.dim as usize,
        q: c.q,
        apply_root: args.apply_root(true),
        essential: c.essential,
        seed: args.seed,
    };
    let records = stability_study(&g0, &cfg)?;
    let label = format!("{}-dim{}", c.metric, c.dim);
    write_stability_csv(&records, &label, create(&args.out, "stability.csv")?)?;

    let mut w = create(&args.out, "stability_summary.csv")?;
    writeln!(w, "measure,step,q1,median,q3,undefined")?;
    writeln!(
        summary,
        "Stability on {} vertices, {} edges ({label}); normalized median [IQR], undefined count",
        g0.vertex_count(),
        g0.edge_count()
    )?;
    let tables: Vec<_> = StabilityMeasure::ALL.iter().map(|&m| summarize(&records, m)).collect();
    let header: Vec<String> = StabilityMeasure::ALL.iter().map(|m| format!("{:>22}", m.name())).collect();
    writeln!(summary, "  step{}", header.join(""))?;
    for (m, rows) in StabilityMeasure::ALL.iter().zip(&tables) {
        for s in rows {
            writeln!(w, "{},{},{:?},{:?},{:?},{}", m.name(), s.step, s.q1, s.median, s.q3, s.undefined)?;
        }
    }
    for i in 0..tables[0].len() {
        let cells: Vec<String> = tables
            .iter()
            .map(|t| {
                let s = &t[i];
                format!("{:>22}", format!("{:.3} [{:.3}] {}", s.median, s.iqr(), s.undefined))
            })
            .collect();
        writeln!(summary, "  {:>4}{}", tables[0][i].step, cells.join(""))?;
    }
    writeln!(summary)?;
    Ok(())
}
