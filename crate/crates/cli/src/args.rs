use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tempograph::analysis::DiagramDistanceConfig;
use tempograph::distance::{DiagramDistance, EssentialPolicy};
use tempograph::graph::io::StreamFormat;
use tempograph::graph::{IngestConfig, VertexScope};
use tempograph::metric::{CommuteTimeConfig, EigenCount, Eigenproblem, MetricConfig, MetricKind, WeightScheme};
use tempograph::pipeline::{load_stream, run_pipeline, write_outputs, PipelineConfig};

use crate::experiments::ExperimentArgs;

/// Structural change detection in time-varying graphs with persistent homology.
#[derive(Debug, Parser)]
#[command(name = "tempograph", version)]
pub struct Cli {
    /// Worker threads; 0 or unset uses all available cores.
    #[arg(long, global = true, env = "TEMPOGRAPH_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline on a temporal edge stream and write bundle.json.
    Run(RunArgs),
    /// Reproduce the synthetic experiments.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceArg {
    Bottleneck,
    Wasserstein,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Generic,
    Sociopatterns,
    Snap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Universe,
    Window,
}

/// Metric and diagram-comparison settings shared by `run` and the experiments.
#[derive(Debug, Clone, Args)]
pub struct ComparisonArgs {
    /// Metric embedding: `sp` (shortest path) or `ct` (commute time).
    #[arg(long, default_value = "sp", value_parser = parse_str::<MetricKind>)]
    pub metric: MetricKind,
    /// Edge weight as `length` or its `inverse`.
    #[arg(long, default_value = "length", value_parser = parse_str::<WeightScheme>)]
    pub weight_scheme: WeightScheme,
    /// Commute-time eigenpairs: a count, `all` or `auto`.
    #[arg(long, default_value = "auto", value_parser = parse_str::<EigenCount>)]
    pub k_eig: EigenCount,
    /// Solve the degree-generalized eigenproblem for commute time.
    #[arg(long)]
    pub generalized: bool,
    /// Homology dimension compared (0 or 1).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub dim: u8,
    #[arg(long, value_enum, default_value = "wasserstein")]
    pub distance: DistanceArg,
    /// Wasserstein exponent.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Apply the outer 1/q root of the Wasserstein distance (default).
    #[arg(long, overrides_with = "no_root")]
    pub root: bool,
    /// Report the plain sum of matched costs raised to q.
    #[arg(long, overrides_with = "root")]
    pub no_root: bool,
    /// Essential classes: `drop`, `cap=V` or `cap=max`.
    #[arg(long, default_value = "drop", value_parser = parse_str::<EssentialPolicy>)]
    pub essential: EssentialPolicy,
}

impl ComparisonArgs {
    pub fn metric_config(&self) -> MetricConfig {
        match self.metric {
            MetricKind::ShortestPath => MetricConfig::ShortestPath(self.weight_scheme),
            MetricKind::CommuteTime => MetricConfig::CommuteTime(CommuteTimeConfig {
                eigen_count: self.k_eig,
                eigenproblem: if self.generalized { Eigenproblem::DegreeGeneralized } else { Eigenproblem::Standard },
                weight_scheme: self.weight_scheme,
            }),
        }
    }

    pub fn apply_root(&self) -> bool {
        !self.no_root
    }

    pub fn config(&self) -> Result<DiagramDistanceConfig, String> {
        if !(self.q > 0.0 && self.q.is_finite()) {
            return Err(format!("--q must be positive, got {}", self.q));
        }
        Ok(DiagramDistanceConfig {
            metric: self.metric_config(),
            dim: self.dim as usize,
            distance: match self.distance {
                DistanceArg::Bottleneck => DiagramDistance::Bottleneck,
                DistanceArg::Wasserstein => DiagramDistance::wasserstein(self.q, self.apply_root()),
            },
            essential: self.essential,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Temporal edge stream.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "generic")]
    pub format: FormatArg,
    /// Optional `vertex category` file.
    #[arg(long)]
    pub categories: Option<PathBuf>,
    /// Window length in time units.
    #[arg(long, default_value_t = 86_400.0)]
    pub window: f64,
    /// Fraction of each window shared with the next one.
    #[arg(long, default_value_t = 0.45)]
    pub overlap: f64,
    /// Vertex set of each instance: every stream vertex, or only those active in the window.
    #[arg(long, value_enum, default_value = "universe")]
    pub vertex_scope: ScopeArg,
    #[command(flatten)]
    pub comparison: ComparisonArgs,
    /// Instances per period for the cyclic split.
    #[arg(long, default_value_t = 7)]
    pub period: usize,
    /// Number of period clusters.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// MDS dimensions kept per instance.
    #[arg(long, default_value_t = 2)]
    pub mds_dims: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Seconds per time unit, for the hour-of-day and day-of-week keys.
    #[arg(long, default_value_t = 1.0)]
    pub time_scale: f64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Also write distance matrices, diagrams and the pairwise matrix as CSV.
    #[arg(long)]
    pub intermediates: bool,
}

pub fn parse_str<T: std::str::FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| e.to_string())
}

pub fn run(args: &RunArgs) -> Result<(), Box<dyn std::error::Error>> {
    let format = match args.format {
        FormatArg::Generic => StreamFormat::Generic,
        FormatArg::Sociopatterns => StreamFormat::SocioPatterns,
        FormatArg::Snap => StreamFormat::Snap,
    };
    let mut ingest = IngestConfig::new(args.window, args.overlap);
    ingest.vertex_scope = match args.vertex_scope {
        ScopeArg::Universe => VertexScope::Universe,
        ScopeArg::Window => VertexScope::PerWindow,
    };
    let cfg = PipelineConfig {
        format,
        ingest,
        comparison: args.comparison.config()?,
        period_length: args.period,
        k: args.k,
        mds_dims: args.mds_dims,
        seed: args.seed,
        time_scale: args.time_scale,
    };
    let stream = load_stream(&args.input, format, args.categories.as_deref())?;
    let source =
        args.input.file_name().map_or_else(|| args.input.display().to_string(), |n| n.to_string_lossy().into_owned());
    let output = run_pipeline(stream, &source, &cfg)?;
    for w in &output.bundle.warnings {
        eprintln!("warning: {w}");
    }
    write_outputs(&output, &args.out, args.intermediates)?;
    println!("{} instances -> {}", output.bundle.instances.len(), args.out.join("bundle.json").display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::Experiment;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("tempograph").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn run_defaults() {
        let Command::Run(run) = parse(&["run", "stream.txt"]).command else { panic!() };
        assert_eq!((run.window, run.overlap, run.period, run.k, run.seed), (86_400.0, 0.45, 7, 2, 7));
        let cfg = run.comparison.config().unwrap();
        assert_eq!(cfg, DiagramDistanceConfig::default());
    }

    #[test]
    fn last_root_flag_wins() {
        let Command::Run(run) = parse(&["run", "s", "--no-root", "--root"]).command else { panic!() };
        assert!(run.comparison.apply_root());
        let Command::Run(run) = parse(&["run", "s", "--root", "--no-root"]).command else { panic!() };
        assert!(!run.comparison.apply_root());
    }

    #[test]
    fn rejected_values() {
        for bad in [&["run", "s", "--dim", "2"][..], &["run", "s", "--k-eig", "0"], &["run", "s", "--metric", "x"]] {
            assert!(Cli::try_parse_from(std::iter::once("tempograph").chain(bad.iter().copied())).is_err());
        }
        let Command::Run(run) = parse(&["run", "s", "--q=0"]).command else { panic!() };
        assert!(run.comparison.config().is_err());
    }

    #[test]
    fn experiment_flags() {
        let Command::Experiment(e) =
            parse(&["experiment", "stability", "--essential", "cap=max", "--threads", "2"]).command
        else {
            panic!()
        };
        assert_eq!(e.which, Experiment::Stability);
        assert_eq!(e.comparison.essential, EssentialPolicy::CapAtMax);
        assert_eq!((e.steps, e.reps, e.seed), (20, 20, 7));
    }
}
