//! Command-line surface: distance computation, 1-NN evaluation, robustness
//! scoring, rank statistics, and synthetic dataset generation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tsdist::dataset_io::{load_series, load_ucr, synth_dataset, write_ucr, SynthConfig};
use tsdist::knn::error_rate;
use tsdist::ranks::{emit_cd_diagram, friedman_statistic, nemenyi_cd, rank_rows, Alpha};
use tsdist::report::{csv_table, EvalReport, TableRow};
use tsdist::robustness::{
    contamination_tolerance_score, imprecision_invariance_score, Placement,
};
use tsdist::{DistanceSpec, DtwConfig, EdrConfig, EnsembleConfig, WindowRule};

#[derive(Parser)]
#[command(name = "tsdist", version, about = "Robust time-series distances and evaluation")]
struct Cli {
    /// Worker threads for parallel evaluation (default: machine parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two single-series files
    Dist(DistArgs),
    /// 1-NN classification error rate over a train/test split
    Knn(KnnArgs),
    /// Contamination-tolerance and imprecision-invariance scores
    Robustness(RobustnessArgs),
    /// Friedman statistics and a critical-distance diagram from an error table
    Ranks(RanksArgs),
    /// Emit a seeded synthetic multi-class dataset
    Synth(SynthArgs),
}

#[derive(Args, Clone)]
struct MetricArgs {
    /// One of: ensemble, euclidean, log, edit, edr, dtw (repeatable)
    #[arg(long = "metric", required = true)]
    metric: Vec<String>,

    /// Explicit sliding-median window for the ensemble (odd-normalized)
    #[arg(long)]
    window: Option<usize>,

    /// Ensemble window as a fraction of the series length (default 0.1)
    #[arg(long = "window-frac")]
    window_frac: Option<f64>,

    /// EDR tolerance as a fraction of the pooled MAD (default 0.10)
    #[arg(long = "edr-tol-frac")]
    edr_tol_frac: Option<f64>,

    /// Sakoe-Chiba half-width for DTW (default 100)
    #[arg(long = "dtw-band")]
    dtw_band: Option<usize>,
}

impl MetricArgs {
    fn build(&self, name: &str) -> Result<DistanceSpec> {
        Ok(match name {
            "ensemble" => {
                let cfg = match (self.window, self.window_frac) {
                    (Some(w), None) => EnsembleConfig::with_window(w),
                    (None, Some(f)) => EnsembleConfig::with_fraction(f)?,
                    (None, None) => EnsembleConfig::default(),
                    (Some(_), Some(_)) => {
                        bail!("--window and --window-frac are mutually exclusive")
                    }
                };
                DistanceSpec::Ensemble(cfg)
            }
            "euclidean" => DistanceSpec::Euclidean,
            "log" => DistanceSpec::Log,
            "edit" => DistanceSpec::Edit,
            "edr" => DistanceSpec::Edr(EdrConfig::mad_fraction(
                self.edr_tol_frac.unwrap_or(0.10),
            )?),
            "dtw" => DistanceSpec::Dtw(DtwConfig::new(self.dtw_band.unwrap_or(100))?),
            other => bail!(
                "unknown metric {other:?}; expected one of ensemble, euclidean, log, edit, edr, dtw"
            ),
        })
    }

    fn specs(&self) -> Result<Vec<DistanceSpec>> {
        self.metric.iter().map(|name| self.build(name)).collect()
    }

    fn single(&self) -> Result<DistanceSpec> {
        let specs = self.specs()?;
        if specs.len() != 1 {
            bail!("this subcommand takes exactly one --metric");
        }
        Ok(specs[0])
    }
}

fn echo_spec(spec: &DistanceSpec, params: &mut BTreeMap<String, String>) {
    params.insert("metric".into(), spec.name().to_string());
    match spec {
        DistanceSpec::Ensemble(cfg) => match cfg.window_rule() {
            WindowRule::Explicit(w) => {
                params.insert("window".into(), w.to_string());
            }
            WindowRule::Fraction(f) => {
                params.insert("window_frac".into(), f.to_string());
            }
        },
        DistanceSpec::Edr(cfg) => {
            params.insert("edr_tolerance".into(), format!("{:?}", cfg.tolerance()));
        }
        DistanceSpec::Dtw(cfg) => {
            params.insert("dtw_band".into(), cfg.band().to_string());
        }
        _ => {}
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the run report as a single JSON document
    #[arg(long)]
    json: Option<PathBuf>,

    /// Write the result table as CSV
    #[arg(long)]
    csv: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, reports: &[EvalReport], rows: &[TableRow]) -> Result<()> {
        if let Some(path) = &self.json {
            let doc = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])?
            } else {
                serde_json::to_string_pretty(reports)?
            };
            std::fs::write(path, doc + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
        if let Some(path) = &self.csv {
            std::fs::write(path, csv_table(rows))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

#[derive(Args)]
struct DistArgs {
    #[command(flatten)]
    metric: MetricArgs,

    /// First series file
    a: PathBuf,

    /// Second series file
    b: PathBuf,
}

#[derive(Args)]
struct KnnArgs {
    #[command(flatten)]
    metric: MetricArgs,

    /// Training set (UCR text format)
    #[arg(long)]
    train: PathBuf,

    /// Test set (UCR text format)
    #[arg(long)]
    test: PathBuf,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Contamination,
    Imprecision,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlacementArg {
    Random,
    Consecutive,
}

impl From<PlacementArg> for Placement {
    fn from(p: PlacementArg) -> Self {
        match p {
            PlacementArg::Random => Placement::Random,
            PlacementArg::Consecutive => Placement::Consecutive,
        }
    }
}

#[derive(Args)]
struct RobustnessArgs {
    #[command(flatten)]
    metric: MetricArgs,

    /// Which score to compute (default: both)
    #[arg(long, value_enum)]
    mode: Option<Mode>,

    /// Fraction of contaminated positions
    #[arg(long, default_value_t = 0.05)]
    fraction: f64,

    /// Imprecision bound
    #[arg(long = "eps-max", default_value_t = 1e-10)]
    eps_max: f64,

    /// Contamination placement
    #[arg(long, value_enum, default_value_t = PlacementArg::Random)]
    placement: PlacementArg,

    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Dataset file (UCR text format)
    dataset: PathBuf,

    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct RanksArgs {
    /// Error-rate table: header `dataset,<method>,...`, one row per dataset
    #[arg(long)]
    input: PathBuf,

    /// Significance level: 0.05 or 0.10
    #[arg(long, default_value = "0.05")]
    alpha: String,

    /// Write the critical-distance diagram as SVG
    #[arg(long)]
    diagram: Option<PathBuf>,

    /// Write the Friedman/CD summary as a JSON document
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of classes
    #[arg(long, default_value_t = 3)]
    classes: usize,

    /// Instances per class
    #[arg(long = "per-class", default_value_t = 20)]
    per_class: usize,

    /// Series length
    #[arg(long, default_value_t = 200)]
    length: usize,

    /// Level separation between adjacent classes
    #[arg(long, default_value_t = 50.0)]
    separation: f64,

    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output path (UCR text format)
    #[arg(long)]
    out: PathBuf,
}

fn dataset_label(path: &Path) -> String {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    stem.strip_suffix("_TRAIN")
        .or_else(|| stem.strip_suffix("_TEST"))
        .unwrap_or(&stem)
        .to_string()
}

fn run_dist(args: &DistArgs) -> Result<()> {
    let spec = args.metric.single()?;
    let a = load_series(&args.a).with_context(|| format!("loading {}", args.a.display()))?;
    let b = load_series(&args.b).with_context(|| format!("loading {}", args.b.display()))?;
    let d = spec.evaluate(&a, &b)?;
    println!("{} {}", spec.name(), d);
    Ok(())
}

fn run_knn(args: &KnnArgs) -> Result<()> {
    let train =
        load_ucr(&args.train).with_context(|| format!("loading {}", args.train.display()))?;
    let test = load_ucr(&args.test).with_context(|| format!("loading {}", args.test.display()))?;
    let dataset = dataset_label(&args.train);
    println!(
        "dataset {dataset}: train {} x {}, test {} x {}",
        train.len(),
        train.series_len(),
        test.len(),
        test.series_len()
    );
    println!("{:<10} {:>10}", "method", "error_rate");

    let mut reports = Vec::new();
    let mut cells = Vec::new();
    for spec in args.metric.specs()? {
        let started = Instant::now();
        let result = error_rate(&train, &test, &spec)?;
        let wall_ms = started.elapsed().as_secs_f64() * 1e3;
        println!("{:<10} {:>10.4}", spec.name(), result.error_rate);

        let mut report = EvalReport::new(&dataset, spec.name());
        report.error_rate = Some(result.error_rate);
        echo_spec(&spec, &mut report.params);
        report
            .params
            .insert("train".into(), args.train.display().to_string());
        report
            .params
            .insert("test".into(), args.test.display().to_string());
        report.timing.wall_ms = wall_ms;
        reports.push(report);
        cells.push((spec.name().to_string(), result.error_rate));
    }
    args.out.emit(&reports, &[(dataset, cells)])
}

fn run_robustness(args: &RobustnessArgs) -> Result<()> {
    let data =
        load_ucr(&args.dataset).with_context(|| format!("loading {}", args.dataset.display()))?;
    let dataset = dataset_label(&args.dataset);
    let contamination = args.mode != Some(Mode::Imprecision);
    let imprecision = args.mode != Some(Mode::Contamination);
    println!(
        "dataset {dataset}: {} instances x {}, {} classes",
        data.len(),
        data.series_len(),
        data.class_count()
    );
    println!(
        "{:<10} {:>14} {:>12}",
        "method", "contamination", "imprecision"
    );

    let mut reports = Vec::new();
    let mut cells = Vec::new();
    for spec in args.metric.specs()? {
        let started = Instant::now();
        let mut report = EvalReport::new(&dataset, spec.name());
        let mut printed = (String::from("-"), String::from("-"));
        if contamination {
            let score = contamination_tolerance_score(
                &data,
                &spec,
                args.fraction,
                f64::INFINITY,
                args.placement.into(),
                args.seed,
            )?;
            report.contamination_score = Some(score.mean_score);
            cells.push((format!("{}:contamination", spec.name()), score.mean_score));
            printed.0 = format!("{:.4}", score.mean_score);
        }
        if imprecision {
            let score = imprecision_invariance_score(&data, &spec, args.eps_max, args.seed)?;
            report.imprecision_score = Some(score.mean_score);
            cells.push((format!("{}:imprecision", spec.name()), score.mean_score));
            printed.1 = format!("{:.4}", score.mean_score);
        }
        println!("{:<10} {:>14} {:>12}", spec.name(), printed.0, printed.1);

        echo_spec(&spec, &mut report.params);
        report
            .params
            .insert("dataset_path".into(), args.dataset.display().to_string());
        report.params.insert("seed".into(), args.seed.to_string());
        report
            .params
            .insert("fraction".into(), args.fraction.to_string());
        report
            .params
            .insert("eps_max".into(), args.eps_max.to_string());
        report.params.insert(
            "placement".into(),
            match args.placement {
                PlacementArg::Random => "random".into(),
                PlacementArg::Consecutive => "consecutive".into(),
            },
        );
        report.params.insert("magnitude".into(), "inf".into());
        report.timing.wall_ms = started.elapsed().as_secs_f64() * 1e3;
        reports.push(report);
    }
    args.out.emit(&reports, &[(dataset, cells)])
}

type ErrorTable = (Vec<String>, Vec<String>, Vec<Vec<f64>>);

/// Parse the error table consumed by `ranks`: a header naming the methods,
/// then one row per dataset. Comma or tab separated.
fn parse_error_table(text: &str) -> Result<ErrorTable> {
    let sep = if text.lines().next().is_some_and(|l| l.contains('\t')) {
        '\t'
    } else {
        ','
    };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().context("empty table")?;
    let methods: Vec<String> = header
        .split(sep)
        .skip(1)
        .map(|m| m.trim().to_string())
        .collect();
    let mut datasets = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in lines.enumerate() {
        let mut fields = line.split(sep);
        let name = fields.next().context("missing dataset name")?.trim();
        let row: Vec<f64> = fields
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .with_context(|| format!("row {}: bad value {:?}", idx + 2, f.trim()))
            })
            .collect::<Result<_>>()?;
        datasets.push(name.to_string());
        errors.push(row);
    }
    Ok((methods, datasets, errors))
}

fn run_ranks(args: &RanksArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.input)
        .with_context(|| format!("loading {}", args.input.display()))?;
    let (methods, datasets, errors) = parse_error_table(&text)?;
    let alpha = match args.alpha.as_str() {
        "0.05" => Alpha::FivePercent,
        "0.10" | "0.1" => Alpha::TenPercent,
        other => bail!("unsupported alpha {other:?}; use 0.05 or 0.10"),
    };

    // DTW and EDR are flagged as non-metrics in the diagram.
    let non_metric: Vec<bool> = methods
        .iter()
        .map(|m| {
            let stem = m.trim_end_matches('*');
            stem.eq_ignore_ascii_case("dtw") || stem.eq_ignore_ascii_case("edr")
        })
        .collect();

    let rm = rank_rows(methods, datasets, errors)?;
    let stats = friedman_statistic(&rm);
    let cd = nemenyi_cd(rm.methods.len(), rm.datasets.len(), alpha)?;
    let diagram = emit_cd_diagram(&rm, cd, &non_metric)?;

    println!(
        "Friedman chi-square = {:.6} over {} datasets x {} methods",
        stats.chi_square,
        rm.datasets.len(),
        rm.methods.len()
    );
    match stats.f_statistic {
        Some(f) => println!("F-statistic = {f:.6}"),
        None => println!("F-statistic undefined (perfect agreement)"),
    }
    println!("Nemenyi CD (alpha {}) = {cd:.6}", args.alpha);
    print!("{}", diagram.text);

    if let Some(path) = &args.diagram {
        std::fs::write(path, &diagram.svg)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.json {
        let groups: Vec<Vec<&str>> = diagram
            .groups
            .iter()
            .map(|g| g.iter().map(|&m| rm.methods[m].as_str()).collect())
            .collect();
        let doc = serde_json::json!({
            "methods": rm.methods,
            "avg_ranks": rm.avg_ranks,
            "chi_square": stats.chi_square,
            "f_statistic": stats.f_statistic,
            "alpha": args.alpha,
            "cd": cd,
            "groups": groups,
        });
        std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run_synth(args: &SynthArgs) -> Result<()> {
    let cfg = SynthConfig {
        classes: args.classes,
        per_class: args.per_class,
        length: args.length,
        separation: args.separation,
        seed: args.seed,
    };
    let ds = synth_dataset(&cfg)?;
    write_ucr(&ds, &args.out).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {}: {} instances x {}, {} classes",
        args.out.display(),
        ds.len(),
        ds.series_len(),
        ds.class_count()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    match &cli.command {
        Command::Dist(args) => run_dist(args),
        Command::Knn(args) => run_knn(args),
        Command::Robustness(args) => run_robustness(args),
        Command::Ranks(args) => run_ranks(args),
        Command::Synth(args) => run_synth(args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
