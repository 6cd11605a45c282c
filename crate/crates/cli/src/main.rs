use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use hyperseg::io::{
    append_sweep_row, decode_cube, is_cube_file, label_format, read_graymap_stack, read_labels,
    write_cube, write_labels, write_report, Algorithm, LabelFormat, SegmentationReport,
};
use hyperseg::{
    eta_with_seeds, lambda_flat_zones, mu_with_seeds, prepare_seeds, tooth_saw_cube, BallDomain,
    Connectivity, Error, LabelMap, LambdaParams, Metric, MetricKind, MuParams, RefineOptions,
    SeedList, SeedOrder, SpectralCube, ToothSawSpec, DEFAULT_REGION_CAP,
};

/// Informational stdout; a closed pipe is not an error for a tool whose
/// results are the files it writes.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_CODES: &str = "\
Exit codes:
  0   success
  1   other failure
  2   invalid command line
  3   malformed cube or label data (shape, length, non-finite values)
  4   metric cannot be built (negative value, zero marginal)
  5   invalid lambda, eta or mu
  6   seed selection failed (empty zone, zone above --max-region)
  7   seed outside the ball domain
  8   inconsistent synthetic cube settings
  9   unreadable file contents (bad header, truncated data, size mismatch)
  10  file system error";

#[derive(Parser)]
#[command(name = "hyperseg", version, about = "Flat zones, eta-bounded regions and mu-geodesic balls on spectral cubes", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic cube.
    #[command(subcommand)]
    Synth(Synth),
    /// Lambda-flat zones.
    Flat(FlatArgs),
    /// Eta-bounded regions inside lambda-flat zones.
    Eta(EtaArgs),
    /// Mu-geodesic balls inside lambda-flat zones.
    Mu(MuArgs),
    /// Run one pass over a parameter grid and append a CSV row per value.
    Sweep(SweepArgs),
    /// Region count and sizes of a label file.
    Stats(StatsArgs),
}

#[derive(Subcommand)]
enum Synth {
    /// Identical rows following a piecewise linear band-0 profile.
    ToothSaw(ToothSawArgs),
}

#[derive(Args)]
struct ToothSawArgs {
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = 21)]
    height: usize,
    #[arg(long, default_value_t = 4)]
    bands: usize,
    /// Band-0 change per column.
    #[arg(long, default_value_t = 10.0)]
    step: f64,
    /// Signed ramp lengths, e.g. 3,-3,8,-3,3.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "3,-3,8,-3,3"
    )]
    ramps: Vec<i32>,
    #[arg(long, default_value_t = 0.0)]
    base: f64,
    /// Value of every band after the first.
    #[arg(long, default_value_t = 50.0)]
    constant: f64,
}

#[derive(Args)]
struct InputArgs {
    /// One HSC1 cube, or graymaps stacked as bands in the order given.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    /// euclidean or chi2.
    #[arg(long, default_value = "euclidean")]
    metric: MetricKind,
    /// 4 or 8.
    #[arg(long, default_value = "4")]
    connectivity: Connectivity,
    /// Precompute all adjacency distances.
    #[arg(long)]
    edge_cache: bool,
}

#[derive(Args)]
struct RefineArgs {
    /// Flat-zone threshold; "inf" refines the whole image as one zone.
    #[arg(long, value_parser = parse_param)]
    lambda: f64,
    /// median or antimedian.
    #[arg(long, default_value = "median")]
    seed_order: SeedOrder,
    /// Largest zone for which seeds are ranked.
    #[arg(long, default_value_t = DEFAULT_REGION_CAP)]
    max_region: usize,
}

#[derive(Args)]
struct FlatArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = parse_param)]
    lambda: f64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct EtaArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    refine: RefineArgs,
    #[arg(long, value_parser = parse_param)]
    eta: f64,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct MuArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    refine: RefineArgs,
    #[arg(long, value_parser = parse_param)]
    mu: f64,
    /// residual (unclaimed pixels only) or zone (whole zone).
    #[arg(long, default_value = "residual")]
    ball_domain: BallDomain,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepAlgo {
    Flat,
    Eta,
    Mu,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    algo: SweepAlgo,
    /// Fixed flat-zone threshold for eta and mu; ignored by flat.
    #[arg(long, value_parser = parse_param, default_value = "inf")]
    lambda: f64,
    /// Grid start:stop:step; stop is included when the grid lands on it.
    #[arg(long, value_parser = parse_grid)]
    param: Grid,
    #[arg(long, default_value = "median")]
    seed_order: SeedOrder,
    #[arg(long, default_value_t = DEFAULT_REGION_CAP)]
    max_region: usize,
    #[arg(long, default_value = "residual")]
    ball_domain: BallDomain,
    /// CSV file; rows are appended.
    #[arg(long)]
    out: PathBuf,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    labels: PathBuf,
}

fn parse_param(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v.is_nan() || v < 0.0 {
        return Err(format!("'{s}' must be a non-negative number or inf"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
struct Grid(Vec<f64>);

const MAX_GRID: usize = 1_000_000;

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(format!("'{s}' is not start:stop:step"));
    };
    let (start, stop) = (parse_param(start)?, parse_param(stop)?);
    let step = parse_param(step)?;
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step == 0.0 {
        return Err("grid bounds must be finite and the step positive".into());
    }
    if stop < start {
        return Err("grid stop is below its start".into());
    }
    let slack = step * 1e-9;
    // Round to the decimals written, so 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
    let scale = parts
        .iter()
        .map(|p| decimals(p))
        .collect::<Option<Vec<_>>>()
        .and_then(|d| d.into_iter().max())
        .map(|d| 10f64.powi(d as i32));
    let values: Vec<f64> = (0..)
        .map(|k| {
            let v = start + k as f64 * step;
            scale.map_or(v, |s| (v * s).round() / s)
        })
        .take_while(|&v| v <= stop + slack)
        .take(MAX_GRID + 1)
        .collect();
    if values.len() > MAX_GRID {
        return Err(format!("grid has more than {MAX_GRID} points"));
    }
    Ok(Grid(values))
}

/// Digits after the point of a plain decimal literal; `None` for anything
/// else (exponents, "inf") or more digits than an f64 carries.
fn decimals(text: &str) -> Option<usize> {
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    match text.split_once('.') {
        None if digits(text) => Some(0),
        Some((int, frac))
            if digits(int) && (frac.is_empty() || digits(frac)) && frac.len() <= 15 =>
        {
            Some(frac.len())
        }
        _ => None,
    }
}

fn load_cube(paths: &[PathBuf]) -> Result<SpectralCube> {
    if let [single] = paths {
        let bytes = fs::read(single).map_err(|e| Error::Io {
            path: single.clone(),
            source: e,
        })?;
        if is_cube_file(&bytes) {
            return Ok(decode_cube(&bytes, single)?);
        }
    }
    Ok(read_graymap_stack(paths)?)
}

fn prepare(input: &InputArgs) -> Result<(SpectralCube, Metric)> {
    let cube = load_cube(&input.input)?;
    let metric = Metric::build(&cube, input.metric)?;
    Ok((cube, metric))
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn labels_path(dir: &Path, labels: &LabelMap) -> PathBuf {
    match label_format(labels) {
        LabelFormat::Pgm16 => dir.join("labels.pgm"),
        LabelFormat::Hsc1 => dir.join("labels.hsc"),
    }
}

fn emit(dir: &Path, labels: &LabelMap, mut report: SegmentationReport) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })?;
    let path = labels_path(dir, labels);
    report.label_format = Some(write_labels(labels, &path)?);
    write_report(&report, dir.join("report.txt"))?;
    say!("regions: {}", report.regions);
    say!("labels: {}", path.display());
    Ok(())
}

fn flat_zones(
    cube: &SpectralCube,
    metric: &Metric,
    input: &InputArgs,
    lambda: f64,
) -> Result<LabelMap> {
    let params = LambdaParams::new(lambda)
        .with_connectivity(input.connectivity)
        .with_edge_cache(input.edge_cache);
    Ok(lambda_flat_zones(cube, metric, &params)?)
}

fn refine_options(input: &InputArgs, seed_order: SeedOrder, max_region: usize) -> RefineOptions {
    RefineOptions {
        seed_order,
        connectivity: input.connectivity,
        region_cap: max_region,
        edge_cache: input.edge_cache,
    }
}

fn run_flat(args: &FlatArgs) -> Result<()> {
    let (cube, metric) = prepare(&args.input)?;
    let start = Instant::now();
    let zones = flat_zones(&cube, &metric, &args.input, args.lambda)?;
    let report = SegmentationReport::new(
        Algorithm::Flat,
        args.input.metric,
        args.lambda,
        None,
        args.input.connectivity,
        None,
        &zones,
        ms(start),
    );
    emit(&args.out_dir, &zones, report)
}

fn run_eta(args: &EtaArgs) -> Result<()> {
    let (cube, metric) = prepare(&args.input)?;
    let r = &args.refine;
    let options = refine_options(&args.input, r.seed_order, r.max_region);
    let start = Instant::now();
    let zones = flat_zones(&cube, &metric, &args.input, r.lambda)?;
    let seeds = prepare_seeds(&cube, &metric, &zones, &options)?;
    let out = eta_with_seeds(
        &cube,
        &metric,
        &zones,
        seeds,
        args.eta,
        options.connectivity,
    )?;
    let report = SegmentationReport::new(
        Algorithm::Eta,
        args.input.metric,
        r.lambda,
        Some(args.eta),
        options.connectivity,
        Some(r.seed_order),
        &out.labels,
        ms(start),
    );
    emit(&args.out_dir, &out.labels, report)
}

fn run_mu(args: &MuArgs) -> Result<()> {
    let (cube, metric) = prepare(&args.input)?;
    let r = &args.refine;
    let options = refine_options(&args.input, r.seed_order, r.max_region);
    let params = MuParams::new(args.mu)
        .with_options(options)
        .with_domain(args.ball_domain);
    let start = Instant::now();
    let zones = flat_zones(&cube, &metric, &args.input, r.lambda)?;
    let seeds = prepare_seeds(&cube, &metric, &zones, &options)?;
    let out = mu_with_seeds(&cube, &metric, &zones, seeds, &params)?;
    let report = SegmentationReport::new(
        Algorithm::Mu,
        args.input.metric,
        r.lambda,
        Some(args.mu),
        options.connectivity,
        Some(r.seed_order),
        &out.labels,
        ms(start),
    );
    emit(&args.out_dir, &out.labels, report)
}

fn sweep_row(
    args: &SweepArgs,
    cube: &SpectralCube,
    metric: &Metric,
    zones: Option<&(LabelMap, Vec<SeedList>)>,
    value: f64,
) -> Result<SegmentationReport> {
    let input = &args.input;
    let options = refine_options(input, args.seed_order, args.max_region);
    let start = Instant::now();
    let (algorithm, lambda, param, order, labels) = match (args.algo, zones) {
        (SweepAlgo::Flat, _) => {
            let labels = flat_zones(cube, metric, input, value)?;
            (Algorithm::Flat, value, None, None, labels)
        }
        (SweepAlgo::Eta, Some((flat, seeds))) => {
            let out = eta_with_seeds(cube, metric, flat, seeds.clone(), value, input.connectivity)?;
            (
                Algorithm::Eta,
                args.lambda,
                Some(value),
                Some(args.seed_order),
                out.labels,
            )
        }
        (SweepAlgo::Mu, Some((flat, seeds))) => {
            let params = MuParams::new(value)
                .with_options(options)
                .with_domain(args.ball_domain);
            let out = mu_with_seeds(cube, metric, flat, seeds.clone(), &params)?;
            (
                Algorithm::Mu,
                args.lambda,
                Some(value),
                Some(args.seed_order),
                out.labels,
            )
        }
        _ => unreachable!("zones are prepared for refinement sweeps"),
    };
    Ok(SegmentationReport::new(
        algorithm,
        input.metric,
        lambda,
        param,
        input.connectivity,
        order,
        &labels,
        ms(start),
    ))
}

fn run_sweep(args: &SweepArgs) -> Result<()> {
    let (cube, metric) = prepare(&args.input)?;
    // Refinement sweeps share one flat partition and its seed lists.
    let zones = match args.algo {
        SweepAlgo::Flat => None,
        SweepAlgo::Eta | SweepAlgo::Mu => {
            let flat = flat_zones(&cube, &metric, &args.input, args.lambda)?;
            let options = refine_options(&args.input, args.seed_order, args.max_region);
            let seeds = prepare_seeds(&cube, &metric, &flat, &options)?;
            Some((flat, seeds))
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().context("cannot start worker threads")?;
    let rows: Vec<Result<SegmentationReport>> = pool.install(|| {
        args.param
            .0
            .par_iter()
            .map(|&v| sweep_row(args, &cube, &metric, zones.as_ref(), v))
            .collect()
    });
    // Rows are appended in grid order by this thread alone.
    for row in rows {
        let row = row?;
        append_sweep_row(&row, &args.out)?;
        say!("{}", row.csv_row());
    }
    Ok(())
}

fn run_stats(args: &StatsArgs) -> Result<()> {
    let labels = read_labels(&args.labels)?;
    let mut sizes = labels.sizes();
    say!("width: {}", labels.width());
    say!("height: {}", labels.height());
    say!("regions: {}", labels.count());
    sizes.sort_unstable();
    if let (Some(min), Some(max)) = (sizes.first(), sizes.last()) {
        say!("smallest: {min}");
        say!("median: {}", sizes[sizes.len() / 2]);
        say!("largest: {max}");
    }
    Ok(())
}

fn run_synth(args: &ToothSawArgs) -> Result<()> {
    let spec = ToothSawSpec {
        height: args.height,
        bands: args.bands,
        step: args.step,
        ramps: args.ramps.clone(),
        base: args.base,
        constant: args.constant,
    };
    let cube = tooth_saw_cube(&spec)?;
    write_cube(&cube, &args.out)?;
    say!(
        "wrote {}×{}×{} cube to {}",
        cube.width(),
        cube.height(),
        cube.bands(),
        args.out.display()
    );
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<Error>()) else {
        return 1;
    };
    match e {
        Error::ZeroDimension { .. }
        | Error::DataLength { .. }
        | Error::NonFinite { .. }
        | Error::OutOfBounds { .. }
        | Error::DimensionMismatch { .. }
        | Error::LabelLength { .. } => 3,
        Error::NegativeValue { .. } | Error::DegenerateMarginal { .. } => 4,
        Error::InvalidParameter { .. } => 5,
        Error::EmptyRegion | Error::RegionTooLarge { .. } => 6,
        Error::SeedOutsideDomain { .. } => 7,
        Error::InvalidSynth(_) => 8,
        Error::BadMagic { .. }
        | Error::ZeroHeaderDimension { .. }
        | Error::BadDtype { .. }
        | Error::Truncated { .. }
        | Error::TrailingBytes { .. }
        | Error::Graymap { .. }
        | Error::StackMismatch { .. }
        | Error::LabelValue { .. }
        | Error::EmptyStack => 9,
        Error::Io { .. } => 10,
    }
}

/// Context messages down to the first library error, whose text already
/// carries its cause.
fn diagnostic(err: &anyhow::Error) -> String {
    let mut parts = Vec::new();
    for cause in err.chain() {
        parts.push(cause.to_string());
        if cause.downcast_ref::<Error>().is_some() {
            break;
        }
    }
    parts.join(": ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Synth(Synth::ToothSaw(a)) => run_synth(a),
        Command::Flat(a) => run_flat(a),
        Command::Eta(a) => run_eta(a),
        Command::Mu(a) => run_mu(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Stats(a) => run_stats(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("hyperseg: {}", diagnostic(&err));
            ExitCode::from(exit_code(&err))
        }
    }
}
