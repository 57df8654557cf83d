use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use arrcolor::coloring::{baseline_built, color_built, verify_colors};
use arrcolor::harness::generate::{generate, Instance, InstanceKind, InstanceParams, InstanceSpec};
use arrcolor::harness::io::{read_json, read_lines, read_points, to_json, ColoringFile, LinesFile, PointsFile, FORMAT};
use arrcolor::harness::stats::{PhaseTimings, StatsReport};
use arrcolor::harness::svg::render_svg;
use arrcolor::harness::HarnessError;
use arrcolor::{
    find_independent_lines, general_position_subset, par, seeded, Arrangement, ArrangementError, ColoringConfig,
    ColoringError, DualityError, SamplingConfig, TriHypergraph,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "arrcolor", version, about = "Color line arrangements so that no face is monochromatic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeedArg {
    /// Seed for every random choice.
    #[arg(long, env = "ARRCOLOR_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance as JSON.
    Generate {
        #[arg(long)]
        kind: InstanceKind,
        /// Line count (grid size for `grid`, point count for `cubic_points`).
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: PathBuf,
        /// Coefficient range of random lines.
        #[arg(long, default_value_t = InstanceParams::default().range)]
        range: i64,
        /// Bundle count for `parallel_classes`.
        #[arg(long, default_value_t = InstanceParams::default().classes)]
        classes: usize,
        #[arg(long, default_value_t = InstanceParams::default().parallel_rate)]
        parallel_rate: f64,
        #[arg(long, default_value_t = InstanceParams::default().concurrent_rate)]
        concurrent_rate: f64,
    },
    /// Color an arrangement and write the coloring and a stats report.
    Color {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        /// Run every seed in `a..b`; `{seed}` in output paths is replaced
        /// by the seed.
        #[arg(long, value_parser = parse_seed_range)]
        seeds: Option<(u64, u64)>,
        /// Base-case threshold: this many remaining lines get distinct colors.
        #[arg(long, default_value_t = 12)]
        m0: usize,
        /// Pair-degree parameter of the sampling probability.
        #[arg(long, default_value_t = 4)]
        d: u32,
        /// Local-search rounds per independent set.
        #[arg(long, default_value_t = SamplingConfig::default().search_rounds)]
        search_rounds: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        stats: Option<PathBuf>,
        /// Record wall-clock phase timings in the stats report.
        #[arg(long)]
        timings: bool,
    },
    /// Check a coloring; exits 1 and lists the monochromatic faces if any.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Run one independent-set search and print the result.
    Indep {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long, default_value_t = 4)]
        d: u32,
    },
    /// Extract a subset in general position from points with no four collinear.
    GpSubset {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        /// Base-case threshold of the underlying coloring.
        #[arg(long, default_value_t = 12)]
        m0: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw an arrangement, optionally colored, as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color with the plain greedy baseline.
    Baseline {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the stats report; printed to stdout if omitted.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
}

fn parse_seed_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a >= b {
        return Err("empty seed range".into());
    }
    Ok((a, b))
}

/// An error with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let code = match e {
            HarnessError::Precondition(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ArrangementError> for Failure {
    fn from(e: ArrangementError) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<ColoringError> for Failure {
    fn from(e: ColoringError) -> Self {
        match e {
            ColoringError::Arrangement(e) => e.into(),
            ColoringError::IncompleteColoring { .. } => Failure { code: 2, message: e.to_string() },
            ColoringError::CertificationFailed { .. } => Failure { code: 1, message: e.to_string() },
        }
    }
}

impl From<DualityError> for Failure {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::Coloring(e) => e.into(),
            DualityError::Not4Free | DualityError::DuplicatePoint(..) => Failure { code: 3, message: e.to_string() },
            _ => Failure { code: 1, message: e.to_string() },
        }
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    write(path, &to_json(value)?)
}

/// Prefixes a result object with the format tag and seed.
fn tagged<T: serde::Serialize>(seed: u64, value: &T) -> Value {
    let mut out = json!({ "format": FORMAT, "seed": seed });
    if let (Value::Object(head), Ok(Value::Object(body))) = (&mut out, serde_json::to_value(value)) {
        head.extend(body);
    }
    out
}

fn with_seed(path: &Path, seed: u64) -> PathBuf {
    PathBuf::from(path.to_string_lossy().replace("{seed}", &seed.to_string()))
}

fn build(input: &Path) -> Result<Arrangement, Failure> {
    Ok(Arrangement::build(&read_lines(input)?)?)
}

struct ColorJob<'a> {
    arr: &'a Arrangement,
    input: &'a Path,
    cfg: &'a ColoringConfig,
    out: &'a Path,
    stats: Option<&'a Path>,
    timings: bool,
    build_ms: f64,
}

fn color_one(job: &ColorJob<'_>, seed: u64) -> Result<(), Failure> {
    let start = Instant::now();
    let coloring = color_built(job.arr, job.cfg, &mut seeded(seed))?;
    let color_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let bad = verify_colors(job.arr, &coloring.colors)?;
    let verify_ms = start.elapsed().as_secs_f64() * 1e3;
    write_json(&with_seed(job.out, seed), &ColoringFile::new(coloring.colors.clone(), seed))?;
    if let Some(stats) = job.stats {
        let mut report =
            StatsReport::new(job.arr, &coloring, Some(job.cfg), seed, Some(job.input.display().to_string()));
        if job.timings {
            report.timings = Some(PhaseTimings { build_ms: job.build_ms, color_ms, verify_ms });
        }
        write_json(&with_seed(stats, seed), &report)?;
    }
    if !bad.is_empty() {
        return Err(Failure { code: 1, message: format!("seed {seed}: {} monochromatic faces", bad.len()) });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { kind, n, seed, out, range, classes, parallel_rate, concurrent_rate } => {
            let spec = InstanceSpec {
                kind,
                n,
                seed: seed.seed,
                params: InstanceParams { range, classes, parallel_rate, concurrent_rate },
            };
            let mut file = match generate(&spec)? {
                Instance::Lines(lines) => serde_json::to_value(LinesFile::from_lines(&lines)),
                Instance::Points(ps) => serde_json::to_value(PointsFile::from_points(&ps)),
            }
            .map_err(|e| Failure::usage(e.to_string()))?;
            if let Value::Object(map) = &mut file {
                map.insert("instance".into(), serde_json::to_value(&spec).map_err(|e| Failure::usage(e.to_string()))?);
            }
            write_json(&out, &file)
        }
        Command::Color { input, seed, seeds, m0, d, search_rounds, out, stats, timings } => {
            if m0 < 1 {
                return Err(Failure::usage("--m0 must be at least 1"));
            }
            let sampling = SamplingConfig { d, search_rounds, ..Default::default() };
            sampling.validate().map_err(Failure::usage)?;
            let cfg = ColoringConfig { base_case: m0, sampling };
            let start = Instant::now();
            let arr = build(&input)?;
            let job = ColorJob {
                arr: &arr,
                input: &input,
                cfg: &cfg,
                out: &out,
                stats: stats.as_deref(),
                timings,
                build_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            match seeds {
                None => color_one(&job, seed.seed),
                Some((a, b)) => {
                    let templated = |p: &Path| p.to_string_lossy().contains("{seed}");
                    if !templated(&out) || stats.as_deref().is_some_and(|p| !templated(p)) {
                        return Err(Failure::usage("--seeds needs {seed} in every output path"));
                    }
                    let results = par::map_range((b - a) as usize, |i| color_one(&job, a + i as u64));
                    // Report the first failure, after every run has written its files.
                    results.into_iter().collect()
                }
            }
        }
        Command::Verify { input, coloring } => {
            let arr = build(&input)?;
            let file: ColoringFile = read_json(&coloring)?;
            let bad = verify_colors(&arr, &file.colors)?;
            if bad.is_empty() {
                println!("ok: {} lines, {} colors, no monochromatic face", arr.num_lines(), file.k);
                return Ok(());
            }
            for &f in &bad {
                let face = arr.face(f);
                let color = file.colors[face.bounding_lines[0] as usize];
                println!(
                    "face {f}: {} lines {:?} all color {color}",
                    if face.bounded { "bounded" } else { "unbounded" },
                    face.bounding_lines
                );
            }
            Err(Failure { code: 1, message: format!("{} monochromatic faces", bad.len()) })
        }
        Command::Indep { input, seed, d } => {
            let arr = build(&input)?;
            let cfg = SamplingConfig { d, ..Default::default() };
            cfg.validate().map_err(Failure::usage)?;
            let h = TriHypergraph::from_arrangement(&arr);
            let result = find_independent_lines(&arr, &h, &cfg, &mut seeded(seed.seed));
            print!("{}", to_json(&tagged(seed.seed, &result))?);
            Ok(())
        }
        Command::GpSubset { points, seed, m0, out } => {
            if m0 < 1 {
                return Err(Failure::usage("--m0 must be at least 1"));
            }
            let ps = read_points(&points)?;
            let cfg = ColoringConfig { base_case: m0, ..Default::default() };
            let (result, _) = general_position_subset(&ps, &cfg, &mut seeded(seed.seed))?;
            write_json(&out, &tagged(seed.seed, &result))
        }
        Command::Render { input, coloring, out } => {
            let arr = build(&input)?;
            let colors = match coloring {
                Some(path) => {
                    let file: ColoringFile = read_json(&path)?;
                    if file.colors.len() != arr.num_lines() {
                        return Err(Failure::usage(format!(
                            "coloring has {} entries for {} lines",
                            file.colors.len(),
                            arr.num_lines()
                        )));
                    }
                    Some(file.colors)
                }
                None => None,
            };
            write(&out, &render_svg(&arr, colors.as_deref()))
        }
        Command::Baseline { input, seed, out, stats } => {
            let arr = build(&input)?;
            let coloring = baseline_built(&arr, &mut seeded(seed.seed))?;
            if let Some(out) = out {
                write_json(&out, &ColoringFile::new(coloring.colors.clone(), seed.seed))?;
            }
            let report = StatsReport::new(&arr, &coloring, None, seed.seed, Some(input.display().to_string()));
            match stats {
                Some(path) => write_json(&path, &report),
                None => {
                    print!("{}", to_json(&report)?);
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
