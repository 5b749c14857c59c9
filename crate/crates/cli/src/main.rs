mod dataset;
mod io;
mod report;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use spliceedge::eval::{self, EvalReport, ImageKind, ImageRow};
use spliceedge::simulate::{self, fixtures, EdgeClass};
use spliceedge::{detect, DetectParams, EdgeMap};

use crate::dataset::{Layout, MaskKind};
use crate::report::{Report, RunConfig, Skipped};

const OUT_ENV: &str = "SPLICEEDGE_OUT";
const DEFAULT_OUT: &str = "spliceedge-out";

#[derive(Parser)]
#[command(
    name = "spliceedge",
    version,
    about = "Locate splicing edges from photometric color invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect splicing edges in one image.
    Detect(DetectArgs),
    /// Score the detector on a dataset of spliced and original images.
    Eval(EvalArgs),
    /// Render a scene document, or generate the synthetic benchmark suite.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct Common {
    /// Square dilation radius applied to the S edge map before AND-NOT.
    #[arg(long, default_value_t = 0)]
    dilate_s: usize,
    /// Undo the sRGB transfer curve before converting.
    #[arg(long)]
    linearize: bool,
    /// Output directory.
    #[arg(long, env = OUT_ENV, default_value = DEFAULT_OUT)]
    out: PathBuf,
}

impl Common {
    fn params(&self) -> DetectParams {
        DetectParams {
            dilate_s: self.dilate_s,
            linearize: self.linearize,
        }
    }
}

#[derive(Args)]
struct DetectArgs {
    image: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Also write the S and o1o2 edge maps.
    #[arg(long)]
    emit_intermediates: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Dataset root.
    root: PathBuf,
    #[command(flatten)]
    common: Common,
    /// Layout file mapping the dataset tree.
    #[arg(long)]
    layout: Option<PathBuf>,
    /// Matching tolerance in pixels (Chebyshev).
    #[arg(long, default_value_t = eval::DEFAULT_TOLERANCE)]
    tol: usize,
    /// Boundary-recall gate.
    #[arg(long, default_value_t = eval::DEFAULT_THETA, value_parser = unit_interval)]
    theta: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scene document (TOML).
    #[arg(required_unless_present = "suite", conflicts_with = "suite")]
    scene: Option<PathBuf>,
    /// Write a benchmark dataset of this many spliced/original pairs instead.
    #[arg(long)]
    suite: Option<usize>,
    #[arg(long, default_value_t = 2024, requires = "suite")]
    seed: u64,
    #[arg(long, default_value_t = 256, requires = "suite")]
    size: usize,
    /// Output directory.
    #[arg(long, env = OUT_ENV, default_value = DEFAULT_OUT)]
    out: PathBuf,
}

fn unit_interval(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Detect(args) => cmd_detect(&args),
        Command::Eval(args) => cmd_eval(&args),
        Command::Simulate(args) => cmd_simulate(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "image".into())
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn cmd_detect(args: &DetectArgs) -> Result<()> {
    let img = io::read_rgb(&args.image)?;
    let result = detect(&img, &args.common.params())?;
    let out = &args.common.out;
    create_dir(out)?;
    let name = stem(&args.image);
    let splice_path = out.join(format!("{name}_splice.png"));
    io::write_mask(&splice_path, &result.splice_map)?;
    io::write_overlay(
        &out.join(format!("{name}_overlay.png")),
        &img,
        &result.splice_map,
    )?;
    if args.emit_intermediates {
        io::write_mask(&out.join(format!("{name}_s_edges.png")), &result.s_edges)?;
        io::write_mask(&out.join(format!("{name}_o_edges.png")), &result.o_edges)?;
    }
    println!(
        "{}: {} splice pixels ({} o1o2 edges, {} S edges; thresholds o1o2 {:.6}, S {:.6}) -> {}",
        args.image.display(),
        result.splice_map.count(),
        result.o_edges.count(),
        result.s_edges.count(),
        result.o_stats.threshold,
        result.s_stats.threshold,
        splice_path.display()
    );
    Ok(())
}

fn load_truth(mask_path: &Path, kind: MaskKind, dims: (usize, usize)) -> Result<EdgeMap> {
    let mask = io::read_mask(mask_path)?;
    if mask.dims() != dims {
        bail!(
            "mask {}x{} does not match image {}x{}",
            mask.width(),
            mask.height(),
            dims.0,
            dims.1
        );
    }
    Ok(match kind {
        MaskKind::Region => simulate::ground_truth_boundary(&mask),
        MaskKind::Boundary => mask,
    })
}

fn evaluate_entry(
    entry: &dataset::Entry,
    layout: &Layout,
    params: &DetectParams,
    tol: usize,
    theta: f64,
) -> Result<ImageRow> {
    let img = io::read_rgb(&entry.image)?;
    let (kind, truth) = match &entry.mask {
        None => (
            ImageKind::Original,
            EdgeMap::empty(img.width(), img.height())?,
        ),
        Some(None) => bail!("no mask found"),
        Some(Some(path)) => (
            ImageKind::Spliced,
            load_truth(path, layout.mask_kind, img.dims())?,
        ),
    };
    let detection = detect(&img, params)?;
    Ok(ImageRow::evaluate(
        &entry.id, kind, &detection, &truth, tol, theta,
    )?)
}

fn cmd_eval(args: &EvalArgs) -> Result<()> {
    let layout = match &args.layout {
        Some(path) => Layout::load(path)?,
        None => Layout::default(),
    };
    let entries = dataset::scan(&args.root, &layout)?;
    let params = args.common.params();
    let results: Vec<(String, Result<ImageRow>)> = entries
        .par_iter()
        .map(|e| {
            let row = evaluate_entry(e, &layout, &params, args.tol, args.theta);
            (e.id.clone(), row)
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for (id, result) in results {
        match result {
            Ok(row) => rows.push(row),
            Err(err) => skipped.push(Skipped {
                id,
                reason: format!("{err:#}"),
            }),
        }
    }
    let eval = EvalReport::from_rows(rows).context("no spliced image could be evaluated")?;
    let config = RunConfig {
        dataset: args.root.display().to_string(),
        layout,
        dilate_s: args.common.dilate_s,
        tol: args.tol,
        theta: args.theta,
        alpha_steps: eval::SWEEP_STEPS,
        theta_steps: eval::SWEEP_STEPS,
        linearize: args.common.linearize,
    };
    let report = Report::new(config, eval, skipped);
    let out = &args.common.out;
    create_dir(out)?;
    let json = serde_json::to_string_pretty(&report)?;
    fs::write(out.join("report.json"), json + "\n")
        .with_context(|| format!("cannot write report in {}", out.display()))?;
    let summary = report.summary();
    fs::write(out.join("summary.txt"), &summary)?;
    print!("{summary}");
    Ok(())
}

#[derive(Serialize)]
struct RegionNote {
    name: String,
    boundary: Option<EdgeClass>,
}

#[derive(Serialize)]
struct Annotations {
    width: usize,
    height: usize,
    /// Code written to the class-map raster for each class.
    class_codes: BTreeMap<&'static str, u8>,
    boundary_pixels: BTreeMap<&'static str, usize>,
    clipped_pixels: usize,
    regions: Vec<RegionNote>,
    spliced: bool,
}

fn cmd_simulate(args: &SimulateArgs) -> Result<()> {
    create_dir(&args.out)?;
    if let Some(pairs) = args.suite {
        return write_suite(&args.out, args.seed, pairs, args.size);
    }
    let path = args.scene.as_ref().expect("clap enforces scene or suite");
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let (spec, splice) =
        simulate::parse_scene(&text).with_context(|| format!("{}", path.display()))?;
    let rendering = simulate::render_with_splice(&spec, splice.as_ref())?;
    let name = stem(path);
    let out = &args.out;
    io::write_rgb(&out.join(format!("{name}.png")), &rendering.image)?;
    io::write_mask(
        &out.join(format!("{name}_boundary.png")),
        &rendering.truth.boundary,
    )?;
    io::write_gray(
        &out.join(format!("{name}_classes.png")),
        spec.width,
        spec.height,
        rendering.truth.class_codes(),
    )?;
    let annotations = Annotations {
        width: spec.width,
        height: spec.height,
        class_codes: EdgeClass::ALL
            .iter()
            .map(|c| (c.name(), c.code()))
            .collect(),
        boundary_pixels: EdgeClass::ALL
            .iter()
            .map(|c| (c.name(), rendering.truth.boundary_of(*c).count()))
            .filter(|(_, n)| *n > 0)
            .collect(),
        clipped_pixels: rendering.clipped_pixels(),
        regions: spec
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| RegionNote {
                name: r.name.clone(),
                boundary: if i == 0 { None } else { r.boundary },
            })
            .collect(),
        spliced: splice.is_some(),
    };
    fs::write(
        out.join(format!("{name}_annotations.json")),
        serde_json::to_string_pretty(&annotations)? + "\n",
    )?;
    if rendering.clipped_pixels() > 0 {
        eprintln!(
            "warning: {} pixels clipped to [0, 1]",
            rendering.clipped_pixels()
        );
    }
    println!(
        "{}: rendered {}x{}, {} boundary pixels -> {}",
        path.display(),
        spec.width,
        spec.height,
        rendering.truth.boundary.count(),
        out.display()
    );
    Ok(())
}

/// Writes the suite in the default dataset layout.
fn write_suite(out: &Path, seed: u64, pairs: usize, size: usize) -> Result<()> {
    if pairs == 0 {
        bail!("--suite needs at least one pair");
    }
    let layout = Layout::default();
    let spliced = out.join(&layout.spliced_dir);
    let original = out.join(&layout.original_dir);
    let masks = out.join(&layout.mask_dir);
    for dir in [&spliced, &original, &masks] {
        create_dir(dir)?;
    }
    let items = fixtures::synthetic_suite(seed, pairs, size)?;
    for item in &items {
        match &item.paste_mask {
            Some(mask) => {
                io::write_rgb(&spliced.join(format!("{}.png", item.id)), &item.image)?;
                io::write_mask(&masks.join(format!("{}.png", item.id)), mask)?;
            }
            None => io::write_rgb(&original.join(format!("{}.png", item.id)), &item.image)?,
        }
    }
    println!(
        "wrote {} spliced and {} original {size}x{size} images (seed {seed}) to {}",
        pairs,
        pairs,
        out.display()
    );
    Ok(())
}
