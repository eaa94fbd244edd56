//! Dataset generation: expands images × water types × modes × parameter
//! sweeps into jobs, renders them in parallel and writes a manifest.
//!
//! Layout under the output directory:
//!
//! ```text
//! <water>/<mode>/<stem>.png            batch outputs (single sweep point)
//! <water>/<mode>/p<k>/<stem>.png       batch outputs (sweep point k)
//! terms/<water>/<mode>/<stem>_x….png   term grids (--emit-terms)
//! manifest.json
//! pairs/<water>/<stem>.png             survey pairs
//! pairs/manifest.json
//! ```

mod config;
mod manifest;

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{BatchConfig, DepthKind, InputSpec, PairAssignment, PairSettings};
pub use manifest::{sha256_hex, Entry, Inputs, Manifest, PairEntry, RunKind, Status};

use crate::config::Mode;
use crate::error::{Error, Result};
use crate::field::field_seed;
use crate::io::grid::{emit_term_grid, hstack, GUTTER};
use crate::io::image::write_file;
use crate::io::{encode_png, load_depth, load_image};
use crate::pipeline::{DepthInput, Pipeline, SourceScene};
use crate::spectra::{JerlovType, SpectralLibrary};

const IMAGE_EXTENSIONS: [&str; 3] = ["png", "jpg", "jpeg"];

/// Stream tags that keep the pair-mode shuffles independent of the
/// per-image field seeds.
const SPLIT_STREAM: u64 = u64::MAX;
const SIDE_STREAM: u64 = u64::MAX - 1;

/// Knobs that do not change what is computed.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
    /// Expand and validate only: no decoding, no writes.
    pub dry_run: bool,
    /// Also write D | F | B term grids.
    pub emit_terms: bool,
}

/// Progress notification, one per finished image.
#[derive(Debug, Clone)]
pub struct Progress<'a> {
    pub done: usize,
    pub total: usize,
    pub stem: &'a str,
}

/// A clean image with its sibling depth map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceFile {
    pub stem: String,
    pub image: PathBuf,
    pub depth: PathBuf,
}

impl SourceFile {
    fn image_name(&self) -> String {
        file_name(&self.image)
    }

    fn depth_name(&self) -> String {
        file_name(&self.depth)
    }
}

fn file_name(p: &Path) -> String {
    p.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Lists images (sorted by file name) and pairs each with its depth map.
/// Fails listing every stem whose depth map is missing.
pub fn discover(cfg: &BatchConfig) -> Result<Vec<SourceFile>> {
    let dir = cfg.images_dir();
    let read = std::fs::read_dir(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut images = Vec::new();
    for entry in read {
        let path = entry.map_err(|e| Error::io(&dir, e))?.path();
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        if path.is_file() && IMAGE_EXTENSIONS.contains(&ext.as_str()) {
            images.push(path);
        }
    }
    images.sort();
    let depth_dir = cfg.depth_dir();
    let mut files = Vec::with_capacity(images.len());
    let mut missing = Vec::new();
    for image in images {
        let stem = image
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let depth = depth_dir.join(format!("{stem}.{}", cfg.input.depth_extension));
        if !depth.is_file() {
            missing.push(stem.clone());
        }
        files.push(SourceFile { stem, image, depth });
    }
    if !missing.is_empty() {
        return Err(Error::MissingDepth(missing));
    }
    let mut stems: Vec<&str> = files.iter().map(|f| f.stem.as_str()).collect();
    stems.sort_unstable();
    if let Some(w) = stems.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::config(
            "input.images",
            format!("several images share the stem `{}`", w[0]),
        ));
    }
    Ok(files)
}

fn load_scene(cfg: &BatchConfig, file: &SourceFile) -> Result<SourceScene<f64>> {
    let image = load_image(&file.image)?;
    let depth = load_depth(&file.depth)?;
    let depth = match cfg.input.depth_kind {
        DepthKind::Relative => DepthInput::Relative(depth),
        DepthKind::Metric => DepthInput::Metric(depth),
    };
    SourceScene::new(image, depth)
}

fn library_source() -> String {
    SpectralLibrary::<f64>::data_dir_override()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "embedded".into())
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    if jobs == Some(0) {
        return Err(Error::config("--jobs", "must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::config("--jobs", e.to_string()))
}

fn empty_manifest(cfg: &BatchConfig, kind: RunKind) -> Manifest {
    let config = serde_json::to_value(cfg).expect("config serializes");
    Manifest {
        kind,
        version: crate::VERSION.to_string(),
        config_hash: sha256_hex(config.to_string().as_bytes()),
        seed: cfg.seed,
        spectral_data: library_source(),
        bit_depth: cfg.bit_depth,
        inputs: Inputs {
            images: cfg.images_dir(),
            depth: cfg.depth_dir(),
        },
        config,
        entries: Vec::new(),
        answer_key: Vec::new(),
        failed: 0,
    }
}

fn rel(p: &Path) -> String {
    p.components()
        .map(|c| c.as_os_str().to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join("/")
}

fn batch_output(cfg: &BatchConfig, water: JerlovType, mode: Mode, sweep: usize, stem: &str) -> PathBuf {
    let mut p = PathBuf::from(water.name()).join(mode.name());
    if cfg.params.len() > 1 {
        p.push(format!("p{sweep}"));
    }
    p.join(format!("{stem}.png"))
}

fn batch_cells(cfg: &BatchConfig, files: &[SourceFile]) -> Vec<Vec<Entry>> {
    files
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let seed = field_seed(cfg.seed, i as u64);
            let mut cells = Vec::new();
            for sweep in 0..cfg.params.len() {
                for &water in &cfg.water_types {
                    for &mode in &cfg.modes {
                        cells.push(Entry {
                            output: rel(&batch_output(cfg, water, mode, sweep, &f.stem)),
                            image: f.image_name(),
                            depth: f.depth_name(),
                            image_index: i,
                            sweep_index: sweep,
                            config: cfg.job_config(sweep, water, mode, seed),
                            status: Status::Planned,
                            sha256: None,
                            terms: None,
                            error: None,
                        });
                    }
                }
            }
            cells
        })
        .collect()
}

/// Result of a batch or pair run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub manifest: Manifest,
    /// Where the manifest was written; `None` for dry runs.
    pub manifest_path: Option<PathBuf>,
}

/// Loads the config at `config_path` and renders every batch cell.
pub fn run_batch(config_path: &Path, opts: &RunOptions) -> Result<RunReport> {
    let cfg = BatchConfig::load(config_path)?;
    run_batch_config(&cfg, opts, &|_| {})
}

/// Loads the config at `config_path` and renders survey pairs.
pub fn run_pairs(config_path: &Path, opts: &RunOptions) -> Result<RunReport> {
    let cfg = BatchConfig::load(config_path)?;
    run_pairs_config(&cfg, opts, &|_| {})
}

fn render_image_cells(
    pipeline: &Pipeline<f64>,
    cfg: &BatchConfig,
    opts: &RunOptions,
    out_dir: &Path,
    file: &SourceFile,
    mut cells: Vec<Entry>,
) -> Vec<Entry> {
    let scene = match load_scene(cfg, file) {
        Ok(s) => s,
        Err(e) => {
            for cell in &mut cells {
                cell.status = Status::Failed;
                cell.error = Some(e.to_string());
            }
            return cells;
        }
    };
    for cell in &mut cells {
        let outcome = (|| -> Result<(String, Option<String>)> {
            let report = pipeline.term_report(&scene, &cell.config)?;
            let encoded = crate::color::encode_image(&report.composite.clamp_unit());
            let bytes = encode_png(&encoded, cfg.bit_depth)?;
            write_file(&out_dir.join(&cell.output), &bytes)?;
            let terms = if opts.emit_terms {
                let target = out_dir
                    .join("terms")
                    .join(cell.config.water.name())
                    .join(cell.config.mode.name())
                    .join(format!("{}.png", file.stem));
                let written = emit_term_grid(&report.terms, &target)?;
                Some(rel(written.strip_prefix(out_dir).unwrap_or(&written)))
            } else {
                None
            };
            Ok((sha256_hex(&bytes), terms))
        })();
        match outcome {
            Ok((hash, terms)) => {
                cell.status = Status::Ok;
                cell.sha256 = Some(hash);
                cell.terms = terms;
            }
            Err(e) => {
                cell.status = Status::Failed;
                cell.error = Some(e.to_string());
            }
        }
    }
    cells
}

fn write_manifest(manifest: &Manifest, path: &Path) -> Result<()> {
    write_file(path, manifest.to_json().as_bytes())
}

/// Renders every (image, sweep point, water type, mode) cell of `cfg`.
///
/// Per-cell failures are recorded in the manifest rather than aborting the
/// run; check [`Manifest::is_success`].
pub fn run_batch_config(
    cfg: &BatchConfig,
    opts: &RunOptions,
    progress: &(dyn Fn(Progress<'_>) + Sync),
) -> Result<RunReport> {
    cfg.validate()?;
    let files = discover(cfg)?;
    let cells = batch_cells(cfg, &files);
    let mut manifest = empty_manifest(cfg, RunKind::Batch);
    if opts.dry_run {
        manifest.entries = cells.into_iter().flatten().collect();
        return Ok(RunReport {
            manifest,
            manifest_path: None,
        });
    }
    let pipeline = Pipeline::new(SpectralLibrary::load_default()?);
    let out_dir = cfg.output_dir();
    let pool = thread_pool(opts.jobs)?;
    let done = AtomicUsize::new(0);
    let total = files.len();
    let rendered: Vec<Vec<Entry>> = pool.install(|| {
        files
            .par_iter()
            .zip(cells.into_par_iter())
            .map(|(file, cells)| {
                let out = render_image_cells(&pipeline, cfg, opts, &out_dir, file, cells);
                let n = done.fetch_add(1, Ordering::SeqCst) + 1;
                progress(Progress {
                    done: n,
                    total,
                    stem: &file.stem,
                });
                out
            })
            .collect()
    });
    manifest.entries = rendered.into_iter().flatten().collect();
    manifest.failed = manifest.entries.iter().filter(|e| e.status == Status::Failed).count();
    let path = out_dir.join("manifest.json");
    write_manifest(&manifest, &path)?;
    Ok(RunReport {
        manifest,
        manifest_path: Some(path),
    })
}

/// Which water type each image is paired under.
fn pair_cells(cfg: &BatchConfig, n_images: usize) -> Vec<(usize, JerlovType)> {
    match cfg.pairs.assignment {
        PairAssignment::Cross => cfg
            .water_types
            .iter()
            .flat_map(|&w| (0..n_images).map(move |i| (i, w)))
            .collect(),
        PairAssignment::Split => {
            let mut order: Vec<usize> = (0..n_images).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(field_seed(cfg.seed, SPLIT_STREAM)));
            let mut cells: Vec<(usize, JerlovType)> = order
                .into_iter()
                .enumerate()
                .map(|(k, i)| (i, cfg.water_types[k % cfg.water_types.len()]))
                .collect();
            cells.sort_by_key(|&(i, w)| (w.index(), i));
            cells
        }
    }
}

/// Balanced, seeded left-side assignment: `n / 2` pairs show the reference
/// rendering on the left, the rest the proposed one.
pub fn left_sides(n: usize, seed: u64) -> Vec<Mode> {
    let mut sides: Vec<Mode> = (0..n)
        .map(|k| if k < n / 2 { Mode::Reference } else { Mode::Proposed })
        .collect();
    sides.shuffle(&mut ChaCha8Rng::seed_from_u64(field_seed(seed, SIDE_STREAM)));
    sides
}

fn other(mode: Mode) -> Mode {
    match mode {
        Mode::Reference => Mode::Proposed,
        Mode::Proposed => Mode::Reference,
    }
}

/// Renders side-by-side reference/proposed pairs with randomized order.
/// Uses the first sweep point; `modes` is ignored since both are needed.
pub fn run_pairs_config(
    cfg: &BatchConfig,
    opts: &RunOptions,
    progress: &(dyn Fn(Progress<'_>) + Sync),
) -> Result<RunReport> {
    cfg.validate()?;
    if cfg.params.len() != 1 {
        return Err(Error::config(
            "params",
            "pair mode takes a single parameter set, not a sweep",
        ));
    }
    let files = discover(cfg)?;
    let cells = pair_cells(cfg, files.len());
    let sides = left_sides(cells.len(), cfg.seed);
    let mut manifest = empty_manifest(cfg, RunKind::Pairs);
    let planned: Vec<PairEntry> = cells
        .iter()
        .zip(&sides)
        .map(|(&(i, water), &left)| {
            let f = &files[i];
            PairEntry {
                output: rel(&Path::new("pairs").join(water.name()).join(format!("{}.png", f.stem))),
                image: f.image_name(),
                depth: f.depth_name(),
                image_index: i,
                left,
                right: other(left),
                config: cfg.job_config(0, water, Mode::Proposed, field_seed(cfg.seed, i as u64)),
                status: Status::Planned,
                sha256: None,
                error: None,
            }
        })
        .collect();
    if opts.dry_run {
        manifest.answer_key = planned;
        return Ok(RunReport {
            manifest,
            manifest_path: None,
        });
    }
    let pipeline = Pipeline::new(SpectralLibrary::load_default()?);
    let out_dir = cfg.output_dir();
    let pool = thread_pool(opts.jobs)?;
    let done = AtomicUsize::new(0);
    let total = planned.len();
    let rendered: Vec<PairEntry> = pool.install(|| {
        planned
            .into_par_iter()
            .map(|mut pair| {
                let file = &files[pair.image_index];
                let outcome = (|| -> Result<String> {
                    let scene = load_scene(cfg, file)?;
                    let (reference, proposed) = pipeline.synthesize_pair(&scene, &pair.config)?;
                    let (l, r) = match pair.left {
                        Mode::Reference => (&reference, &proposed),
                        Mode::Proposed => (&proposed, &reference),
                    };
                    let bytes = encode_png(&hstack(&[l, r], GUTTER, 1.0), cfg.bit_depth)?;
                    write_file(&out_dir.join(&pair.output), &bytes)?;
                    Ok(sha256_hex(&bytes))
                })();
                match outcome {
                    Ok(hash) => {
                        pair.status = Status::Ok;
                        pair.sha256 = Some(hash);
                    }
                    Err(e) => {
                        pair.status = Status::Failed;
                        pair.error = Some(e.to_string());
                    }
                }
                let n = done.fetch_add(1, Ordering::SeqCst) + 1;
                progress(Progress {
                    done: n,
                    total,
                    stem: &file.stem,
                });
                pair
            })
            .collect()
    });
    manifest.failed = rendered.iter().filter(|p| p.status == Status::Failed).count();
    manifest.answer_key = rendered;
    let path = out_dir.join("pairs").join("manifest.json");
    write_manifest(&manifest, &path)?;
    Ok(RunReport {
        manifest,
        manifest_path: Some(path),
    })
}
