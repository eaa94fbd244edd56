//! `aquasynth` — render underwater-degraded datasets from a JSON config.

use std::path::PathBuf;
use std::process::ExitCode;

use aquasynth::batch::{run_batch_config, run_pairs_config, BatchConfig, Manifest, Progress, RunOptions};
use clap::Parser;

#[derive(Debug, Parser)]
#[command(name = "aquasynth", version, about = "Physically-based underwater image degradation")]
struct Args {
    /// Run configuration (JSON).
    #[arg(long, value_name = "PATH")]
    config: PathBuf,

    /// Maximum number of worker threads.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,

    /// Expand and validate the job list without rendering or writing.
    #[arg(long)]
    dry_run: bool,

    /// Also write D | F | B term grids.
    #[arg(long)]
    emit_terms: bool,

    /// Render side-by-side reference/proposed survey pairs.
    #[arg(long)]
    pairs: bool,

    /// Suppress per-image progress on stderr.
    #[arg(long, short)]
    quiet: bool,
}

fn summarize(manifest: &Manifest, dry_run: bool) {
    let total = manifest.entries.len() + manifest.answer_key.len();
    if dry_run {
        println!("{total} jobs planned (dry run, nothing written)");
        for e in &manifest.entries {
            println!("  {} <- {}", e.output, e.image);
        }
        for p in &manifest.answer_key {
            println!("  {} <- {}", p.output, p.image);
        }
        return;
    }
    println!("{} of {total} outputs written", total - manifest.failed);
    let errors = manifest
        .entries
        .iter()
        .map(|e| (&e.output, &e.error))
        .chain(manifest.answer_key.iter().map(|p| (&p.output, &p.error)));
    for (output, error) in errors {
        if let Some(msg) = error {
            eprintln!("failed: {output}: {msg}");
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match BatchConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let opts = RunOptions {
        jobs: args.jobs.map(|n| n as usize),
        dry_run: args.dry_run,
        emit_terms: args.emit_terms,
    };
    let quiet = args.quiet || args.dry_run;
    let progress = |p: Progress<'_>| {
        if !quiet {
            eprintln!("[{}/{}] {}", p.done, p.total, p.stem);
        }
    };
    let result = if args.pairs {
        run_pairs_config(&cfg, &opts, &progress)
    } else {
        run_batch_config(&cfg, &opts, &progress)
    };
    match result {
        Ok(report) => {
            summarize(&report.manifest, args.dry_run);
            if let Some(path) = &report.manifest_path {
                println!("manifest: {}", path.display());
            }
            if report.manifest.is_success() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
