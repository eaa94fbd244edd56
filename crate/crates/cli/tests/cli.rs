use std::path::Path;
use std::process::{Command, Output};

use aquasynth::depth::{write_pfm, Endianness};
use aquasynth::io::save_image;
use aquasynth::{Image64, Plane64};

fn aquasynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aquasynth"))
        .args(args)
        .env_remove("AQUASYNTH_DATA_DIR")
        .output()
        .unwrap()
}

fn setup(root: &Path, config: &str) -> String {
    let images = root.join("images");
    std::fs::create_dir_all(&images).unwrap();
    for (i, stem) in ["coral", "diver"].iter().enumerate() {
        let img = Image64::from_fn(16, 12, |x, y| [x as f64 / 15.0, y as f64 / 11.0, 0.3 + 0.2 * i as f64]);
        save_image(&images.join(format!("{stem}.png")), &img).unwrap();
        let depth = Plane64::from_fn(16, 12, |x, y| (2 * x + y + i) as f64);
        write_pfm(&images.join(format!("{stem}.pfm")), &depth, Endianness::Big).unwrap();
    }
    let path = root.join("config.json");
    std::fs::write(&path, config).unwrap();
    path.to_string_lossy().into_owned()
}

const CONFIG: &str = r#"{"input": "images", "output": "out", "water_types": ["IA", "3C"], "seed": 1}"#;

#[test]
fn batch_run_succeeds_and_reports_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), CONFIG);
    let out = aquasynth(&["--config", &cfg, "--jobs", "2", "--quiet"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("8 of 8 outputs written"), "{stdout}");
    assert!(dir.path().join("out/3C/proposed/diver.png").exists());
    assert!(dir.path().join("out/manifest.json").exists());
}

#[test]
fn dry_run_lists_jobs_without_writing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), CONFIG);
    let out = aquasynth(&["--config", &cfg, "--dry-run", "--emit-terms"]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("8 jobs planned"), "{stdout}");
    assert!(stdout.contains("IA/reference/coral.png <- coral.png"), "{stdout}");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn pairs_and_term_grids() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), CONFIG);
    let out = aquasynth(&["--config", &cfg, "--pairs", "--quiet"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("out/pairs/IA/coral.png").exists());
    assert!(dir.path().join("out/pairs/manifest.json").exists());

    let out = aquasynth(&["--config", &cfg, "--emit-terms", "--quiet"]);
    assert!(out.status.success());
    let terms = std::fs::read_dir(dir.path().join("out/terms/3C/proposed"))
        .unwrap()
        .count();
    assert_eq!(terms, 2);
}

#[test]
fn config_errors_exit_with_usage_code_and_key_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(
        dir.path(),
        r#"{"input": "images", "output": "out", "params": {"g": 1.5}}"#,
    );
    let out = aquasynth(&["--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("params.g"), "{stderr}");
    assert!(!dir.path().join("out").exists());
}

#[test]
fn partial_failure_exits_nonzero_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), CONFIG);
    std::fs::write(dir.path().join("images/diver.png"), b"garbage").unwrap();
    let out = aquasynth(&["--config", &cfg, "--quiet"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed: IA/reference/diver.png"));
    assert!(dir.path().join("out/manifest.json").exists());
    assert!(dir.path().join("out/IA/reference/coral.png").exists());
}

#[test]
fn zero_jobs_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = setup(dir.path(), CONFIG);
    let out = aquasynth(&["--config", &cfg, "--jobs", "0"]);
    assert!(!out.status.success());
}
