use std::path::{Path, PathBuf};

use aquasynth::io::{
    decode_image_bytes, emit_term_grid, load_depth, load_image, read_pfm, save_gray16, save_image,
    save_image_with_depth, stretch, write_pfm, BitDepth, Endianness, GUTTER,
};
use aquasynth::optics::TermStack;
use aquasynth::{Error, Image64, Plane64};
use image::{ImageBuffer, Luma, Rgb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// PFM bytes assembled by hand: header, then rows bottom-to-top.
fn handmade_pfm(rows_top_down: &[[f32; 3]], little: bool, scale: f32) -> Vec<u8> {
    let h = rows_top_down.len();
    let signed = if little { -scale.abs() } else { scale.abs() };
    let mut bytes = format!("Pf\n3 {h}\n{signed}\n").into_bytes();
    for row in rows_top_down.iter().rev() {
        for v in row {
            bytes.extend(if little { v.to_le_bytes() } else { v.to_be_bytes() });
        }
    }
    bytes
}

#[test]
fn pfm_reader_matches_handmade_files() {
    let dir = tempfile::tempdir().unwrap();
    let rows = [[1.0f32, 2.0, 3.0], [4.5, 5.5, 6.5]];
    for little in [true, false] {
        let p = dir.path().join(format!("d{little}.pfm"));
        std::fs::write(&p, handmade_pfm(&rows, little, 1.0)).unwrap();
        let d: Plane64 = read_pfm(&p).unwrap();
        assert_eq!(d.dims(), (3, 2));
        assert_eq!(d.get(0, 0), 1.0, "top row must come first");
        assert_eq!(d.get(2, 1), 6.5);
    }
}

#[test]
fn pfm_round_trip_is_exact_for_f32_values() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let plane = Plane64::from_fn(17, 9, |_, _| (rng.random::<f32>() * 40.0) as f64);
    for endian in [Endianness::Little, Endianness::Big] {
        let p = dir.path().join("z.pfm");
        write_pfm(&p, &plane, endian).unwrap();
        let back: Plane64 = load_depth(&p).unwrap();
        assert_eq!(back, plane);
    }
}

#[test]
fn pfm_rejects_color_and_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.pfm");
    std::fs::write(&p, b"PF\n1 1\n-1.0\n\0\0\0\0\0\0\0\0\0\0\0\0").unwrap();
    assert!(read_pfm::<f64>(&p).is_err());
    let mut bytes = handmade_pfm(&[[1.0, 2.0, 3.0]], true, 1.0);
    bytes.truncate(bytes.len() - 2);
    std::fs::write(&p, bytes).unwrap();
    assert!(read_pfm::<f64>(&p).is_err());
}

#[test]
fn sixteen_bit_depth_png_full_scale_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.png");
    let raw: Vec<u16> = vec![0, 32768, 65535, 65535];
    ImageBuffer::<Luma<u16>, _>::from_raw(2, 2, raw)
        .unwrap()
        .save(&p)
        .unwrap();
    let d: Plane64 = load_depth(&p).unwrap();
    assert_eq!(d.as_slice(), &[0.0, 32768.0 / 65535.0, 1.0, 1.0]);

    let q = dir.path().join("ramp.png");
    let ramp = Plane64::from_fn(256, 1, |x, _| x as f64 / 255.0);
    save_gray16(&q, &ramp).unwrap();
    let back: Plane64 = load_depth(&q).unwrap();
    for (a, b) in back.as_slice().iter().zip(ramp.as_slice()) {
        assert!((a - b).abs() <= 0.5 / 65535.0);
    }
}

#[test]
fn depth_png_must_be_single_channel() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("rgb.png");
    save_image(&p, &Image64::filled(2, 2, [0.5; 3])).unwrap();
    assert!(matches!(load_depth::<f64>(&p), Err(Error::Decode { .. })));
    assert!(matches!(
        load_depth::<f64>(&dir.path().join("x.exr")),
        Err(Error::UnsupportedFormat(_))
    ));
}

#[test]
fn solid_white_png_decodes_to_one_and_gray_promotes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("w.png");
    ImageBuffer::<Rgb<u8>, _>::from_pixel(3, 2, Rgb([255, 255, 255]))
        .save(&p)
        .unwrap();
    let img: Image64 = load_image(&p).unwrap();
    assert!(img.samples().all(|v| v == 1.0));

    let g = dir.path().join("g.png");
    ImageBuffer::<Luma<u8>, _>::from_pixel(2, 2, Luma([51]))
        .save(&g)
        .unwrap();
    let img: Image64 = load_image(&g).unwrap();
    assert_eq!(img.pixel(1, 1), [0.2; 3]);
}

#[test]
fn png_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let img = Image64::from_fn(13, 7, |_, _| {
        [0, 1, 2].map(|_| rng.random_range(0..=255u8) as f64 / 255.0)
    });
    let p = dir.path().join("rt.png");
    save_image(&p, &img).unwrap();
    let back: Image64 = load_image(&p).unwrap();
    assert_eq!(back, img);

    let img16 = Image64::from_fn(5, 5, |x, y| {
        [
            (x * 16383) as f64 / 65535.0,
            (y * 16383) as f64 / 65535.0,
            1.0 / 65535.0,
        ]
    });
    save_image_with_depth(&p, &img16, BitDepth::Sixteen).unwrap();
    assert_eq!(load_image::<f64>(&p).unwrap(), img16);
}

#[test]
fn random_image_quantization_error_is_half_a_step() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let img = Image64::from_fn(32, 32, |_, _| [rng.random(), rng.random(), rng.random()]);
    let p = dir.path().join("q.png");
    save_image(&p, &img).unwrap();
    let back: Image64 = load_image(&p).unwrap();
    let worst = back
        .samples()
        .zip(img.samples())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1.0 / 510.0 + 1e-15, "{worst}");
}

#[test]
fn saving_out_of_range_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = Image64::filled(1, 1, [1.0 + 1e-9, 0.0, 0.0]);
    assert!(matches!(
        save_image(&dir.path().join("b.png"), &bad),
        Err(Error::Encode { .. })
    ));
    assert!(!dir.path().join("b.png").exists());
}

/// The fixture was decoded by libjpeg (via Pillow). Independent IDCT
/// implementations disagree by a level or two on busy blocks, so the bound
/// is: every sample within 2/255, and at least 99% within 1/255.
#[test]
fn jpeg_matches_reference_decoder() {
    let img: Image64 = load_image(&fixture("gradient.jpg")).unwrap();
    let reference = std::fs::read(fixture("gradient.rgb")).unwrap();
    assert_eq!(img.dims(), (40, 24));
    let ours: Vec<f64> = img.to_interleaved();
    assert_eq!(ours.len(), reference.len());
    let levels: Vec<i32> = ours
        .iter()
        .zip(&reference)
        .map(|(a, &b)| ((a * 255.0).round() as i32 - b as i32).abs())
        .collect();
    let worst = *levels.iter().max().unwrap();
    let within_one = levels.iter().filter(|&&d| d <= 1).count() as f64 / levels.len() as f64;
    assert!(worst <= 2, "max deviation {worst}/255");
    assert!(within_one >= 0.99, "only {:.2}% within 1/255", within_one * 100.0);
}

#[test]
fn corrupt_and_unsupported_inputs_are_decode_errors() {
    let p = Path::new("corrupt.png");
    let mut bytes = std::fs::read(fixture("gradient.jpg")).unwrap();
    bytes.truncate(40);
    assert!(decode_image_bytes::<f64>(&bytes, p).is_err());
    assert!(decode_image_bytes::<f64>(b"GIF89a\x01\x00\x01\x00", p).is_err());
    assert!(matches!(
        load_image::<f64>(Path::new("/nonexistent/x.png")),
        Err(Error::Io { .. })
    ));
}

#[test]
fn term_grid_layout_and_stretch() {
    let dir = tempfile::tempdir().unwrap();
    let (w, h) = (6, 4);
    let stack = TermStack {
        direct: Image64::from_fn(w, h, |x, y| [0.1 + 0.05 * x as f64, 0.2, 0.3 + 0.01 * y as f64]),
        forward: Image64::zeros(w, h),
        backscatter: Image64::from_fn(w, h, |x, _| [0.4 + 0.02 * x as f64; 3]),
    };
    let written = emit_term_grid(&stack, &dir.path().join("terms/frame.png")).unwrap();
    let name = written.file_name().unwrap().to_string_lossy().into_owned();
    assert!(name.starts_with("frame_xD") && name.contains("_xF0.0000_"), "{name}");

    let grid: Image64 = load_image(&written).unwrap();
    assert_eq!(grid.dims(), (3 * w + 2 * GUTTER, h));
    for y in 0..h {
        for x in 0..w {
            assert_eq!(grid.pixel(w + GUTTER + x, y), [0.0; 3], "flat forward panel is black");
        }
    }

    // Min-max oracle on the direct panel: min → 0, max → 255.
    let (lo, hi) = (0.1, 0.1 + 0.05 * 5.0);
    let (s, factor) = stretch(&stack.direct);
    assert!((factor - 1.0 / (hi - lo)).abs() < 1e-9);
    let bytes: Vec<u8> = grid
        .to_interleaved()
        .iter()
        .map(|v| (v * 255.0).round() as u8)
        .collect();
    let panel_d: Vec<u8> = (0..h)
        .flat_map(|y| (0..w).flat_map(move |x| (0..3).map(move |c| (x, y, c))))
        .map(|(x, y, c)| bytes[(y * grid.width() + x) * 3 + c])
        .collect();
    assert_eq!(*panel_d.iter().min().unwrap(), 0);
    assert_eq!(*panel_d.iter().max().unwrap(), 255);
    let expected = ((stack.direct.pixel(3, 2)[0] - lo) / (hi - lo) * 255.0 + 0.5).floor() as u8;
    assert_eq!(bytes[(2 * grid.width() + 3) * 3], expected);
    assert!((s.pixel(0, 0)[0]).abs() < 1e-12);
}
