//! Depth map readers: 16-bit grayscale PNG and single-channel PFM.

use std::path::Path;

use image::{DynamicImage, ImageFormat};

use crate::error::{Error, Result};
use crate::io::image::write_file;
use crate::num::Real;
use crate::raster::Plane;

/// Byte order of PFM samples; a negative scale line means little-endian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endianness {
    Little,
    Big,
}

/// Loads a relative depth map (larger = farther). PNG samples are
/// normalized by their full-scale value; PFM values are returned as stored
/// (times |scale|).
pub fn load_depth<T: Real>(path: &Path) -> Result<Plane<T>> {
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
        .unwrap_or_default();
    match ext.as_str() {
        "pfm" => read_pfm(path),
        "png" => read_png_depth(path),
        other => Err(Error::UnsupportedFormat(format!(
            "{}: depth extension `{other}` (expected png or pfm)",
            path.display()
        ))),
    }
}

fn read_png_depth<T: Real>(path: &Path) -> Result<Plane<T>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let img = image::load_from_memory_with_format(&bytes, ImageFormat::Png).map_err(|e| Error::decode(path, e))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let data: Vec<T> = match img {
        DynamicImage::ImageLuma16(buf) => {
            let full = T::lit(65535.0);
            buf.into_raw().into_iter().map(|v| T::lit(v as f64) / full).collect()
        }
        DynamicImage::ImageLuma8(buf) => {
            let full = T::lit(255.0);
            buf.into_raw().into_iter().map(|v| T::lit(v as f64) / full).collect()
        }
        other => {
            return Err(Error::decode(
                path,
                format!("depth PNG must be single-channel, got {:?}", other.color()),
            ))
        }
    };
    Plane::new(w, h, data)
}

/// Reads a single-channel (`Pf`) PFM. Rows are stored bottom-to-top and are
/// returned top-to-bottom.
pub fn read_pfm<T: Real>(path: &Path) -> Result<Plane<T>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pfm(&bytes).map_err(|m| Error::decode(path, m))
}

fn decode_pfm<T: Real>(bytes: &[u8]) -> std::result::Result<Plane<T>, String> {
    let mut pos = 0;
    let mut token = || -> std::result::Result<String, String> {
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if start == pos {
            return Err("truncated PFM header".into());
        }
        let t = String::from_utf8_lossy(&bytes[start..pos]).into_owned();
        Ok(t)
    };
    let magic = token()?;
    match magic.as_str() {
        "Pf" => {}
        "PF" => return Err("three-channel PFM where a single-channel depth map is required".into()),
        other => return Err(format!("bad PFM magic `{other}`")),
    }
    let width: usize = token()?.parse().map_err(|_| "bad PFM width".to_string())?;
    let height: usize = token()?.parse().map_err(|_| "bad PFM height".to_string())?;
    let scale: f64 = token()?.parse().map_err(|_| "bad PFM scale".to_string())?;
    if scale == 0.0 || !scale.is_finite() {
        return Err("PFM scale must be non-zero and finite".into());
    }
    // Exactly one whitespace byte separates the scale from the raster.
    let data_start = pos + 1;
    let expected = width * height * 4;
    if bytes.len() < data_start + expected {
        return Err(format!(
            "PFM raster truncated: need {expected} bytes, have {}",
            bytes.len().saturating_sub(data_start)
        ));
    }
    let endian = if scale < 0.0 {
        Endianness::Little
    } else {
        Endianness::Big
    };
    let magnitude = scale.abs();
    let raw = &bytes[data_start..data_start + expected];
    let mut data = vec![T::zero(); width * height];
    for (i, chunk) in raw.chunks_exact(4).enumerate() {
        let arr = [chunk[0], chunk[1], chunk[2], chunk[3]];
        let v = match endian {
            Endianness::Little => f32::from_le_bytes(arr),
            Endianness::Big => f32::from_be_bytes(arr),
        };
        let (x, file_row) = (i % width, i / width);
        let y = height - 1 - file_row;
        let v = if magnitude == 1.0 {
            v as f64
        } else {
            v as f64 * magnitude
        };
        data[y * width + x] = T::lit(v);
    }
    Plane::new(width, height, data).map_err(|e| e.to_string())
}

/// Writes a single-channel PFM with scale ±1.
pub fn write_pfm<T: Real>(path: &Path, plane: &Plane<T>, endian: Endianness) -> Result<()> {
    let (w, h) = plane.dims();
    let scale = match endian {
        Endianness::Little => "-1.0",
        Endianness::Big => "1.0",
    };
    let mut bytes = format!("Pf\n{w} {h}\n{scale}\n").into_bytes();
    bytes.reserve(w * h * 4);
    for y in (0..h).rev() {
        for &v in plane.row(y) {
            let f = v.to_f32().unwrap_or(f32::NAN);
            bytes.extend_from_slice(&match endian {
                Endianness::Little => f.to_le_bytes(),
                Endianness::Big => f.to_be_bytes(),
            });
        }
    }
    write_file(path, &bytes)
}
