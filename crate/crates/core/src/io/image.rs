use std::path::Path;

use image::{DynamicImage, ImageBuffer, ImageFormat, Luma, Rgb};

use crate::error::{Error, Result};
use crate::num::Real;
use crate::raster::{Image, Plane};

/// Output sample depth for PNG encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BitDepth {
    #[default]
    Eight,
    Sixteen,
}

/// Decodes a PNG or JPEG into gamma-encoded RGB in [0, 1]. Grayscale is
/// replicated to three channels, alpha dropped.
pub fn load_image<T: Real>(path: &Path) -> Result<Image<T>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_image_bytes(&bytes, path)
}

pub fn decode_image_bytes<T: Real>(bytes: &[u8], path: &Path) -> Result<Image<T>> {
    let format = image::guess_format(bytes).map_err(|e| Error::decode(path, e))?;
    if !matches!(format, ImageFormat::Png | ImageFormat::Jpeg) {
        return Err(Error::UnsupportedFormat(format!(
            "{}: {format:?} (expected PNG or JPEG)",
            path.display()
        )));
    }
    let img = image::load_from_memory_with_format(bytes, format).map_err(|e| Error::decode(path, e))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    let samples: Vec<T> = match img {
        DynamicImage::ImageLuma16(_)
        | DynamicImage::ImageLumaA16(_)
        | DynamicImage::ImageRgb16(_)
        | DynamicImage::ImageRgba16(_) => {
            let scale = T::lit(65535.0);
            img.to_rgb16()
                .into_raw()
                .into_iter()
                .map(|v| T::lit(v as f64) / scale)
                .collect()
        }
        _ => {
            let scale = T::lit(255.0);
            img.to_rgb8()
                .into_raw()
                .into_iter()
                .map(|v| T::lit(v as f64) / scale)
                .collect()
        }
    };
    Image::from_interleaved(w, h, &samples)
}

fn check_unit<T: Real>(v: T) -> Result<f64> {
    let f = v.to_f64_lossy();
    if (0.0..=1.0).contains(&f) {
        Ok(f)
    } else {
        Err(Error::Encode { value: f })
    }
}

/// Round-half-up quantization of a [0, 1] value to 8 bits.
pub fn quantize_u8<T: Real>(v: T) -> Result<u8> {
    Ok((check_unit(v)? * 255.0 + 0.5).floor() as u8)
}

pub fn quantize_u16<T: Real>(v: T) -> Result<u16> {
    Ok((check_unit(v)? * 65535.0 + 0.5).floor() as u16)
}

/// Encodes an image as PNG bytes.
pub fn encode_png<T: Real>(img: &Image<T>, depth: BitDepth) -> Result<Vec<u8>> {
    let (w, h) = (img.width() as u32, img.height() as u32);
    let interleaved = img.to_interleaved();
    let dynamic = match depth {
        BitDepth::Eight => {
            let raw = interleaved.into_iter().map(quantize_u8).collect::<Result<Vec<_>>>()?;
            DynamicImage::ImageRgb8(ImageBuffer::<Rgb<u8>, _>::from_raw(w, h, raw).expect("buffer sized from image"))
        }
        BitDepth::Sixteen => {
            let raw = interleaved.into_iter().map(quantize_u16).collect::<Result<Vec<_>>>()?;
            DynamicImage::ImageRgb16(ImageBuffer::<Rgb<u16>, _>::from_raw(w, h, raw).expect("buffer sized from image"))
        }
    };
    let mut out = std::io::Cursor::new(Vec::new());
    dynamic
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::UnsupportedFormat(format!("PNG encoding failed: {e}")))?;
    Ok(out.into_inner())
}

/// Writes an 8-bit RGB PNG.
pub fn save_image<T: Real>(path: &Path, img: &Image<T>) -> Result<()> {
    save_image_with_depth(path, img, BitDepth::Eight)
}

pub fn save_image_with_depth<T: Real>(path: &Path, img: &Image<T>, depth: BitDepth) -> Result<()> {
    let bytes = encode_png(img, depth)?;
    write_file(path, &bytes)
}

/// Writes a 16-bit grayscale PNG (used for relative depth maps).
pub fn save_gray16<T: Real>(path: &Path, plane: &Plane<T>) -> Result<()> {
    let raw = plane
        .as_slice()
        .iter()
        .map(|&v| quantize_u16(v))
        .collect::<Result<Vec<_>>>()?;
    let buf = ImageBuffer::<Luma<u16>, _>::from_raw(plane.width() as u32, plane.height() as u32, raw)
        .expect("buffer sized from plane");
    let mut out = std::io::Cursor::new(Vec::new());
    DynamicImage::ImageLuma16(buf)
        .write_to(&mut out, ImageFormat::Png)
        .map_err(|e| Error::UnsupportedFormat(format!("PNG encoding failed: {e}")))?;
    write_file(path, &out.into_inner())
}

pub(crate) fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantization_rounds_half_up() {
        assert_eq!(quantize_u8(0.5f64).unwrap(), 128);
        assert_eq!(quantize_u8(0.0f64).unwrap(), 0);
        assert_eq!(quantize_u8(1.0f64).unwrap(), 255);
        assert!(quantize_u8(1.0001f64).is_err());
        assert!(quantize_u8(-0.0001f64).is_err());
        assert!(quantize_u8(f64::NAN).is_err());
    }

    #[test]
    fn non_image_bytes_are_decode_errors() {
        let err = decode_image_bytes::<f64>(b"definitely not an image", Path::new("x.png")).unwrap_err();
        assert!(matches!(err, Error::Decode { .. }));
    }
}
