//! Strict CSV readers for spectral tables.
//!
//! Accepted headers:
//! - curves: `wavelength_nm,value`
//! - camera responses: `wavelength_nm,r,g,b`
//! - water types: `wavelength_nm,a,b,kd`
//!
//! Any other header is rejected.

use std::path::Path;

use crate::error::{Error, Result};
use crate::num::Real;
use crate::spectra::{CameraResponse, JerlovType, SpectralCurve, WaterType};

pub const CURVE_HEADER: [&str; 2] = ["wavelength_nm", "value"];
pub const CAMERA_HEADER: [&str; 4] = ["wavelength_nm", "r", "g", "b"];
pub const WATER_HEADER: [&str; 4] = ["wavelength_nm", "a", "b", "kd"];

/// Parses a numeric CSV with exactly `header`, returning one vector per column.
pub fn parse_columns(text: &str, source: &str, header: &[&str]) -> Result<Vec<Vec<f64>>> {
    let bad = |message: String| Error::SpectralData {
        source_name: source.to_string(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if found.len() != header.len() || found.iter().zip(header).any(|(f, h)| f != *h) {
        return Err(bad(format!(
            "expected header `{}`, found `{}`",
            header.join(","),
            found.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut columns = vec![Vec::new(); header.len()];
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        for (col, field) in record.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| bad(format!("row {}: `{field}` is not a number", line + 2)))?;
            if !v.is_finite() {
                return Err(bad(format!("row {}: non-finite value", line + 2)));
            }
            columns[col].push(v);
        }
    }
    Ok(columns)
}

fn to_curve<T: Real>(wavelengths: &[f64], values: &[f64], source: &str) -> Result<SpectralCurve<T>> {
    SpectralCurve::new(
        wavelengths.iter().map(|&w| T::lit(w)).collect(),
        values.iter().map(|&v| T::lit(v)).collect(),
    )
    .map_err(|e| Error::SpectralData {
        source_name: source.to_string(),
        message: e.to_string(),
    })
}

pub fn parse_curve<T: Real>(text: &str, source: &str) -> Result<SpectralCurve<T>> {
    let cols = parse_columns(text, source, &CURVE_HEADER)?;
    to_curve(&cols[0], &cols[1], source)
}

pub fn parse_camera<T: Real>(text: &str, source: &str) -> Result<CameraResponse<T>> {
    let cols = parse_columns(text, source, &CAMERA_HEADER)?;
    CameraResponse::new([
        to_curve(&cols[0], &cols[1], source)?,
        to_curve(&cols[0], &cols[2], source)?,
        to_curve(&cols[0], &cols[3], source)?,
    ])
}

pub fn parse_water<T: Real>(kind: JerlovType, text: &str, source: &str) -> Result<WaterType<T>> {
    let cols = parse_columns(text, source, &WATER_HEADER)?;
    WaterType::new(
        kind,
        to_curve(&cols[0], &cols[1], source)?,
        to_curve(&cols[0], &cols[2], source)?,
        to_curve(&cols[0], &cols[3], source)?,
    )
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_curve<T: Real>(path: &Path) -> Result<SpectralCurve<T>> {
    parse_curve(&read_text(path)?, &path.display().to_string())
}

pub fn read_camera<T: Real>(path: &Path) -> Result<CameraResponse<T>> {
    parse_camera(&read_text(path)?, &path.display().to_string())
}

pub fn read_water<T: Real>(kind: JerlovType, path: &Path) -> Result<WaterType<T>> {
    parse_water(kind, &read_text(path)?, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_curve() {
        let c: SpectralCurve<f64> = parse_curve("wavelength_nm,value\n400,1.5\n700, 2\n", "mem").unwrap();
        assert_eq!(c.values(), &[1.5, 2.0]);
    }

    #[test]
    fn unknown_header_is_an_error() {
        let err = parse_curve::<f64>("wavelength,value\n400,1\n700,2\n", "mem").unwrap_err();
        assert!(err.to_string().contains("expected header"));
        let err = parse_camera::<f64>("wavelength_nm,r,g,b,ir\n400,1,1,1,1\n", "mem").unwrap_err();
        assert!(err.to_string().contains("expected header"));
    }

    #[test]
    fn bad_numbers_are_errors() {
        assert!(parse_curve::<f64>("wavelength_nm,value\n400,abc\n700,2\n", "mem").is_err());
        assert!(parse_curve::<f64>("wavelength_nm,value\n400,1\n700\n", "mem").is_err());
        assert!(parse_curve::<f64>("wavelength_nm,value\n400,-1\n700,2\n", "mem").is_err());
        assert!(parse_curve::<f64>("wavelength_nm,value\n400,inf\n700,2\n", "mem").is_err());
    }

    #[test]
    fn parses_water_table() {
        let text = "wavelength_nm,a,b,kd\n400,0.1,0.2,0.3\n500,0.2,0.3,0.4\n";
        let w: WaterType<f32> = parse_water(JerlovType::II, text, "mem").unwrap();
        assert_eq!(w.beam_attenuation().values(), &[0.3f32, 0.5]);
    }
}
