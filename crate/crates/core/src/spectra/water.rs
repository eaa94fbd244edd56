use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::curve::SpectralCurve;
use crate::error::{Error, Result};
use crate::num::Real;

/// Jerlov optical water classes, ordered from clearest oceanic to most
/// turbid coastal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JerlovType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "IA")]
    IA,
    #[serde(rename = "IB")]
    IB,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "1C")]
    C1,
    #[serde(rename = "3C")]
    C3,
    #[serde(rename = "5C")]
    C5,
    #[serde(rename = "7C")]
    C7,
    #[serde(rename = "9C")]
    C9,
}

impl JerlovType {
    pub const ALL: [JerlovType; 10] = [
        JerlovType::I,
        JerlovType::IA,
        JerlovType::IB,
        JerlovType::II,
        JerlovType::III,
        JerlovType::C1,
        JerlovType::C3,
        JerlovType::C5,
        JerlovType::C7,
        JerlovType::C9,
    ];

    /// Types used by the default survey sweep (type I is skipped: nearly
    /// indistinguishable from IA).
    pub const SURVEY: [JerlovType; 9] = [
        JerlovType::IA,
        JerlovType::IB,
        JerlovType::II,
        JerlovType::III,
        JerlovType::C1,
        JerlovType::C3,
        JerlovType::C5,
        JerlovType::C7,
        JerlovType::C9,
    ];

    pub fn name(self) -> &'static str {
        match self {
            JerlovType::I => "I",
            JerlovType::IA => "IA",
            JerlovType::IB => "IB",
            JerlovType::II => "II",
            JerlovType::III => "III",
            JerlovType::C1 => "1C",
            JerlovType::C3 => "3C",
            JerlovType::C5 => "5C",
            JerlovType::C7 => "7C",
            JerlovType::C9 => "9C",
        }
    }

    pub fn is_coastal(self) -> bool {
        self >= JerlovType::C1
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for JerlovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for JerlovType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        JerlovType::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::config("water", format!("unknown Jerlov water type `{s}`")))
    }
}

/// Inherent optical properties of one water class on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WaterType<T> {
    kind: JerlovType,
    absorption: SpectralCurve<T>,
    scattering: SpectralCurve<T>,
    diffuse_downwelling: SpectralCurve<T>,
}

impl<T: Real> WaterType<T> {
    pub fn new(
        kind: JerlovType,
        absorption: SpectralCurve<T>,
        scattering: SpectralCurve<T>,
        diffuse_downwelling: SpectralCurve<T>,
    ) -> Result<Self> {
        absorption.ensure_same_grid(&scattering)?;
        absorption.ensure_same_grid(&diffuse_downwelling)?;
        Ok(Self {
            kind,
            absorption,
            scattering,
            diffuse_downwelling,
        })
    }

    pub fn kind(&self) -> JerlovType {
        self.kind
    }

    /// a(λ), 1/m.
    pub fn absorption(&self) -> &SpectralCurve<T> {
        &self.absorption
    }

    /// b(λ), 1/m.
    pub fn scattering(&self) -> &SpectralCurve<T> {
        &self.scattering
    }

    /// K_d(λ), 1/m.
    pub fn diffuse_downwelling(&self) -> &SpectralCurve<T> {
        &self.diffuse_downwelling
    }

    pub fn grid(&self) -> &[T] {
        self.absorption.wavelengths()
    }

    /// Beam attenuation β(λ) = a(λ) + b(λ).
    pub fn beam_attenuation(&self) -> SpectralCurve<T> {
        self.absorption
            .zip_with(&self.scattering, |a, b| a + b)
            .expect("curves share a grid by construction")
    }

    /// Effective attenuation of direct-plus-forward light, a(λ) + g·b(λ).
    pub fn signal_attenuation(&self, g: T) -> SpectralCurve<T> {
        self.absorption
            .zip_with(&self.scattering, |a, b| a + g * b)
            .expect("curves share a grid by construction")
    }

    /// All three curves resampled onto `grid`.
    pub fn resample(&self, grid: &[T]) -> Result<Self> {
        Self::new(
            self.kind,
            self.absorption.resample(grid)?,
            self.scattering.resample(grid)?,
            self.diffuse_downwelling.resample(grid)?,
        )
    }
}
