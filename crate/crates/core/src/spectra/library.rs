use std::path::{Path, PathBuf};

use super::coefficients::{effective_coefficients, ChannelCoefficients};
use super::curve::{uniform_grid, SpectralCurve};
use super::{CameraResponse, JerlovType, WaterType};
use crate::error::Result;
use crate::io::spectral;
use crate::num::Real;

/// Environment variable naming a directory that replaces the bundled tables.
pub const DATA_DIR_ENV: &str = "AQUASYNTH_DATA_DIR";

pub const CAMERA_FILE: &str = "camera_nikon_d90.csv";

macro_rules! bundled_water {
    ($($name:literal),*) => {
        [$(($name, include_str!(concat!("../../data/jerlov_", $name, ".csv")))),*]
    };
}

const BUNDLED_WATER: [(&str, &str); 10] = bundled_water!("I", "IA", "IB", "II", "III", "1C", "3C", "5C", "7C", "9C");
const BUNDLED_CAMERA: &str = include_str!("../../data/camera_nikon_d90.csv");

/// File name of the water table for `kind` inside a data directory.
pub fn water_file(kind: JerlovType) -> String {
    format!("jerlov_{}.csv", kind.name())
}

/// Default working grid: 400-700 nm at 1 nm.
pub fn default_grid<T: Real>() -> Vec<T> {
    uniform_grid(T::lit(400.0), T::lit(700.0), T::lit(1.0))
}

/// Water tables, camera response and surface illuminant, all resampled onto
/// one working grid. Immutable once built; share freely across threads.
#[derive(Debug, Clone)]
pub struct SpectralLibrary<T> {
    grid: Vec<T>,
    waters: Vec<WaterType<T>>,
    camera: CameraResponse<T>,
    illuminant: SpectralCurve<T>,
}

impl<T: Real> SpectralLibrary<T> {
    /// Tables compiled into the crate, on the default grid, flat illuminant.
    pub fn embedded() -> Result<Self> {
        let waters = JerlovType::ALL
            .iter()
            .zip(BUNDLED_WATER)
            .map(|(&kind, (name, text))| spectral::parse_water(kind, text, &format!("bundled {name}")))
            .collect::<Result<Vec<_>>>()?;
        let camera = spectral::parse_camera(BUNDLED_CAMERA, "bundled camera")?;
        Self::assemble(waters, camera, default_grid())
    }

    /// Loads `jerlov_<type>.csv` for every type plus `camera_nikon_d90.csv`
    /// from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let waters = JerlovType::ALL
            .iter()
            .map(|&kind| spectral::read_water(kind, &dir.join(water_file(kind))))
            .collect::<Result<Vec<_>>>()?;
        let camera = spectral::read_camera(&dir.join(CAMERA_FILE))?;
        Self::assemble(waters, camera, default_grid())
    }

    /// Uses `$AQUASYNTH_DATA_DIR` when set, the embedded tables otherwise.
    pub fn load_default() -> Result<Self> {
        match Self::data_dir_override() {
            Some(dir) => Self::from_dir(&dir),
            None => Self::embedded(),
        }
    }

    pub fn data_dir_override() -> Option<PathBuf> {
        std::env::var_os(DATA_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    }

    fn assemble(waters: Vec<WaterType<T>>, camera: CameraResponse<T>, grid: Vec<T>) -> Result<Self> {
        let waters = waters.iter().map(|w| w.resample(&grid)).collect::<Result<Vec<_>>>()?;
        let camera = camera.resample(&grid)?;
        let illuminant = SpectralCurve::constant(&grid, T::one())?;
        Ok(Self {
            grid,
            waters,
            camera,
            illuminant,
        })
    }

    /// Re-samples everything onto a different working grid.
    pub fn with_grid(&self, grid: Vec<T>) -> Result<Self> {
        Ok(Self {
            waters: self
                .waters
                .iter()
                .map(|w| w.resample(&grid))
                .collect::<Result<Vec<_>>>()?,
            camera: self.camera.resample(&grid)?,
            illuminant: self.illuminant.resample(&grid)?,
            grid,
        })
    }

    /// Replaces the flat surface illuminant E(0,λ).
    pub fn with_illuminant(mut self, illuminant: &SpectralCurve<T>) -> Result<Self> {
        self.illuminant = illuminant.resample(&self.grid)?;
        Ok(self)
    }

    pub fn with_camera(mut self, camera: &CameraResponse<T>) -> Result<Self> {
        self.camera = camera.resample(&self.grid)?;
        Ok(self)
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn water(&self, kind: JerlovType) -> &WaterType<T> {
        &self.waters[kind.index()]
    }

    pub fn camera(&self) -> &CameraResponse<T> {
        &self.camera
    }

    pub fn illuminant(&self) -> &SpectralCurve<T> {
        &self.illuminant
    }

    pub fn coefficients(&self, kind: JerlovType, d: T, g: T, mu: T) -> Result<ChannelCoefficients<T>> {
        effective_coefficients(self.water(kind), &self.camera, &self.illuminant, d, g, mu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load_for_both_precisions() {
        let lib = SpectralLibrary::<f64>::embedded().unwrap();
        assert_eq!(lib.grid().len(), 301);
        assert_eq!(lib.water(JerlovType::C9).kind(), JerlovType::C9);
        let lib32 = SpectralLibrary::<f32>::embedded().unwrap();
        assert_eq!(lib32.grid().len(), 301);
    }

    #[test]
    fn illuminant_defaults_to_flat() {
        let lib = SpectralLibrary::<f64>::embedded().unwrap();
        assert!(lib.illuminant().values().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn from_dir_matches_embedded() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let a = SpectralLibrary::<f64>::from_dir(&dir).unwrap();
        let b = SpectralLibrary::<f64>::embedded().unwrap();
        assert_eq!(a.water(JerlovType::C3), b.water(JerlovType::C3));
        assert_eq!(a.camera(), b.camera());
    }
}
