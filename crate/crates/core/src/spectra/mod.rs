//! Spectral data: curves, water classes, camera response, and the collapse
//! of wavelength-resolved optics into per-channel coefficients.

mod camera;
mod coefficients;
mod curve;
mod library;
mod water;

pub use camera::CameraResponse;
pub use coefficients::{ambient_light, channel_coefficient, effective_coefficients, ChannelCoefficients};
pub use curve::{resample, uniform_grid, SpectralCurve};
pub use library::{default_grid, water_file, SpectralLibrary, CAMERA_FILE, DATA_DIR_ENV};
pub use water::{JerlovType, WaterType};
