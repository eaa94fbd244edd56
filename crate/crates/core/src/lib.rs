//! Physically-based underwater degradation of clean, in-air images.
//!
//! A clean image and its depth map are turned into an underwater rendering
//! as the sum of three terms: attenuated direct signal, forward-scattered
//! (blurred) signal and backscattered veiling light. Per-channel coefficients
//! are collapsed from spectral water and camera data for each Jerlov type.
//!
//! The numerical core is generic over [`Real`] (`f32` or `f64`); aliases for
//! both precisions live at the crate root.
//!
//! ```
//! use aquasynth::{DegradationConfig, DepthInput, JerlovType, Mode, Pipeline64, Image64, Plane64, SourceScene};
//!
//! let pipeline = Pipeline64::embedded()?;
//! let image = Image64::filled(16, 16, [0.8, 0.6, 0.4]);
//! let depth = Plane64::from_fn(16, 16, |x, _| x as f64);
//! let scene = SourceScene::new(image, DepthInput::Relative(depth))?;
//! let out = pipeline.synthesize(&scene, &DegradationConfig::new(JerlovType::C3, Mode::Proposed))?;
//! assert_eq!(out.dims(), (16, 16));
//! # Ok::<(), aquasynth::Error>(())
//! ```

// `!(x > 0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod batch;
pub mod color;
pub mod config;
pub mod depth;
pub mod error;
pub mod field;
pub mod io;
pub mod num;
pub mod optics;
pub mod pipeline;
pub mod raster;
pub mod spectra;

pub use config::{CoefficientOverride, DegradationConfig, FieldSettings, Mode, Params};
pub use error::{Error, Result};
pub use num::Real;
pub use pipeline::{ColorEncoding, DepthInput, Pipeline, SourceScene, TermReport};
pub use raster::{Image, Plane};
pub use spectra::{ChannelCoefficients, JerlovType, SpectralCurve, SpectralLibrary};

pub type Image32 = Image<f32>;
pub type Image64 = Image<f64>;
pub type Plane32 = Plane<f32>;
pub type Plane64 = Plane<f64>;
pub type SpectralCurve32 = SpectralCurve<f32>;
pub type SpectralCurve64 = SpectralCurve<f64>;
pub type SpectralLibrary32 = SpectralLibrary<f32>;
pub type SpectralLibrary64 = SpectralLibrary<f64>;
pub type Pipeline32 = Pipeline<f32>;
pub type Pipeline64 = Pipeline<f64>;

/// Crate version, recorded in batch manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
