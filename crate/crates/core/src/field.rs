//! Scale-free Gaussian random fields for medium inhomogeneity.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{min_max, to_range, Real};
use crate::raster::Plane;

/// Power-law random field settings. Power spectral density ∝ |k|^(−exponent).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig<T> {
    pub exponent: T,
    pub lo: T,
    pub hi: T,
    pub seed: u64,
}

impl<T: Real> Default for FieldConfig<T> {
    fn default() -> Self {
        Self {
            exponent: T::lit(3.0),
            lo: T::lit(0.7),
            hi: T::lit(1.3),
            seed: 0,
        }
    }
}

impl<T: Real> FieldConfig<T> {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.exponent > T::zero()) || !self.exponent.is_finite() {
            return Err(Error::Domain {
                name: "field.exponent",
                value: self.exponent.to_f64_lossy(),
                expected: "finite and > 0",
            });
        }
        let (lo, hi) = (self.lo, self.hi);
        if !(lo.is_finite() && hi.is_finite() && lo > T::zero() && lo <= T::one() && hi >= T::one() && lo < hi) {
            return Err(Error::Domain {
                name: "field range",
                value: lo.to_f64_lossy(),
                expected: "0 < lo <= 1 <= hi, lo < hi",
            });
        }
        Ok(())
    }
}

/// Per-image field seed derived from a dataset seed and the image index.
pub fn field_seed(dataset_seed: u64, image_index: u64) -> u64 {
    splitmix64(dataset_seed ^ splitmix64(image_index.wrapping_add(0x5EED)))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Signed integer frequency of FFT bin `i` in a length-`n` transform,
/// in cycles per sample.
fn frequency<T: Real>(i: usize, n: usize) -> T {
    let k = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
    T::lit(k / n as f64)
}

/// Spectral synthesis: complex white noise shaped by |k|^(−α/2) (DC set to
/// zero), inverse 2-D FFT, real part, then min-max rescaled onto
/// `[cfg.lo, cfg.hi]`.
pub fn generate_grf<T: Real>(height: usize, width: usize, cfg: &FieldConfig<T>) -> Result<Plane<T>> {
    if height < 2 || width < 2 {
        return Err(Error::Dimension(format!(
            "random field needs at least 2x2 pixels, got {width}x{height}"
        )));
    }
    cfg.validate()?;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let half_exponent = cfg.exponent * T::lit(0.5);
    let mut spectrum: Vec<Complex<T>> = Vec::with_capacity(width * height);
    for y in 0..height {
        let fy = frequency::<T>(y, height);
        for x in 0..width {
            let fx = frequency::<T>(x, width);
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            let k = (fx * fx + fy * fy).sqrt();
            let amp = if k > T::zero() {
                k.powf(-half_exponent)
            } else {
                T::zero()
            };
            spectrum.push(Complex::new(T::lit(re) * amp, T::lit(im) * amp));
        }
    }

    let mut planner = FftPlanner::<T>::new();
    let row_fft = planner.plan_fft_inverse(width);
    row_fft.process(&mut spectrum);

    let col_fft = planner.plan_fft_inverse(height);
    let mut column = vec![Complex::new(T::zero(), T::zero()); height];
    for x in 0..width {
        for (y, slot) in column.iter_mut().enumerate() {
            *slot = spectrum[y * width + x];
        }
        col_fft.process(&mut column);
        for (y, v) in column.iter().enumerate() {
            spectrum[y * width + x] = *v;
        }
    }

    let real: Vec<T> = spectrum.iter().map(|c| c.re).collect();
    let (min, max) = min_max(&real).ok_or(Error::NumericalFault("random field"))?;
    if !(max > min) || !min.is_finite() || !max.is_finite() {
        return Err(Error::NumericalFault("random field"));
    }
    let span = max - min;
    let scaled = real
        .into_iter()
        .map(|v| {
            let u = if v == max { T::one() } else { (v - min) / span };
            to_range(u, cfg.lo, cfg.hi)
        })
        .collect();
    Plane::new(width, height, scaled)
}

/// Pointwise product of a depth map with a modulation field.
pub fn modulate_depth<T: Real>(depth: &Plane<T>, field: &Plane<T>) -> Result<Plane<T>> {
    depth.zip_map(field, |z, f| z * f)
}
