use crate::error::{Error, Result};
use crate::num::Real;

/// A non-negative real function sampled at strictly ascending wavelengths
/// (nm) and linearly interpolated between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCurve<T> {
    wavelengths: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> SpectralCurve<T> {
    pub fn new(wavelengths: Vec<T>, values: Vec<T>) -> Result<Self> {
        if wavelengths.len() != values.len() {
            return Err(Error::InvalidCurve(format!(
                "{} wavelengths but {} values",
                wavelengths.len(),
                values.len()
            )));
        }
        if wavelengths.len() < 2 {
            return Err(Error::InvalidCurve("at least two samples required".into()));
        }
        if wavelengths.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidCurve("non-finite wavelength".into()));
        }
        if let Some(w) = wavelengths.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::InvalidCurve(format!(
                "wavelengths not strictly ascending at {} -> {}",
                w[0], w[1]
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < T::zero()) {
            return Err(Error::InvalidCurve(format!("value {v} is negative or non-finite")));
        }
        Ok(Self { wavelengths, values })
    }

    /// Constant curve on `grid`.
    pub fn constant(grid: &[T], value: T) -> Result<Self> {
        Self::new(grid.to_vec(), vec![value; grid.len()])
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: &[T], f: impl Fn(T) -> T) -> Result<Self> {
        Self::new(grid.to_vec(), grid.iter().map(|&w| f(w)).collect())
    }

    pub fn wavelengths(&self) -> &[T] {
        &self.wavelengths
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Support `[first, last]` in nm.
    pub fn support(&self) -> (T, T) {
        (self.wavelengths[0], self.wavelengths[self.wavelengths.len() - 1])
    }

    pub fn min_value(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// Linear interpolation at `wavelength`; outside the support is an error.
    pub fn eval(&self, wavelength: T) -> Result<T> {
        let (lo, hi) = self.support();
        if !(wavelength >= lo && wavelength <= hi) {
            return Err(Error::OutOfRange {
                wavelength: wavelength.to_f64_lossy(),
                lo: lo.to_f64_lossy(),
                hi: hi.to_f64_lossy(),
            });
        }
        let upper = self.wavelengths.partition_point(|&w| w < wavelength);
        if upper < self.wavelengths.len() && self.wavelengths[upper] == wavelength {
            return Ok(self.values[upper]);
        }
        let (w0, w1) = (self.wavelengths[upper - 1], self.wavelengths[upper]);
        let (v0, v1) = (self.values[upper - 1], self.values[upper]);
        let t = (wavelength - w0) / (w1 - w0);
        Ok(v0 + (v1 - v0) * t)
    }

    /// Resamples onto `grid` by linear interpolation.
    pub fn resample(&self, grid: &[T]) -> Result<Self> {
        let values = grid.iter().map(|&w| self.eval(w)).collect::<Result<Vec<_>>>()?;
        Self::new(grid.to_vec(), values)
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.wavelengths == other.wavelengths
    }

    pub(crate) fn ensure_same_grid(&self, other: &Self) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Pointwise combination on a shared grid.
    pub fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.ensure_same_grid(other)?;
        Self::new(
            self.wavelengths.clone(),
            self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        )
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Result<Self> {
        Self::new(self.wavelengths.clone(), self.values.iter().map(|&v| f(v)).collect())
    }
}

/// Resamples `curve` onto `grid`.
pub fn resample<T: Real>(curve: &SpectralCurve<T>, grid: &[T]) -> Result<SpectralCurve<T>> {
    curve.resample(grid)
}

/// `start, start + step, ..., end` (inclusive when `end` lands on the lattice).
pub fn uniform_grid<T: Real>(start: T, end: T, step: T) -> Vec<T> {
    assert!(step > T::zero(), "grid step must be positive");
    let n = ((end - start) / step + T::lit(1e-9)).floor().to_usize().unwrap_or(0);
    (0..=n).map(|i| start + step * T::lit(i as f64)).collect()
}
