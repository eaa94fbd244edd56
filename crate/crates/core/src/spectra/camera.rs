use super::curve::SpectralCurve;
use crate::error::{Error, Result};
use crate::num::Real;

/// Per-channel spectral sensitivity S_c(λ) of a camera, R, G, B order.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraResponse<T> {
    channels: [SpectralCurve<T>; 3],
}

impl<T: Real> CameraResponse<T> {
    pub fn new(channels: [SpectralCurve<T>; 3]) -> Result<Self> {
        channels[0].ensure_same_grid(&channels[1])?;
        channels[0].ensure_same_grid(&channels[2])?;
        for (i, ch) in channels.iter().enumerate() {
            if ch.max_value() <= T::zero() {
                return Err(Error::DegenerateResponse { channel: i });
            }
        }
        Ok(Self { channels })
    }

    pub fn channel(&self, c: usize) -> &SpectralCurve<T> {
        &self.channels[c]
    }

    pub fn channels(&self) -> &[SpectralCurve<T>; 3] {
        &self.channels
    }

    pub fn grid(&self) -> &[T] {
        self.channels[0].wavelengths()
    }

    pub fn resample(&self, grid: &[T]) -> Result<Self> {
        Self::new([
            self.channels[0].resample(grid)?,
            self.channels[1].resample(grid)?,
            self.channels[2].resample(grid)?,
        ])
    }
}
