//! Planar raster containers: single-channel [`Plane`] and three-channel [`Image`].

use crate::error::{Error, Result};
use crate::num::Real;

/// Row-major `height x width` grid of scalars.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Real> Plane<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::Dimension(format!(
                "{} samples for a {width}x{height} plane",
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, value: T) -> Self {
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, T::zero())
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Self { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: T) {
        self.data[y * self.width + x] = value;
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, y: usize) -> &[T] {
        &self.data[y * self.width..(y + 1) * self.width]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two planes of equal size.
    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.ensure_same_dims(other.dims())?;
        Ok(Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn mean(&self) -> T {
        if self.data.is_empty() {
            return T::zero();
        }
        self.data.iter().copied().sum::<T>() / T::lit(self.data.len() as f64)
    }

    pub fn min_max(&self) -> Option<(T, T)> {
        crate::num::min_max(&self.data)
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub(crate) fn ensure_same_dims(&self, dims: (usize, usize)) -> Result<()> {
        if self.dims() != dims {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.width, self.height, dims.0, dims.1
            )));
        }
        Ok(())
    }
}

/// Three-channel (R, G, B) image stored as one [`Plane`] per channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Image<T> {
    channels: [Plane<T>; 3],
}

impl<T: Real> Image<T> {
    pub fn from_planes(channels: [Plane<T>; 3]) -> Result<Self> {
        let dims = channels[0].dims();
        for c in &channels[1..] {
            c.ensure_same_dims(dims)?;
        }
        Ok(Self { channels })
    }

    pub fn filled(width: usize, height: usize, rgb: [T; 3]) -> Self {
        Self {
            channels: rgb.map(|v| Plane::filled(width, height, v)),
        }
    }

    pub fn zeros(width: usize, height: usize) -> Self {
        Self::filled(width, height, [T::zero(); 3])
    }

    /// Calls `f` once per pixel in row-major order.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [T; 3]) -> Self {
        let mut rgb = Vec::with_capacity(width * height * 3);
        for y in 0..height {
            for x in 0..width {
                rgb.extend(f(x, y));
            }
        }
        Self::from_interleaved(width, height, &rgb).expect("sized from dimensions")
    }

    /// Builds an image from interleaved RGB samples.
    pub fn from_interleaved(width: usize, height: usize, rgb: &[T]) -> Result<Self> {
        if rgb.len() != width * height * 3 {
            return Err(Error::Dimension(format!(
                "{} interleaved samples for a {width}x{height}x3 image",
                rgb.len()
            )));
        }
        let channels = [0, 1, 2].map(|c| Plane {
            width,
            height,
            data: rgb.iter().skip(c).step_by(3).copied().collect(),
        });
        Ok(Self { channels })
    }

    pub fn to_interleaved(&self) -> Vec<T> {
        let n = self.channels[0].len();
        let mut out = Vec::with_capacity(n * 3);
        for i in 0..n {
            for c in &self.channels {
                out.push(c.data[i]);
            }
        }
        out
    }

    pub fn width(&self) -> usize {
        self.channels[0].width
    }

    pub fn height(&self) -> usize {
        self.channels[0].height
    }

    pub fn dims(&self) -> (usize, usize) {
        self.channels[0].dims()
    }

    pub fn channel(&self, c: usize) -> &Plane<T> {
        &self.channels[c]
    }

    pub fn channel_mut(&mut self, c: usize) -> &mut Plane<T> {
        &mut self.channels[c]
    }

    pub fn channels(&self) -> &[Plane<T>; 3] {
        &self.channels
    }

    pub fn into_channels(self) -> [Plane<T>; 3] {
        self.channels
    }

    pub fn pixel(&self, x: usize, y: usize) -> [T; 3] {
        [0, 1, 2].map(|c| self.channels[c].get(x, y))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            channels: [0, 1, 2].map(|c| self.channels[c].map(&f)),
        }
    }

    /// Applies a per-channel closure producing a new plane.
    pub fn map_channels(&self, mut f: impl FnMut(usize, &Plane<T>) -> Plane<T>) -> Self {
        let channels = [0, 1, 2].map(|c| f(c, &self.channels[c]));
        Self { channels }
    }

    pub fn try_map_channels(&self, mut f: impl FnMut(usize, &Plane<T>) -> Result<Plane<T>>) -> Result<Self> {
        let r = f(0, &self.channels[0])?;
        let g = f(1, &self.channels[1])?;
        let b = f(2, &self.channels[2])?;
        Self::from_planes([r, g, b])
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.try_map_channels(|c, p| p.zip_map(&other.channels[c], &f))
    }

    pub fn mean(&self) -> T {
        self.channels.iter().map(Plane::mean).sum::<T>() / T::lit(3.0)
    }

    pub fn max(&self) -> T {
        self.channels
            .iter()
            .filter_map(Plane::min_max)
            .map(|(_, hi)| hi)
            .fold(T::neg_infinity(), T::max)
    }

    pub fn min_max(&self) -> Option<(T, T)> {
        self.channels
            .iter()
            .filter_map(Plane::min_max)
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    pub fn all_finite(&self) -> bool {
        self.channels.iter().all(Plane::all_finite)
    }

    pub fn samples(&self) -> impl Iterator<Item = T> + '_ {
        self.channels.iter().flat_map(|c| c.data.iter().copied())
    }

    pub fn clamp_unit(&self) -> Self {
        self.map(|v| v.max(T::zero()).min(T::one()))
    }
}
