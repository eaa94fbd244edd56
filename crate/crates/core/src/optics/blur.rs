//! Depth-variable Gaussian blur.
//!
//! σ(x) = φ · z(x) · pixels_per_unit. The full image is blurred once per σ
//! level with a separable, edge-replicating Gaussian, and each output pixel
//! linearly blends the two levels bracketing its own σ. Levels are spaced
//! geometrically (fixed relative step) above `identity_below`; pixels with a
//! smaller σ blend towards an unblurred level at σ = 0.

use crate::error::{Error, Result};
use crate::num::{min_max, Real};
use crate::raster::{Image, Plane};

/// Normalized 1-D Gaussian taps with radius `ceil(3σ)`; σ ≤ 0 gives `[1]`.
pub fn gaussian_kernel<T: Real>(sigma: T) -> Vec<T> {
    if !(sigma > T::zero()) {
        return vec![T::one()];
    }
    let radius = (sigma * T::lit(3.0)).ceil().to_usize().unwrap_or(1).max(1);
    let denom = T::lit(2.0) * sigma * sigma;
    let mut taps: Vec<T> = (0..=2 * radius)
        .map(|i| {
            let r = T::lit(i as f64 - radius as f64);
            (-(r * r) / denom).exp()
        })
        .collect();
    let sum: T = taps.iter().copied().sum();
    taps.iter_mut().for_each(|t| *t = *t / sum);
    taps
}

/// Level-spacing controls for [`VariableBlur`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariableBlur<T> {
    /// Meters-to-pixels factor applied to φ·z.
    pub pixels_per_unit: T,
    /// Ratio between consecutive σ levels minus one.
    pub relative_step: T,
    /// σ (px) under which pixels blend against the identity level.
    pub identity_below: T,
}

impl<T: Real> Default for VariableBlur<T> {
    fn default() -> Self {
        Self {
            pixels_per_unit: T::one(),
            relative_step: T::lit(0.05),
            identity_below: T::lit(0.2),
        }
    }
}

impl<T: Real> VariableBlur<T> {
    pub fn with_pixels_per_unit(pixels_per_unit: T) -> Self {
        Self {
            pixels_per_unit,
            ..Self::default()
        }
    }

    /// Blurs `image` with σ(x) = φ·z(x)·pixels_per_unit.
    pub fn apply(&self, image: &Image<T>, depth: &Plane<T>, phi: T) -> Result<Image<T>> {
        if !(phi >= T::zero()) || !phi.is_finite() {
            return Err(Error::Domain {
                name: "phi",
                value: phi.to_f64_lossy(),
                expected: "finite and >= 0",
            });
        }
        depth.ensure_same_dims(image.dims())?;
        if phi == T::zero() {
            return Ok(image.clone());
        }
        let scale = phi * self.pixels_per_unit;
        let sigma = depth.map(|z| (z * scale).max(T::zero()));
        self.apply_sigma(image, &sigma)
    }

    /// Blurs `image` with an explicit per-pixel σ map (pixels).
    pub fn apply_sigma(&self, image: &Image<T>, sigma: &Plane<T>) -> Result<Image<T>> {
        sigma.ensure_same_dims(image.dims())?;
        if !sigma.all_finite() {
            return Err(Error::NumericalFault("blur sigma map"));
        }
        let Some((lo, hi)) = min_max(sigma.as_slice()) else {
            return Ok(image.clone());
        };
        if hi <= T::zero() {
            return Ok(image.clone());
        }
        let levels = self.levels(lo.max(T::zero()), hi);
        if levels.len() == 1 {
            let kernel = gaussian_kernel(levels[0]);
            return Ok(image.map_channels(|_, p| separable_blur(p, &kernel)));
        }

        let (lower, frac): (Vec<usize>, Vec<T>) = sigma.as_slice().iter().map(|&s| bracket(&levels, s)).unzip();

        let (w, h) = image.dims();
        let mut out = Image::zeros(w, h);
        for (j, &level) in levels.iter().enumerate() {
            // (pixel index, blend weight) for every pixel drawing on level j.
            let users: Vec<(usize, T)> = lower
                .iter()
                .zip(&frac)
                .enumerate()
                .filter_map(|(i, (&k, &f))| {
                    let weight = if k == j {
                        T::one() - f
                    } else if k + 1 == j {
                        f
                    } else {
                        return None;
                    };
                    (weight > T::zero()).then_some((i, weight))
                })
                .collect();
            if users.is_empty() {
                continue;
            }
            let kernel = gaussian_kernel(level);
            for c in 0..3 {
                let src = image.channel(c);
                let values = gather_blurred(src, &kernel, &users);
                let dst = out.channel_mut(c).as_mut_slice();
                for (&(i, weight), v) in users.iter().zip(values) {
                    dst[i] = dst[i] + weight * v;
                }
            }
        }
        Ok(out)
    }

    /// σ levels covering `[lo, hi]`, ascending, last level exactly `hi`.
    pub fn levels(&self, lo: T, hi: T) -> Vec<T> {
        let mut levels = Vec::new();
        let mut start = lo;
        if lo < self.identity_below {
            levels.push(T::zero());
            start = self.identity_below.min(hi);
        }
        if start > T::zero() {
            if hi > start {
                let ratio = hi / start;
                let n = (ratio.ln() / (T::one() + self.relative_step).ln())
                    .ceil()
                    .to_usize()
                    .unwrap_or(1)
                    .max(1);
                let inv_n = T::one() / T::lit(n as f64);
                for k in 0..n {
                    levels.push(start * ratio.powf(T::lit(k as f64) * inv_n));
                }
            }
            levels.push(hi);
        }
        levels.dedup();
        levels
    }
}

/// Convenience wrapper using default level spacing and 1 px per unit.
pub fn variable_blur<T: Real>(image: &Image<T>, depth: &Plane<T>, phi: T) -> Result<Image<T>> {
    VariableBlur::default().apply(image, depth, phi)
}

fn bracket<T: Real>(levels: &[T], s: T) -> (usize, T) {
    let last = levels.len() - 2;
    let k = levels.partition_point(|&l| l <= s).saturating_sub(1).min(last);
    let span = levels[k + 1] - levels[k];
    let f = ((s - levels[k]) / span).max(T::zero()).min(T::one());
    (k, f)
}

/// Full separable blur with replicated edges.
pub fn separable_blur<T: Real>(src: &Plane<T>, kernel: &[T]) -> Plane<T> {
    if kernel.len() == 1 {
        return src.clone();
    }
    let (w, h) = src.dims();
    let horizontal = horizontal_pass(src, kernel, 0, h);
    let radius = kernel.len() / 2;
    let mut out = Plane::zeros(w, h);
    let mut column = vec![T::zero(); h + 2 * radius];
    for x in 0..w {
        for (i, slot) in column.iter_mut().enumerate() {
            let y = i.saturating_sub(radius).min(h - 1);
            *slot = horizontal.get(x, y);
        }
        for y in 0..h {
            let v = dot(&column[y..y + kernel.len()], kernel);
            out.set(x, y, v);
        }
    }
    out
}

/// Blurred values of `src` at the listed pixels only. The horizontal pass is
/// limited to the rows the vertical taps reach.
fn gather_blurred<T: Real>(src: &Plane<T>, kernel: &[T], users: &[(usize, T)]) -> Vec<T> {
    let (w, h) = src.dims();
    if kernel.len() == 1 {
        return users.iter().map(|&(i, _)| src.as_slice()[i]).collect();
    }
    let radius = kernel.len() / 2;
    let (ymin, ymax) = users
        .iter()
        .fold((usize::MAX, 0), |(lo, hi), &(i, _)| (lo.min(i / w), hi.max(i / w)));
    let row0 = ymin.saturating_sub(radius);
    let row1 = (ymax + radius + 1).min(h);
    let horizontal = horizontal_pass(src, kernel, row0, row1);
    users
        .iter()
        .map(|&(i, _)| {
            let (x, y) = (i % w, i / w);
            kernel
                .iter()
                .enumerate()
                .map(|(k, &t)| {
                    let yy = (y + k).saturating_sub(radius).min(h - 1);
                    t * horizontal.get(x, yy - row0)
                })
                .sum()
        })
        .collect()
}

/// Horizontal convolution of rows `row0..row1`, returned as its own plane.
fn horizontal_pass<T: Real>(src: &Plane<T>, kernel: &[T], row0: usize, row1: usize) -> Plane<T> {
    let w = src.width();
    let radius = kernel.len() / 2;
    let mut out = Plane::zeros(w, row1 - row0);
    let mut padded = vec![T::zero(); w + 2 * radius];
    for y in row0..row1 {
        let row = src.row(y);
        for (i, slot) in padded.iter_mut().enumerate() {
            *slot = row[i.saturating_sub(radius).min(w - 1)];
        }
        let dst = &mut out.as_mut_slice()[(y - row0) * w..(y - row0 + 1) * w];
        for (x, d) in dst.iter_mut().enumerate() {
            *d = dot(&padded[x..x + kernel.len()], kernel);
        }
    }
    out
}

#[inline]
fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}
