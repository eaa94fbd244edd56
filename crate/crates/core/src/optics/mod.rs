//! Image-formation terms: direct transmission, forward scattering and
//! backscatter, evaluated per channel over a radiance/depth pair.

mod blur;

pub use blur::{gaussian_kernel, separable_blur, variable_blur, VariableBlur};

use crate::error::{Error, Result};
use crate::num::Real;
use crate::raster::{Image, Plane};

/// Linear-light radiance J(x) with its metric camera distance z(x).
#[derive(Debug, Clone, PartialEq)]
pub struct ScenePair<T> {
    radiance: Image<T>,
    depth: Plane<T>,
}

impl<T: Real> ScenePair<T> {
    pub fn new(radiance: Image<T>, depth: Plane<T>) -> Result<Self> {
        depth.ensure_same_dims(radiance.dims())?;
        if depth.as_slice().iter().any(|z| !z.is_finite() || *z < T::zero()) {
            return Err(Error::Domain {
                name: "depth",
                value: f64::NAN,
                expected: "finite and >= 0 everywhere",
            });
        }
        if radiance
            .samples()
            .any(|v| !v.is_finite() || v < T::zero() || v > T::one())
        {
            return Err(Error::Domain {
                name: "radiance",
                value: f64::NAN,
                expected: "linear values in [0, 1]",
            });
        }
        Ok(Self { radiance, depth })
    }

    pub fn radiance(&self) -> &Image<T> {
        &self.radiance
    }

    pub fn depth(&self) -> &Plane<T> {
        &self.depth
    }

    pub fn dims(&self) -> (usize, usize) {
        self.radiance.dims()
    }
}

/// The three additive terms of the formation model.
#[derive(Debug, Clone, PartialEq)]
pub struct TermStack<T> {
    pub direct: Image<T>,
    pub forward: Image<T>,
    pub backscatter: Image<T>,
}

impl<T: Real> TermStack<T> {
    /// D + F + B, before any clamping.
    pub fn composite(&self) -> Result<Image<T>> {
        self.direct
            .zip_map(&self.forward, |d, f| d + f)?
            .zip_map(&self.backscatter, |df, b| df + b)
    }
}

fn check_coefficients<T: Real>(name: &'static str, values: &[T; 3], strictly_positive: bool) -> Result<()> {
    for &v in values {
        let ok = v.is_finite()
            && if strictly_positive {
                v > T::zero()
            } else {
                v >= T::zero()
            };
        if !ok {
            return Err(Error::Domain {
                name,
                value: v.to_f64_lossy(),
                expected: if strictly_positive {
                    "finite and > 0"
                } else {
                    "finite and >= 0"
                },
            });
        }
    }
    Ok(())
}

/// Per-channel exp(−k_c·z(x)).
pub fn transmission<T: Real>(depth: &Plane<T>, atten: &[T; 3]) -> Image<T> {
    let (w, h) = depth.dims();
    Image::zeros(w, h).map_channels(|c, _| depth.map(|z| (-atten[c] * z).exp()))
}

/// D(x) = J(x)·exp(−β_c^D·z(x)). Returns the direct term and the
/// transmission map t(x).
pub fn direct_transmission<T: Real>(scene: &ScenePair<T>, beta_d: &[T; 3]) -> Result<(Image<T>, Image<T>)> {
    check_coefficients("beta_D", beta_d, false)?;
    let t = transmission(scene.depth(), beta_d);
    let direct = scene.radiance().zip_map(&t, |j, t| j * t)?;
    Ok((direct, t))
}

/// B(x) = B∞_c·(1 − exp(−k_c·z(x))), with k = β^B (reference) or G^B
/// (proposed).
pub fn backscatter<T: Real>(depth: &Plane<T>, backlight: &[T; 3], atten: &[T; 3]) -> Result<Image<T>> {
    check_coefficients("backscatter attenuation", atten, true)?;
    for &b in backlight {
        if !(b >= T::zero() && b <= T::one()) {
            return Err(Error::Domain {
                name: "backlight",
                value: b.to_f64_lossy(),
                expected: "in [0, 1]",
            });
        }
    }
    let (w, h) = depth.dims();
    Ok(Image::zeros(w, h).map_channels(|c, _| depth.map(|z| backlight[c] * (T::one() - (-atten[c] * z).exp()))))
}

/// w(x) = exp(−G_c·z(x)) − exp(−β_c^D·z(x)), the share of scene light that
/// reaches the camera only after small-angle scattering.
pub fn forward_weight<T: Real>(depth: &Plane<T>, g_c: &[T; 3], beta_d: &[T; 3]) -> Result<Image<T>> {
    check_coefficients("G", g_c, false)?;
    check_coefficients("beta_D", beta_d, false)?;
    for c in 0..3 {
        if g_c[c] > beta_d[c] {
            return Err(Error::Parametrization {
                channel: c,
                g: g_c[c].to_f64_lossy(),
                beta: beta_d[c].to_f64_lossy(),
            });
        }
    }
    let (w, h) = depth.dims();
    Ok(Image::zeros(w, h)
        .map_channels(|c, _| depth.map(|z| ((-g_c[c] * z).exp() - (-beta_d[c] * z).exp()).max(T::zero()))))
}

/// F(x) = blur(w(x)·J(x)) with σ(x) = φ·z(x). The latent radiance J, not
/// the attenuated direct term, feeds the forward lobe.
pub fn forward_scatter<T: Real>(
    scene: &ScenePair<T>,
    g_c: &[T; 3],
    beta_d: &[T; 3],
    phi: T,
    blur: &VariableBlur<T>,
) -> Result<Image<T>> {
    let weight = forward_weight(scene.depth(), g_c, beta_d)?;
    let weighted = weight.zip_map(scene.radiance(), |w, j| w * j)?;
    blur.apply(&weighted, scene.depth(), phi)
}
