//! End-to-end synthesis I = D + F + B in reference and proposed modes.

use crate::color::{decode_image, encode_image};
use crate::config::{CoefficientOverride, DegradationConfig, Mode};
use crate::depth::scale_depth;
use crate::error::{Error, Result};
use crate::field::{generate_grf, modulate_depth};
use crate::num::Real;
use crate::optics::{backscatter, direct_transmission, forward_scatter, ScenePair, TermStack, VariableBlur};
use crate::raster::{Image, Plane};
use crate::spectra::{ChannelCoefficients, SpectralLibrary};

/// Transfer function of the pixel values handed to the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorEncoding {
    #[default]
    Srgb,
    Linear,
}

/// How the accompanying depth map is expressed.
#[derive(Debug, Clone, PartialEq)]
pub enum DepthInput<T> {
    /// Estimator output; scaled to meters by the config's depth range.
    Relative(Plane<T>),
    /// Camera distance in meters, used as-is.
    Metric(Plane<T>),
}

impl<T: Real> DepthInput<T> {
    pub fn plane(&self) -> &Plane<T> {
        match self {
            DepthInput::Relative(p) | DepthInput::Metric(p) => p,
        }
    }
}

/// A clean image and its depth, as loaded from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceScene<T> {
    pub image: Image<T>,
    pub depth: DepthInput<T>,
    pub encoding: ColorEncoding,
}

impl<T: Real> SourceScene<T> {
    pub fn new(image: Image<T>, depth: DepthInput<T>) -> Result<Self> {
        depth.plane().ensure_same_dims(image.dims())?;
        Ok(Self {
            image,
            depth,
            encoding: ColorEncoding::Srgb,
        })
    }

    pub fn linear(image: Image<T>, depth: DepthInput<T>) -> Result<Self> {
        Ok(Self {
            encoding: ColorEncoding::Linear,
            ..Self::new(image, depth)?
        })
    }
}

/// Mean and maximum of one term over all pixels and channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<T> {
    pub mean: T,
    pub max: T,
}

impl<T: Real> Summary<T> {
    fn of(img: &Image<T>) -> Self {
        Self {
            mean: img.mean(),
            max: img.max(),
        }
    }
}

/// Separated terms of one synthesis, with the quantities that produced them.
#[derive(Debug, Clone)]
pub struct TermReport<T> {
    pub terms: TermStack<T>,
    /// D + F + B before clamping.
    pub composite: Image<T>,
    pub transmission: Image<T>,
    /// Metric depth after scaling and field modulation.
    pub depth: Plane<T>,
    pub coefficients: ChannelCoefficients<T>,
    /// Blur constant φ (1/m).
    pub phi: T,
    pub direct: Summary<T>,
    pub forward: Summary<T>,
    pub backscatter: Summary<T>,
}

/// Applies a coefficient override on top of spectrally collapsed values.
pub fn apply_override<T: Real>(
    base: &ChannelCoefficients<T>,
    ov: &CoefficientOverride,
    g: T,
    mu: T,
) -> ChannelCoefficients<T> {
    let beta = ov.beta.map(T::lit);
    let mut scattering = base.scattering;
    for c in 0..3 {
        scattering[c] = match ov.scattering {
            Some(s) => T::lit(s[c]),
            None => scattering[c].min(beta[c]),
        };
    }
    let backlight_reference = ov.backlight.map(|b| b.map(T::lit)).unwrap_or(base.backlight_reference);
    let mut g_c = [T::zero(); 3];
    let mut backlight_proposed = [T::zero(); 3];
    for c in 0..3 {
        g_c[c] = (beta[c] - (T::one() - g) * scattering[c]).max(T::zero());
        backlight_proposed[c] = if g_c[c] > T::zero() {
            (backlight_reference[c] * mu * beta[c] / g_c[c]).min(T::one())
        } else {
            T::zero()
        };
    }
    ChannelCoefficients {
        beta_d: beta,
        beta_b: beta,
        g_c,
        g_b: g_c,
        scattering,
        backlight_reference,
        backlight_proposed,
    }
}

/// Synthesis engine over a fixed spectral library.
#[derive(Debug, Clone)]
pub struct Pipeline<T> {
    library: SpectralLibrary<T>,
}

impl<T: Real> Pipeline<T> {
    pub fn new(library: SpectralLibrary<T>) -> Self {
        Self { library }
    }

    /// Pipeline over the compiled-in tables.
    pub fn embedded() -> Result<Self> {
        Ok(Self::new(SpectralLibrary::embedded()?))
    }

    pub fn library(&self) -> &SpectralLibrary<T> {
        &self.library
    }

    /// Per-channel coefficients for `cfg`, after any override.
    pub fn coefficients(&self, cfg: &DegradationConfig) -> Result<ChannelCoefficients<T>> {
        let p = &cfg.params;
        let (d, g, mu) = (T::lit(p.d), T::lit(p.g), T::lit(p.mu));
        let base = self.library.coefficients(cfg.water, d, g, mu)?;
        Ok(match &p.coefficient_override {
            Some(ov) => apply_override(&base, ov, g, mu),
            None => base,
        })
    }

    /// Metric depth for `scene`: scaled if relative, then modulated by the
    /// random field when the config enables it.
    pub fn prepare_depth(&self, depth: &DepthInput<T>, cfg: &DegradationConfig) -> Result<Plane<T>> {
        let metric = match depth {
            DepthInput::Relative(rel) => scale_depth(rel, &cfg.params.scaling())?,
            DepthInput::Metric(z) => {
                if z.as_slice().iter().any(|v| !v.is_finite() || *v < T::zero()) {
                    return Err(Error::Domain {
                        name: "depth",
                        value: f64::NAN,
                        expected: "finite and >= 0 meters",
                    });
                }
                z.clone()
            }
        };
        match cfg.field_config::<T>() {
            Some(field_cfg) => {
                let field = generate_grf(metric.height(), metric.width(), &field_cfg)?;
                modulate_depth(&metric, &field)
            }
            None => Ok(metric),
        }
    }

    /// Computes D, F and B separately.
    pub fn term_report(&self, scene: &SourceScene<T>, cfg: &DegradationConfig) -> Result<TermReport<T>> {
        cfg.validate()?;
        let radiance = match scene.encoding {
            ColorEncoding::Srgb => decode_image(&scene.image),
            ColorEncoding::Linear => scene.image.clone(),
        };
        let depth = self.prepare_depth(&scene.depth, cfg)?;
        let pair = ScenePair::new(radiance, depth)?;
        let k = self.coefficients(cfg)?;
        let phi = T::lit(cfg.params.phi_factor) * k.mean_scattering();

        let (direct, transmission) = direct_transmission(&pair, &k.beta_d)?;
        let (forward, backscatter_term) = match cfg.mode {
            Mode::Reference => {
                let (w, h) = pair.dims();
                (
                    Image::zeros(w, h),
                    backscatter(pair.depth(), &k.backlight_reference, &k.beta_b)?,
                )
            }
            Mode::Proposed => {
                let blur = VariableBlur::with_pixels_per_unit(T::lit(cfg.params.pixels_per_unit));
                (
                    forward_scatter(&pair, &k.g_c, &k.beta_d, phi, &blur)?,
                    backscatter(pair.depth(), &k.backlight_proposed, &k.g_b)?,
                )
            }
        };
        for (img, name) in [
            (&direct, "direct term"),
            (&forward, "forward term"),
            (&backscatter_term, "backscatter term"),
        ] {
            if !img.all_finite() {
                return Err(Error::NumericalFault(name));
            }
        }
        let terms = TermStack {
            direct,
            forward,
            backscatter: backscatter_term,
        };
        let composite = terms.composite()?;
        Ok(TermReport {
            direct: Summary::of(&terms.direct),
            forward: Summary::of(&terms.forward),
            backscatter: Summary::of(&terms.backscatter),
            composite,
            terms,
            transmission,
            depth: pair.depth().clone(),
            coefficients: k,
            phi,
        })
    }

    /// Degraded image in linear light, clamped to [0, 1].
    pub fn synthesize_linear(&self, scene: &SourceScene<T>, cfg: &DegradationConfig) -> Result<Image<T>> {
        Ok(self.term_report(scene, cfg)?.composite.clamp_unit())
    }

    /// Degraded image in the scene's own encoding, clamped to [0, 1].
    pub fn synthesize(&self, scene: &SourceScene<T>, cfg: &DegradationConfig) -> Result<Image<T>> {
        let linear = self.synthesize_linear(scene, cfg)?;
        Ok(match scene.encoding {
            ColorEncoding::Srgb => encode_image(&linear),
            ColorEncoding::Linear => linear,
        })
    }

    /// `(reference, proposed)` renderings sharing depth scaling and seed.
    pub fn synthesize_pair(&self, scene: &SourceScene<T>, cfg: &DegradationConfig) -> Result<(Image<T>, Image<T>)> {
        Ok((
            self.synthesize(scene, &cfg.with_mode(Mode::Reference))?,
            self.synthesize(scene, &cfg.with_mode(Mode::Proposed))?,
        ))
    }
}
