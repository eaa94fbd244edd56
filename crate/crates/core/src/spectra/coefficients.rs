//! Collapsing wavelength-resolved optics into per-channel scalars.

use super::camera::CameraResponse;
use super::curve::SpectralCurve;
use super::water::WaterType;
use crate::error::{Error, Result};
use crate::num::{trapezoid, Real};

/// Per-channel effective coefficients (R, G, B order).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelCoefficients<T> {
    /// β_c^D, attenuation of the direct signal (1/m).
    pub beta_d: [T; 3],
    /// β_c^B, attenuation used by the reference backscatter term (1/m).
    pub beta_b: [T; 3],
    /// G_c, effective attenuation of direct plus forward-scattered light (1/m).
    pub g_c: [T; 3],
    /// G_c^B, attenuation used by the proposed backscatter term (1/m).
    pub g_b: [T; 3],
    /// Collapsed scattering coefficient b_c (1/m).
    pub scattering: [T; 3],
    /// Veiling light at infinity, b·E/β.
    pub backlight_reference: [T; 3],
    /// Veiling light at infinity, μ·b·E/G, clamped to 1.
    pub backlight_proposed: [T; 3],
}

impl<T: Real> ChannelCoefficients<T> {
    /// Mean collapsed scattering across channels.
    pub fn mean_scattering(&self) -> T {
        (self.scattering[0] + self.scattering[1] + self.scattering[2]) / T::lit(3.0)
    }
}

/// Ambient light at vertical depth `d`: E(d,λ) = E(0,λ)·exp(−K_d(λ)·d).
pub fn ambient_light<T: Real>(surface: &SpectralCurve<T>, kd: &SpectralCurve<T>, d: T) -> Result<SpectralCurve<T>> {
    if !(d >= T::zero()) || !d.is_finite() {
        return Err(Error::Domain {
            name: "d",
            value: d.to_f64_lossy(),
            expected: "finite and >= 0",
        });
    }
    surface.zip_with(kd, |e0, k| e0 * (-k * d).exp())
}

/// Response- and weight-weighted spectral mean per channel:
/// ∫ S_c·w·f dλ / ∫ S_c·w dλ, trapezoidal on the shared grid.
pub fn channel_coefficient<T: Real>(
    curve: &SpectralCurve<T>,
    response: &CameraResponse<T>,
    weight: &SpectralCurve<T>,
) -> Result<[T; 3]> {
    curve.ensure_same_grid(weight)?;
    curve.ensure_same_grid(response.channel(0))?;
    let grid = curve.wavelengths();
    let mut out = [T::zero(); 3];
    for (c, slot) in out.iter_mut().enumerate() {
        let sw: Vec<T> = response
            .channel(c)
            .values()
            .iter()
            .zip(weight.values())
            .map(|(&s, &w)| s * w)
            .collect();
        let swf: Vec<T> = sw.iter().zip(curve.values()).map(|(&sw, &f)| sw * f).collect();
        let norm = trapezoid(grid, &sw);
        if !(norm > T::zero()) {
            return Err(Error::DegenerateResponse { channel: c });
        }
        *slot = trapezoid(grid, &swf) / norm;
    }
    Ok(out)
}

/// ∫ S_c·spectrand dλ / ∫ S_c·E0 dλ, so that the surface illuminant itself
/// maps to 1 in every channel.
fn normalized_channel_radiance<T: Real>(
    spectrand: &SpectralCurve<T>,
    response: &CameraResponse<T>,
    surface: &SpectralCurve<T>,
) -> Result<[T; 3]> {
    let grid = spectrand.wavelengths();
    let mut out = [T::zero(); 3];
    for (c, slot) in out.iter_mut().enumerate() {
        let s = response.channel(c).values();
        let num: Vec<T> = s.iter().zip(spectrand.values()).map(|(&s, &v)| s * v).collect();
        let den: Vec<T> = s.iter().zip(surface.values()).map(|(&s, &e)| s * e).collect();
        let norm = trapezoid(grid, &den);
        if !(norm > T::zero()) {
            return Err(Error::DegenerateResponse { channel: c });
        }
        *slot = trapezoid(grid, &num) / norm;
    }
    Ok(out)
}

fn check_fraction<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: v.to_f64_lossy(),
            expected: "in (0, 1]",
        })
    }
}

/// Builds every per-channel coefficient for `water` seen by `response` at
/// vertical depth `d` under surface illuminant `surface`.
///
/// All curves must already share one wavelength grid.
pub fn effective_coefficients<T: Real>(
    water: &WaterType<T>,
    response: &CameraResponse<T>,
    surface: &SpectralCurve<T>,
    d: T,
    g: T,
    mu: T,
) -> Result<ChannelCoefficients<T>> {
    check_fraction("g", g)?;
    check_fraction("mu", mu)?;
    let ambient = ambient_light(surface, water.diffuse_downwelling(), d)?;

    let beta = water.beam_attenuation();
    let signal = water.signal_attenuation(g);
    let scattering = water.scattering();

    let beta_d = channel_coefficient(&beta, response, &ambient)?;
    let g_c = channel_coefficient(&signal, response, &ambient)?;
    let b_c = channel_coefficient(scattering, response, &ambient)?;

    // b·E/β and μ·b·E/G; a wavelength with no medium contributes no veil.
    let ratio = |num: T, den: T| if den > T::zero() { num / den } else { T::zero() };
    let scattered = scattering.zip_with(&ambient, |b, e| b * e)?;
    let veil_reference = scattered.zip_with(&beta, ratio)?;
    let veil_proposed = scattered.map(|v| mu * v)?.zip_with(&signal, ratio)?;

    let backlight_reference = normalized_channel_radiance(&veil_reference, response, surface)?;
    let backlight_proposed = normalized_channel_radiance(&veil_proposed, response, surface)?.map(|v| v.min(T::one()));

    Ok(ChannelCoefficients {
        beta_d,
        beta_b: beta_d,
        g_c,
        g_b: g_c,
        scattering: b_c,
        backlight_reference,
        backlight_proposed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::water::JerlovType;

    fn grid() -> Vec<f64> {
        (0..=30).map(|i| 400.0 + 10.0 * i as f64).collect()
    }

    fn flat(v: f64) -> SpectralCurve<f64> {
        SpectralCurve::constant(&grid(), v).unwrap()
    }

    fn camera() -> CameraResponse<f64> {
        let g = grid();
        let lobe = |c: f64, w: f64| SpectralCurve::from_fn(&g, |l| (-((l - c) / w).powi(2)).exp()).unwrap();
        CameraResponse::new([lobe(600.0, 30.0), lobe(530.0, 35.0), lobe(460.0, 30.0)]).unwrap()
    }

    fn water() -> WaterType<f64> {
        let g = grid();
        WaterType::new(
            JerlovType::C5,
            SpectralCurve::from_fn(&g, |l| 0.05 + 0.001 * (l - 400.0)).unwrap(),
            SpectralCurve::from_fn(&g, |l| 2.0 * 550.0 / l).unwrap(),
            SpectralCurve::from_fn(&g, |l| 0.1 + 0.0008 * (l - 400.0)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ambient_zero_depth_is_identity() {
        let e0 = SpectralCurve::from_fn(&grid(), |l| l / 700.0).unwrap();
        let kd = flat(0.3);
        assert_eq!(ambient_light(&e0, &kd, 0.0).unwrap(), e0);
    }

    #[test]
    fn ambient_transparent_medium() {
        let e0 = SpectralCurve::from_fn(&grid(), |l| l / 700.0).unwrap();
        assert_eq!(ambient_light(&e0, &flat(0.0), 12.0).unwrap(), e0);
    }

    #[test]
    fn ambient_scalar_value() {
        let g = vec![540.0, 550.0, 560.0];
        let e0 = SpectralCurve::constant(&g, 1.0).unwrap();
        let kd = SpectralCurve::new(g.clone(), vec![0.06, 0.07, 0.08]).unwrap();
        let e = ambient_light(&e0, &kd, 1.0).unwrap();
        assert!((e.eval(550.0).unwrap() - (-0.07f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn ambient_negative_depth_rejected() {
        assert!(matches!(
            ambient_light(&flat(1.0), &flat(0.1), -1.0),
            Err(Error::Domain { name: "d", .. })
        ));
    }

    #[test]
    fn constant_curve_collapses_to_constant() {
        let w = SpectralCurve::from_fn(&grid(), |l| 1.0 + l / 1000.0).unwrap();
        let k = channel_coefficient(&flat(0.42), &camera(), &w).unwrap();
        for v in k {
            assert!((v - 0.42).abs() < 1e-15);
        }
    }

    #[test]
    fn spike_response_picks_the_sample() {
        let g = grid();
        let spike = |at: f64| SpectralCurve::from_fn(&g, |l| if l == at { 1.0 } else { 0.0 }).unwrap();
        let resp = CameraResponse::new([spike(620.0), spike(530.0), spike(450.0)]).unwrap();
        let curve = SpectralCurve::from_fn(&g, |l| (l / 100.0).sin() + 2.0).unwrap();
        let k = channel_coefficient(&curve, &resp, &flat(1.0)).unwrap();
        for (c, at) in [620.0, 530.0, 450.0].into_iter().enumerate() {
            assert!((k[c] - curve.eval(at).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn zero_weight_is_degenerate() {
        let err = channel_coefficient(&flat(1.0), &camera(), &flat(0.0)).unwrap_err();
        assert!(matches!(err, Error::DegenerateResponse { channel: 0 }));
    }

    #[test]
    fn mismatched_grid_rejected() {
        let other = SpectralCurve::constant(&[400.0, 700.0], 1.0).unwrap();
        assert!(matches!(
            channel_coefficient(&other, &camera(), &flat(1.0)),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn g_one_makes_signal_attenuation_beta() {
        let k = effective_coefficients(&water(), &camera(), &flat(1.0), 1.0, 1.0, 0.3).unwrap();
        for c in 0..3 {
            assert!((k.g_c[c] - k.beta_d[c]).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_mu_and_g_reproduce_reference_backlight() {
        let k = effective_coefficients(&water(), &camera(), &flat(1.0), 2.0, 1.0, 1.0).unwrap();
        assert_eq!(k.backlight_proposed, k.backlight_reference);
    }

    #[test]
    fn coefficients_respect_ordering_invariants() {
        let k = effective_coefficients(&water(), &camera(), &flat(1.0), 1.0, 0.2, 0.3).unwrap();
        for c in 0..3 {
            assert!(k.g_c[c] <= k.beta_d[c]);
            assert!(k.beta_d[c] > 0.0);
            assert!((0.0..=1.0).contains(&k.backlight_reference[c]));
            assert!((0.0..=1.0).contains(&k.backlight_proposed[c]));
        }
        assert_eq!(k.beta_b, k.beta_d);
        assert_eq!(k.g_b, k.g_c);
    }

    #[test]
    fn fraction_parameters_are_validated() {
        for (g, mu) in [(0.0, 0.3), (1.2, 0.3), (0.2, 0.0), (0.2, 1.5), (f64::NAN, 0.3)] {
            assert!(effective_coefficients(&water(), &camera(), &flat(1.0), 1.0, g, mu).is_err());
        }
    }
}
