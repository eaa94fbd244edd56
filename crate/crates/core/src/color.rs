//! sRGB transfer function.

use crate::num::Real;
use crate::raster::Image;

/// Gamma-encoded sRGB value to linear light.
pub fn srgb_to_linear<T: Real>(v: T) -> T {
    if v <= T::lit(0.04045) {
        v / T::lit(12.92)
    } else {
        ((v + T::lit(0.055)) / T::lit(1.055)).powf(T::lit(2.4))
    }
}

/// Linear light to gamma-encoded sRGB.
pub fn linear_to_srgb<T: Real>(v: T) -> T {
    if v <= T::lit(0.0031308) {
        v * T::lit(12.92)
    } else {
        T::lit(1.055) * v.powf(T::one() / T::lit(2.4)) - T::lit(0.055)
    }
}

pub fn decode_image<T: Real>(img: &Image<T>) -> Image<T> {
    img.map(srgb_to_linear)
}

/// Encodes and clamps to [0, 1] (the curve overshoots 1 by an ulp or so).
pub fn encode_image<T: Real>(img: &Image<T>) -> Image<T> {
    img.map(|v| linear_to_srgb(v).max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_round_trip() {
        assert_eq!(srgb_to_linear(0.0f64), 0.0);
        assert!((srgb_to_linear(1.0f64) - 1.0).abs() < 1e-15);
        for b in 0..=255u32 {
            let v = b as f64 / 255.0;
            let back = linear_to_srgb(srgb_to_linear(v));
            assert!((back - v).abs() < 1e-12, "{b}");
        }
    }

    #[test]
    fn midtone_reference() {
        // 0.5 encoded is about 0.2140 linear.
        assert!((srgb_to_linear(0.5f64) - 0.214_041_140_5).abs() < 1e-9);
    }
}
