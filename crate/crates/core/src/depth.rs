//! Relative-to-metric depth conversion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{min_max, to_range, Real};
use crate::raster::Plane;

pub use crate::io::depth::{load_depth, read_pfm, write_pfm, Endianness};

/// Maps a relative depth map onto `[z_min, z_max]` meters through a power
/// curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthScaling<T> {
    pub z_min: T,
    pub z_max: T,
    pub gamma: T,
    /// Treat larger input values as nearer (disparity-style maps).
    #[serde(default)]
    pub invert: bool,
}

impl<T: Real> Default for DepthScaling<T> {
    fn default() -> Self {
        Self {
            z_min: T::one(),
            z_max: T::lit(5.0),
            gamma: T::one(),
            invert: false,
        }
    }
}

impl<T: Real> DepthScaling<T> {
    pub fn new(z_min: T, z_max: T, gamma: T) -> Result<Self> {
        let s = Self {
            z_min,
            z_max,
            gamma,
            invert: false,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_min >= T::zero() && self.z_min < self.z_max && self.z_max.is_finite()) {
            return Err(Error::Domain {
                name: "z_min/z_max",
                value: self.z_min.to_f64_lossy(),
                expected: "0 <= z_min < z_max, finite",
            });
        }
        if !(self.gamma > T::zero()) || !self.gamma.is_finite() {
            return Err(Error::Domain {
                name: "gamma",
                value: self.gamma.to_f64_lossy(),
                expected: "finite and > 0",
            });
        }
        Ok(())
    }
}

/// Min-max normalizes `rel` to [0, 1], applies `u^gamma`, and maps the
/// result affinely onto `[z_min, z_max]`. Monotone in the input; the output
/// extremes equal `z_min` and `z_max` exactly.
pub fn scale_depth<T: Real>(rel: &Plane<T>, s: &DepthScaling<T>) -> Result<Plane<T>> {
    s.validate()?;
    if !rel.all_finite() {
        return Err(Error::NumericalFault("relative depth map"));
    }
    let (lo, hi) = min_max(rel.as_slice()).ok_or_else(|| Error::Dimension("empty depth map".into()))?;
    if !(hi > lo) {
        return Err(Error::DegenerateDepth(lo.to_f64_lossy()));
    }
    let span = hi - lo;
    Ok(rel.map(|r| {
        let mut u = if r == hi {
            T::one()
        } else {
            ((r - lo) / span).min(T::one())
        };
        if s.invert {
            u = if r == lo { T::one() } else { T::one() - u };
        }
        to_range(u.powf(s.gamma), s.z_min, s.z_max)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ramp() -> Plane<f64> {
        Plane::from_fn(11, 1, |x, _| x as f64 / 10.0)
    }

    #[test]
    fn linear_case_is_affine() {
        let s = DepthScaling::new(1.0, 5.0, 1.0).unwrap();
        let z = scale_depth(&ramp(), &s).unwrap();
        assert_eq!(z.get(0, 0), 1.0);
        assert_eq!(z.get(10, 0), 5.0);
        assert!((z.get(5, 0) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn gamma_three_midpoint() {
        let s = DepthScaling::new(0.0, 20.0, 3.0).unwrap();
        let rel = Plane::<f64>::new(3, 1, vec![0.0, 0.5, 1.0]).unwrap();
        let z = scale_depth(&rel, &s).unwrap();
        assert!((z.get(1, 0) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn extremes_preserved_for_all_gammas() {
        let rel = Plane::from_fn(7, 5, |x, y| ((x * 13 + y * 7) % 17) as f64 * 0.37 - 2.0);
        for gamma in [1.0, 3.0, 6.0] {
            let s = DepthScaling::new(0.3, 0.7, gamma).unwrap();
            let z = scale_depth(&rel, &s).unwrap();
            assert_eq!(z.min_max().unwrap(), (0.3, 0.7));
        }
    }

    #[test]
    fn inverted_maps_flip() {
        let s = DepthScaling {
            invert: true,
            ..DepthScaling::new(1.0, 5.0, 1.0).unwrap()
        };
        let z = scale_depth(&ramp(), &s).unwrap();
        assert_eq!(z.get(0, 0), 5.0);
        assert_eq!(z.get(10, 0), 1.0);
    }

    #[test]
    fn constant_map_is_degenerate() {
        let s = DepthScaling::<f64>::default();
        assert!(matches!(
            scale_depth(&Plane::filled(3, 3, 0.4), &s),
            Err(Error::DegenerateDepth(_))
        ));
    }

    #[test]
    fn invalid_scaling_rejected() {
        assert!(DepthScaling::new(5.0, 1.0, 1.0).is_err());
        assert!(DepthScaling::new(-1.0, 1.0, 1.0).is_err());
        assert!(DepthScaling::new(0.0, 1.0, 0.0).is_err());
    }
}
