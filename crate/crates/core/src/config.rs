//! Degradation parameters as read from JSON configs and host mappings.

use serde::{Deserialize, Serialize};

use crate::depth::DepthScaling;
use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::num::Real;
use crate::spectra::JerlovType;

/// Which formation model to synthesize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Direct + backscatter with β^B and b·E/β veil; no forward term, no field.
    Reference,
    /// Direct + blurred forward scatter + backscatter with G^B and μ-scaled veil.
    Proposed,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Reference, Mode::Proposed];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Reference => "reference",
            Mode::Proposed => "proposed",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Random-field modulation settings; the seed comes from the job.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldSettings {
    pub exponent: f64,
    pub lo: f64,
    pub hi: f64,
    pub enabled: bool,
}

impl Default for FieldSettings {
    fn default() -> Self {
        Self {
            exponent: 3.0,
            lo: 0.7,
            hi: 1.3,
            enabled: true,
        }
    }
}

impl FieldSettings {
    pub fn with_seed<T: Real>(&self, seed: u64) -> FieldConfig<T> {
        FieldConfig {
            exponent: T::lit(self.exponent),
            lo: T::lit(self.lo),
            hi: T::lit(self.hi),
            seed,
        }
    }
}

/// Replacement per-channel attenuation that bypasses the spectral collapse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "OverrideRepr")]
pub struct CoefficientOverride {
    /// β_c^D = β_c^B (1/m).
    pub beta: [f64; 3],
    /// Scattering part of `beta`; defaults to the water type's collapsed b_c.
    pub scattering: Option<[f64; 3]>,
    /// Veil at infinity; defaults to the water type's reference backlight.
    pub backlight: Option<[f64; 3]>,
}

impl CoefficientOverride {
    pub fn uniform(beta: [f64; 3]) -> Self {
        Self {
            beta,
            scattering: None,
            backlight: None,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OverrideRepr {
    Betas([f64; 3]),
    Full {
        beta: [f64; 3],
        #[serde(default)]
        scattering: Option<[f64; 3]>,
        #[serde(default)]
        backlight: Option<[f64; 3]>,
    },
}

impl From<OverrideRepr> for CoefficientOverride {
    fn from(r: OverrideRepr) -> Self {
        match r {
            OverrideRepr::Betas(beta) => Self::uniform(beta),
            OverrideRepr::Full {
                beta,
                scattering,
                backlight,
            } => Self {
                beta,
                scattering,
                backlight,
            },
        }
    }
}

/// Model and geometry parameters shared by every job of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// Fraction of scattered light leaving the line of sight.
    pub g: f64,
    /// Backlight scaling.
    pub mu: f64,
    /// φ = phi_factor · mean collapsed scattering.
    pub phi_factor: f64,
    /// Vertical depth (m).
    pub d: f64,
    pub z_min: f64,
    pub z_max: f64,
    pub gamma: f64,
    pub invert_depth: bool,
    /// Pixels per meter of φ·z.
    pub pixels_per_unit: f64,
    pub field: FieldSettings,
    pub coefficient_override: Option<CoefficientOverride>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            g: 0.2,
            mu: 0.3,
            phi_factor: 0.3,
            d: 1.0,
            z_min: 1.0,
            z_max: 5.0,
            gamma: 1.0,
            invert_depth: false,
            pixels_per_unit: 1.0,
            field: FieldSettings::default(),
            coefficient_override: None,
        }
    }
}

fn check(ok: bool, prefix: &str, key: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(format!("{prefix}{key}"), message))
    }
}

fn finite3(v: &[f64; 3]) -> bool {
    v.iter().all(|x| x.is_finite())
}

impl Params {
    /// Validates every entry; `prefix` is prepended to the reported key path.
    pub fn validate(&self, prefix: &str) -> Result<()> {
        check(
            self.g > 0.0 && self.g <= 1.0,
            prefix,
            "g",
            &format!("must be in (0, 1], got {}", self.g),
        )?;
        check(
            self.mu > 0.0 && self.mu <= 1.0,
            prefix,
            "mu",
            &format!("must be in (0, 1], got {}", self.mu),
        )?;
        check(
            self.phi_factor >= 0.0 && self.phi_factor.is_finite(),
            prefix,
            "phi_factor",
            &format!("must be finite and >= 0, got {}", self.phi_factor),
        )?;
        check(
            self.d >= 0.0 && self.d.is_finite(),
            prefix,
            "d",
            &format!("must be finite and >= 0, got {}", self.d),
        )?;
        check(
            self.z_min >= 0.0 && self.z_min.is_finite(),
            prefix,
            "z_min",
            "must be finite and >= 0",
        )?;
        check(
            self.z_max > self.z_min && self.z_max.is_finite(),
            prefix,
            "z_max",
            &format!("must be finite and > z_min ({}), got {}", self.z_min, self.z_max),
        )?;
        check(
            self.gamma > 0.0 && self.gamma.is_finite(),
            prefix,
            "gamma",
            "must be finite and > 0",
        )?;
        check(
            self.pixels_per_unit > 0.0 && self.pixels_per_unit.is_finite(),
            prefix,
            "pixels_per_unit",
            "must be finite and > 0",
        )?;
        let f = &self.field;
        check(
            f.exponent > 0.0 && f.exponent.is_finite(),
            prefix,
            "field.exponent",
            "must be finite and > 0",
        )?;
        check(f.lo > 0.0 && f.lo <= 1.0, prefix, "field.lo", "must be in (0, 1]")?;
        check(
            f.hi >= 1.0 && f.hi.is_finite() && f.hi > f.lo,
            prefix,
            "field.hi",
            "must be finite, >= 1 and > lo",
        )?;
        if let Some(o) = &self.coefficient_override {
            check(
                finite3(&o.beta) && o.beta.iter().all(|&b| b > 0.0),
                prefix,
                "coefficient_override.beta",
                "entries must be finite and > 0",
            )?;
            if let Some(s) = &o.scattering {
                check(
                    finite3(s) && s.iter().zip(&o.beta).all(|(&s, &b)| s >= 0.0 && s <= b),
                    prefix,
                    "coefficient_override.scattering",
                    "entries must be in [0, beta]",
                )?;
            }
            if let Some(b) = &o.backlight {
                check(
                    b.iter().all(|v| (0.0..=1.0).contains(v)),
                    prefix,
                    "coefficient_override.backlight",
                    "entries must be in [0, 1]",
                )?;
            }
        }
        Ok(())
    }

    pub fn scaling<T: Real>(&self) -> DepthScaling<T> {
        DepthScaling {
            z_min: T::lit(self.z_min),
            z_max: T::lit(self.z_max),
            gamma: T::lit(self.gamma),
            invert: self.invert_depth,
        }
    }
}

/// Everything needed to degrade one image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegradationConfig {
    pub water: JerlovType,
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default)]
    pub params: Params,
    /// Seeds the random field of this image.
    #[serde(default)]
    pub seed: u64,
}

fn default_mode() -> Mode {
    Mode::Proposed
}

impl DegradationConfig {
    pub fn new(water: JerlovType, mode: Mode) -> Self {
        Self {
            water,
            mode,
            params: Params::default(),
            seed: 0,
        }
    }

    /// Parses and validates a host-supplied mapping. Error messages carry the
    /// offending key path.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let cfg: Self = serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            Error::config(path, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate("params.")
    }

    /// Random-field settings for this job, or `None` when modulation is off
    /// (always off in reference mode).
    pub fn field_config<T: Real>(&self) -> Option<FieldConfig<T>> {
        (self.mode == Mode::Proposed && self.params.field.enabled).then(|| self.params.field.with_seed(self.seed))
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self { mode, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn defaults_match_published_parameters() {
        let p = Params::default();
        assert_eq!((p.g, p.mu, p.phi_factor), (0.2, 0.3, 0.3));
        assert_eq!((p.field.lo, p.field.hi), (0.7, 1.3));
        assert_eq!((p.d, p.z_min, p.z_max), (1.0, 1.0, 5.0));
    }

    #[test]
    fn mapping_errors_name_the_key() {
        let err = DegradationConfig::from_json(&json!({"water": "9C", "params": {"g": 1.5}})).unwrap_err();
        assert!(err.to_string().contains("params.g"), "{err}");

        let err = DegradationConfig::from_json(&json!({"water": "9C", "params": {"mu": "x"}})).unwrap_err();
        assert!(err.to_string().contains("params.mu"), "{err}");

        let err = DegradationConfig::from_json(&json!({"water": "9C", "params": {"bogus": 1}})).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");

        let err = DegradationConfig::from_json(&json!({"water": "4C"})).unwrap_err();
        assert!(err.to_string().contains("water"), "{err}");
    }

    #[test]
    fn override_accepts_array_or_object() {
        let a: CoefficientOverride = serde_json::from_value(json!([0.5, 0.6, 0.7])).unwrap();
        assert_eq!(a, CoefficientOverride::uniform([0.5, 0.6, 0.7]));
        let b: CoefficientOverride =
            serde_json::from_value(json!({"beta": [0.5, 0.5, 0.5], "backlight": [0.6, 0.6, 0.6]})).unwrap();
        assert_eq!(b.backlight, Some([0.6; 3]));
        assert_eq!(b.scattering, None);
    }

    #[test]
    fn reference_mode_never_modulates() {
        let cfg = DegradationConfig::new(JerlovType::C9, Mode::Reference);
        assert!(cfg.field_config::<f64>().is_none());
        assert!(cfg.with_mode(Mode::Proposed).field_config::<f64>().is_some());
    }

    #[test]
    fn invalid_override_rejected() {
        let mut cfg = DegradationConfig::new(JerlovType::C9, Mode::Reference);
        cfg.params.coefficient_override = Some(CoefficientOverride {
            beta: [0.5; 3],
            scattering: Some([0.6, 0.1, 0.1]),
            backlight: None,
        });
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("coefficient_override.scattering"));
    }
}
