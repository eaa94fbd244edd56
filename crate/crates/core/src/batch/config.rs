//! Run configuration: inputs, outputs and the job grid.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::{DegradationConfig, Mode, Params};
use crate::error::{Error, Result};
use crate::io::BitDepth;
use crate::spectra::JerlovType;

/// Whether depth files hold estimator output or distances in meters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthKind {
    #[default]
    Relative,
    Metric,
}

/// Where clean images and their depth maps live.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputSpec {
    pub images: PathBuf,
    /// Directory of depth maps; defaults to `images`.
    #[serde(default)]
    pub depth: Option<PathBuf>,
    #[serde(default = "default_depth_extension")]
    pub depth_extension: String,
    #[serde(default)]
    pub depth_kind: DepthKind,
}

fn default_depth_extension() -> String {
    "pfm".into()
}

impl InputSpec {
    pub fn from_dir(images: impl Into<PathBuf>) -> Self {
        Self {
            images: images.into(),
            depth: None,
            depth_extension: default_depth_extension(),
            depth_kind: DepthKind::Relative,
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InputRepr {
    Dir(PathBuf),
    Spec(Value),
}

/// How survey pairs are drawn from images × water types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairAssignment {
    /// Every image under every water type.
    #[default]
    Cross,
    /// Images shuffled and dealt round-robin over the water types, one
    /// pair per image.
    Split,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PairSettings {
    pub assignment: PairAssignment,
}

/// A fully parsed and validated run configuration.
///
/// Relative paths are resolved against `base_dir`, the directory holding
/// the config file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchConfig {
    pub input: InputSpec,
    pub output: PathBuf,
    pub water_types: Vec<JerlovType>,
    pub modes: Vec<Mode>,
    /// One entry per sweep point.
    pub params: Vec<Params>,
    pub seed: u64,
    pub bit_depth: BitDepth,
    pub pairs: PairSettings,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    input: InputRepr,
    output: PathBuf,
    #[serde(default = "survey_waters")]
    water_types: Vec<JerlovType>,
    #[serde(default = "both_modes")]
    modes: Vec<Mode>,
    #[serde(default)]
    params: Option<Value>,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    bit_depth: BitDepth,
    #[serde(default)]
    pairs: PairSettings,
}

fn survey_waters() -> Vec<JerlovType> {
    JerlovType::SURVEY.to_vec()
}

fn both_modes() -> Vec<Mode> {
    Mode::BOTH.to_vec()
}

fn deserialize_at<T: serde::de::DeserializeOwned>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let key = match (prefix.is_empty(), inner.as_str()) {
            (true, _) => inner.clone(),
            (false, ".") => prefix.to_string(),
            (false, _) => format!("{prefix}.{inner}"),
        };
        Error::config(key, e.into_inner().to_string())
    })
}

fn unique<T: PartialEq + std::fmt::Debug>(items: &[T], key: &str) -> Result<()> {
    if items.is_empty() {
        return Err(Error::config(key, "must not be empty"));
    }
    for (i, a) in items.iter().enumerate() {
        if items[..i].contains(a) {
            return Err(Error::config(format!("{key}[{i}]"), format!("duplicate entry {a:?}")));
        }
    }
    Ok(())
}

impl BatchConfig {
    /// Parses a config document. Schema violations name the offending key.
    pub fn from_json(value: Value, base_dir: &Path) -> Result<Self> {
        let raw: RawConfig = deserialize_at(value, "")?;
        let input = match raw.input {
            InputRepr::Dir(images) => InputSpec::from_dir(images),
            InputRepr::Spec(v) => deserialize_at(v, "input")?,
        };
        let params = match raw.params {
            None => vec![Params::default()],
            Some(Value::Array(items)) => items
                .into_iter()
                .enumerate()
                .map(|(i, v)| deserialize_at::<Params>(v, &format!("params[{i}]")))
                .collect::<Result<Vec<_>>>()?,
            Some(v) => vec![deserialize_at::<Params>(v, "params")?],
        };
        let cfg = Self {
            input,
            output: raw.output,
            water_types: raw.water_types,
            modes: raw.modes,
            params,
            seed: raw.seed,
            bit_depth: raw.bit_depth,
            pairs: raw.pairs,
            base_dir: base_dir.to_path_buf(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::config("<document>", e.to_string()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_json(value, &base)
    }

    pub fn validate(&self) -> Result<()> {
        unique(&self.water_types, "water_types")?;
        unique(&self.modes, "modes")?;
        if self.params.is_empty() {
            return Err(Error::config("params", "sweep must not be empty"));
        }
        for (i, p) in self.params.iter().enumerate() {
            let prefix = if self.params.len() == 1 {
                "params.".to_string()
            } else {
                format!("params[{i}].")
            };
            p.validate(&prefix)?;
        }
        let ext = self.input.depth_extension.to_ascii_lowercase();
        if ext != "pfm" && ext != "png" {
            return Err(Error::config("input.depth_extension", "must be `pfm` or `png`"));
        }
        if ext == "png" && self.depth_dir() == self.images_dir() {
            return Err(Error::config(
                "input.depth",
                "PNG depth maps need their own directory; they would be mistaken for images",
            ));
        }
        Ok(())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn images_dir(&self) -> PathBuf {
        self.resolve(&self.input.images)
    }

    pub fn depth_dir(&self) -> PathBuf {
        self.resolve(self.input.depth.as_ref().unwrap_or(&self.input.images))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.resolve(&self.output)
    }

    /// The degradation config of one job cell.
    pub fn job_config(&self, sweep: usize, water: JerlovType, mode: Mode, field_seed: u64) -> DegradationConfig {
        DegradationConfig {
            water,
            mode,
            params: self.params[sweep].clone(),
            seed: field_seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn parse(v: Value) -> Result<BatchConfig> {
        BatchConfig::from_json(v, Path::new("/cfg"))
    }

    #[test]
    fn defaults_follow_survey_setup() {
        let c = parse(json!({"input": "imgs", "output": "out"})).unwrap();
        assert_eq!(c.water_types, JerlovType::SURVEY.to_vec());
        assert_eq!(c.modes, vec![Mode::Reference, Mode::Proposed]);
        assert_eq!(c.params, vec![Params::default()]);
        assert_eq!(c.images_dir(), PathBuf::from("/cfg/imgs"));
        assert_eq!(c.depth_dir(), c.images_dir());
    }

    #[test]
    fn nested_key_paths_in_errors() {
        let e = parse(json!({"input": "i", "output": "o", "params": {"field": {"exponant": 3}}})).unwrap_err();
        assert!(
            matches!(&e, Error::Config { key, .. } if key == "params.field.exponant"),
            "{e}"
        );
        let e = parse(json!({"input": "i", "output": "o", "params": {"g": 1.5}})).unwrap_err();
        assert!(matches!(&e, Error::Config { key, .. } if key == "params.g"), "{e}");
        let e = parse(json!({"input": "i", "output": "o", "params": [{}, {"mu": 0.0}]})).unwrap_err();
        assert!(matches!(&e, Error::Config { key, .. } if key == "params[1].mu"), "{e}");
        let e = parse(json!({"input": "i", "output": "o", "water_types": ["IA", "4C"]})).unwrap_err();
        assert!(e.to_string().contains("water_types[1]"), "{e}");
        let e = parse(json!({"input": {"images": "i", "depth_extention": "png"}, "output": "o"})).unwrap_err();
        assert!(e.to_string().contains("input"), "{e}");
        let e = parse(json!({"input": "i"})).unwrap_err();
        assert!(e.to_string().contains("output"), "{e}");
    }

    #[test]
    fn duplicates_and_ambiguous_png_depth_rejected() {
        assert!(parse(json!({"input": "i", "output": "o", "modes": ["proposed", "proposed"]})).is_err());
        assert!(parse(json!({"input": "i", "output": "o", "water_types": []})).is_err());
        assert!(parse(json!({"input": {"images": "i", "depth_extension": "png"}, "output": "o"})).is_err());
        assert!(
            parse(json!({"input": {"images": "i", "depth": "d", "depth_extension": "png"}, "output": "o"})).is_ok()
        );
    }
}
