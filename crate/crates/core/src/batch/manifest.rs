//! Run manifests: enough to reproduce every output byte-exactly.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{DegradationConfig, Mode};
use crate::error::{Error, Result};
use crate::io::BitDepth;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunKind {
    Batch,
    Pairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Expanded by a dry run; nothing was computed.
    Planned,
    Ok,
    Failed,
}

/// One (image, water type, mode, sweep point) cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    /// Relative to the run's output directory.
    pub output: String,
    /// File names inside the configured image / depth directories.
    pub image: String,
    pub depth: String,
    pub image_index: usize,
    pub sweep_index: usize,
    /// Exact parameters used, including the per-image field seed.
    pub config: DegradationConfig,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// One side-by-side survey pair and which model sits on which side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairEntry {
    pub output: String,
    pub image: String,
    pub depth: String,
    pub image_index: usize,
    pub left: Mode,
    pub right: Mode,
    /// Parameters of the proposed rendering; the reference rendering uses
    /// the same values with `mode = reference`.
    pub config: DegradationConfig,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    pub images: PathBuf,
    pub depth: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub kind: RunKind,
    pub version: String,
    /// SHA-256 of the canonical (key-sorted) resolved config.
    pub config_hash: String,
    pub seed: u64,
    /// `embedded` or the directory the spectral tables were read from.
    pub spectral_data: String,
    pub bit_depth: BitDepth,
    /// Resolved image and depth directories.
    pub inputs: Inputs,
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub answer_key: Vec<PairEntry>,
    pub failed: usize,
}

impl Manifest {
    pub fn is_success(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::decode(path, e))
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sha256_known_vector() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
