use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("wavelength {wavelength} nm outside curve support [{lo}, {hi}] nm")]
    OutOfRange { wavelength: f64, lo: f64, hi: f64 },

    #[error("invalid spectral curve: {0}")]
    InvalidCurve(String),

    #[error("curves are sampled on different wavelength grids")]
    GridMismatch,

    #[error("{name} = {value} is outside its domain: {expected}")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("degenerate camera response: channel {channel} has zero normalization integral")]
    DegenerateResponse { channel: usize },

    #[error("degenerate depth map: all values equal ({0})")]
    DegenerateDepth(f64),

    #[error("forward-scatter parametrization violated in channel {channel}: G = {g} > beta = {beta}")]
    Parametrization { channel: usize, g: f64, beta: f64 },

    #[error("numerical fault: non-finite value in {0}")]
    NumericalFault(&'static str),

    #[error("invalid config at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("failed to decode {path}: {message}")]
    Decode { path: PathBuf, message: String },

    #[error("invalid spectral data in {source_name}: {message}")]
    SpectralData { source_name: String, message: String },

    #[error("value {value} outside [0, 1] cannot be encoded")]
    Encode { value: f64 },

    #[error("missing depth maps for: {}", .0.join(", "))]
    MissingDepth(Vec<String>),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn decode(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        Error::Decode {
            path: path.into(),
            message: message.to_string(),
        }
    }
}
