use std::path::PathBuf;

use thiserror::Error;

/// Every failure the toolkit can report.
///
/// Variant names are stable: the CLI prints them verbatim in its
/// machine-readable error line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: String, actual: String },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("intensity magnitude {0:e} is below the energy floor, direction undefined")]
    ZeroEnergy(f64),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("support violation at index {0}: p > 0 where q = 0")]
    SupportViolation(usize),

    #[error("batch has no evaluable pairs")]
    EmptyBatch,

    #[error("mask spec cannot fit {n_mask} spans of length >= {l_mask} into {frames} frames")]
    InfeasibleSpec {
        n_mask: usize,
        l_mask: usize,
        frames: usize,
    },

    #[error("masked loss requested but the mask hides no frames")]
    NoMaskedFrames,

    #[error("training diverged at step {0}: loss is not finite")]
    DivergenceDetected(usize),

    #[error("cannot upsample {from} frames down to {to}")]
    ShrinkNotSupported { from: usize, to: usize },

    #[error("frame is {height}x{width}, equirectangular input needs width = 2 * height")]
    NotErpAspect { height: usize, width: usize },

    #[error("need at least 2 frame comparisons, got {0}")]
    TooFewFrames(usize),

    #[error("signal is empty or shorter than one analysis window")]
    EmptySignal,

    #[error("entry {id} has no {field}")]
    MissingScore { id: String, field: &'static str },

    #[error("manifest line {line}: {message}")]
    ManifestParse { line: usize, message: String },

    #[error("{location}: {message}")]
    Parse { location: String, message: String },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("corrupt header: {0}")]
    CorruptHeader(String),

    #[error("unsupported channel count {0} (expected 1, 2 or 4)")]
    ChannelCountUnsupported(u16),

    #[error("spec mismatch: {0}")]
    SpecMismatch(String),

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Stable variant name, used by the CLI error line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::OutOfRange(_) => "OutOfRange",
            Error::ShapeMismatch { .. } => "ShapeMismatch",
            Error::DimensionMismatch(..) => "DimensionMismatch",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::ZeroEnergy(_) => "ZeroEnergy",
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::SupportViolation(_) => "SupportViolation",
            Error::EmptyBatch => "EmptyBatch",
            Error::InfeasibleSpec { .. } => "InfeasibleSpec",
            Error::NoMaskedFrames => "NoMaskedFrames",
            Error::DivergenceDetected(_) => "DivergenceDetected",
            Error::ShrinkNotSupported { .. } => "ShrinkNotSupported",
            Error::NotErpAspect { .. } => "NotErpAspect",
            Error::TooFewFrames(_) => "TooFewFrames",
            Error::EmptySignal => "EmptySignal",
            Error::MissingScore { .. } => "MissingScore",
            Error::ManifestParse { .. } => "ManifestParseError",
            Error::Parse { .. } => "ParseError",
            Error::UnsupportedFormat(_) => "UnsupportedFormat",
            Error::CorruptHeader(_) => "CorruptHeader",
            Error::ChannelCountUnsupported(_) => "ChannelCountUnsupported",
            Error::SpecMismatch(_) => "SpecMismatch",
            Error::Io { .. } => "IoFailure",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn shape(expected: impl ToString, actual: impl ToString) -> Self {
        Error::ShapeMismatch {
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
