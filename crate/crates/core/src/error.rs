use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which marginal of a chi-squared context vanished.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marginal {
    Pixel,
    Band,
}

impl std::fmt::Display for Marginal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Marginal::Pixel => f.write_str("pixel"),
            Marginal::Band => f.write_str("band"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("cube dimensions must be positive (got {width}x{height}x{bands})")]
    ZeroDimension {
        width: usize,
        height: usize,
        bands: usize,
    },

    #[error("cube data holds {found} values, expected {expected}")]
    DataLength { expected: usize, found: usize },

    #[error("non-finite value at data index {index}")]
    NonFinite { index: usize },

    #[error("pixel ({x}, {y}) is outside a {width}x{height} grid")]
    OutOfBounds {
        x: i64,
        y: i64,
        width: usize,
        height: usize,
    },

    #[error("dimension mismatch: {left_width}x{left_height} vs {right_width}x{right_height}")]
    DimensionMismatch {
        left_width: usize,
        left_height: usize,
        right_width: usize,
        right_height: usize,
    },

    #[error("label map holds {found} labels, expected {expected}")]
    LabelLength { expected: usize, found: usize },

    #[error("chi-squared needs non-negative data; value at data index {index} is {value}")]
    NegativeValue { index: usize, value: f64 },

    #[error("chi-squared {marginal} marginal {index} is zero")]
    DegenerateMarginal { marginal: Marginal, index: usize },

    #[error("invalid parameter {name} = {value}: must be a non-negative number")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("region is empty")]
    EmptyRegion,

    #[error("region of {size} pixels exceeds the cap of {cap}")]
    RegionTooLarge { size: usize, cap: usize },

    #[error("seed pixel {seed} is not in the ball domain")]
    SeedOutsideDomain { seed: usize },

    #[error("invalid tooth-saw description: {0}")]
    InvalidSynth(String),

    #[error("{path}: bad magic at byte {offset}")]
    BadMagic { path: PathBuf, offset: u64 },

    #[error("{path}: zero dimension in header at byte {offset}")]
    ZeroHeaderDimension { path: PathBuf, offset: u64 },

    #[error("{path}: unknown sample type {dtype} at byte {offset}")]
    BadDtype {
        path: PathBuf,
        offset: u64,
        dtype: u8,
    },

    #[error("{path}: truncated at byte {offset}, expected {expected} bytes")]
    Truncated {
        path: PathBuf,
        offset: u64,
        expected: u64,
    },

    #[error("{path}: {extra} trailing bytes after payload at byte {offset}")]
    TrailingBytes {
        path: PathBuf,
        offset: u64,
        extra: u64,
    },

    #[error("{path}: malformed graymap: {reason}")]
    Graymap { path: PathBuf, reason: String },

    #[error("{path}: size {found_width}x{found_height} does not match {width}x{height}")]
    StackMismatch {
        path: PathBuf,
        width: usize,
        height: usize,
        found_width: usize,
        found_height: usize,
    },

    #[error("{path}: label value {value} at pixel {index} is not a non-negative integer")]
    LabelValue {
        path: PathBuf,
        index: usize,
        value: f64,
    },

    #[error("graymap stack is empty")]
    EmptyStack,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
