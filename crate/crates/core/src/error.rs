use thiserror::Error;

use crate::point::Point;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("shave index {index} outside 1..={max}")]
    ShaveIndex { index: usize, max: usize },

    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: String, limit: u64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid multset: {0}")]
    InvalidMultset(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("not a generalized numerical semigroup: {0}")]
    NotGns(String),

    #[error("labeling does not describe a rectangular semigroup (multset has {found} points, expected {dim})")]
    NotRectangular { found: usize, dim: usize },

    #[error("operation requires at least one gap")]
    EmptyGapSet,

    #[error("axial family: {0}")]
    AxialFamily(String),

    #[error("root bracket [{lo}, {hi}] does not change sign")]
    NoBracket { lo: f64, hi: f64 },

    #[error("tolerance {0} is below what double precision can resolve")]
    Tolerance(f64),

    #[error("pole at x = {0}")]
    Pole(f64),

    #[error("argument out of range: {0}")]
    Domain(String),

    #[error("missing count for {stat} at g = {g}")]
    MissingCount { stat: String, g: u32 },

    #[error("io: {0}")]
    Io(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn cap(what: impl Into<String>, limit: u64) -> Self {
        Error::ResourceCap { what: what.into(), limit }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub(crate) fn point_list(points: &[Point]) -> String {
    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
