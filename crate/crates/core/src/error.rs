use thiserror::Error;

use crate::golden::{GoldenPoint, GoldenReal};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArithError {
    #[error("value {0:?} lies exactly on a half-integer boundary")]
    BoundaryTie(GoldenReal),
    #[error("cannot parse golden value from {0:?}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("point {0:?} lies on the extension of a kite edge")]
    UndefinedPoint(GoldenPoint),
    #[error("point {0:?} is not outside the kite")]
    NotOutside(GoldenPoint),
    #[error("point {0:?} is not in the return domain")]
    NotInDomain(GoldenPoint),
    #[error("point {0:?} lies on a strip boundary")]
    OnBoundary(GoldenPoint),
    #[error("orbit of {0:?} did not return within {1} steps")]
    NoReturn(GoldenPoint, usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("lattice point ({0}, {1}) is not in the half-plane T > 0")]
    NotInHalfPlane(i64, i64),
    #[error("lattice point ({0}, {1}) is in no partition polygon")]
    Unclassified(i64, i64),
    #[error("lattice point ({0}, {1}) is in {2} partition polygons")]
    MultiplyClassified(i64, i64, usize),
    #[error("trace stalled at ({0}, {1})")]
    Stalled(i64, i64),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InflationError {
    #[error("gene {0}: {1}")]
    Gene(usize, String),
    #[error("no special similarity found for gene {0}")]
    GammaNotFound(usize),
    #[error("shadow of gene center ({0}, {1}) not found")]
    ShadowNotFound(i64, i64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TorusError {
    #[error("point lies on the undefined set of map {0}")]
    Undefined(usize),
    #[error("tile {0}: {1}")]
    Tile(usize, String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Error)]
pub enum DataError {
    #[error("data file {file}: {msg}")]
    Malformed { file: String, msg: String },
    #[error("data file {file}: expected {expected} records, found {found}")]
    Count { file: String, expected: usize, found: usize },
    #[error("data file {file}: checksum mismatch")]
    Checksum { file: String },
    #[error("io error on {file}: {source}")]
    Io { file: String, source: std::io::Error },
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("unknown stage {0:?}")]
    UnknownStage(String),
    #[error("unknown render kind {0:?}")]
    UnknownRender(String),
    #[error(transparent)]
    MissingAsset(#[from] DataError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Inflation(#[from] InflationError),
    #[error("cannot write {file}: {source}")]
    Io { file: String, source: std::io::Error },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
