use thiserror::Error;

use crate::pathspace::{Arm2Path, PathPair, Subensemble, TimeOrdering};
use crate::theories::Side;

#[derive(Debug, Error)]
pub enum Error {
    #[error("path pair {pair} belongs to subensemble {actual}, not {expected}")]
    WrongSubensemble {
        pair: PathPair,
        expected: Subensemble,
        actual: Subensemble,
    },
    #[error("photon-2 path {0} has no single-path amplitude")]
    NoSinglePathAmplitude(Arm2Path),
    #[error("no amplitude table exists for subensemble {0}")]
    SatelliteSubensemble(Subensemble),
    #[error("no closed form for subensemble {sub} on {side}")]
    NoClosedForm { sub: Subensemble, side: Side },
    #[error("the causal model makes no prediction for time ordering {0}")]
    CausalOrdering(TimeOrdering),
    #[error("{model} predictions are only defined for subensemble L, got {sub}")]
    CausalSubensemble {
        model: &'static str,
        sub: Subensemble,
    },
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
    #[error("tally has no accepted events")]
    EmptyTally,
    #[error("beam-splitter convention is not unitary: {0}")]
    NonUnitary(String),
    #[error("geometry line {line}: {message}")]
    GeometryParse { line: usize, message: String },
    #[error("invalid geometry: {0}")]
    Geometry(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
