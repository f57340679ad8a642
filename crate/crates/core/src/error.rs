use thiserror::Error;

use crate::circuit::QubitId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed operation: {0}")]
    MalformedOperation(String),
    #[error("qubit {0} appears twice in one operation")]
    DuplicateQubit(QubitId),
    #[error("unsupported width n={0}: builders require n >= 2")]
    UnsupportedWidth(usize),
    #[error("policy error: {0}")]
    Policy(String),
    #[error("toffoli pair ({first}, {second}) is not eligible for measurement-based uncomputation: {reason}")]
    NotOdbEligible {
        first: usize,
        second: usize,
        reason: String,
    },
    #[error("simulation needs {width} qubits, cap is {cap}")]
    Capacity { width: usize, cap: usize },
    #[error("width mismatch: {0} vs {1}")]
    Shape(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;
