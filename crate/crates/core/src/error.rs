use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for width {width}")]
    OperandOutOfRange { qubit: usize, width: usize },

    #[error("gate {gate} expects {expected} operand(s), got {got}")]
    WrongArity {
        gate: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("gate {0} received duplicate operands")]
    DuplicateOperands(&'static str),

    #[error("qubit map is not injective or has the wrong length")]
    NonInjectiveMap,

    #[error("non-finite rotation angle")]
    NonFiniteAngle,

    #[error("width {width} exceeds the dense simulation cap of {cap} qubits")]
    WidthExceedsDenseCap { width: usize, cap: usize },

    #[error("gate {0} is not a Clifford operation")]
    NonClifford(&'static str),

    #[error("operation {0} is not unitary")]
    NonUnitary(&'static str),

    #[error("logical gate {gate} is not supported by code {code}")]
    UnsupportedLogicalGate { gate: &'static str, code: String },

    #[error("measurement record has length {got}, expected {expected}")]
    RecordLength { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
