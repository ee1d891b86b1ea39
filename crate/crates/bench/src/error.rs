use std::io;
use std::path::PathBuf;

use bjson_core::json::ParseError;
use bjson_core::{DecodeError, EncodeError, SchemaError};
use thiserror::Error;

use crate::measure::BinaryMode;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: ParseError,
    },
    #[error("{path}: {source}")]
    Schema {
        path: PathBuf,
        #[source]
        source: SchemaError,
    },
    #[error("{path}: {reason}")]
    Meta { path: PathBuf, reason: String },
    #[error("case {case}: document does not validate against its strict schema")]
    StrictMismatch { case: String },
    #[error("case {case}: loose schema must accept everything")]
    LooseNotAny { case: String },
    #[error("no cases found under {0}")]
    EmptyCorpus(PathBuf),
    #[error("case {case}, {mode}: {source}")]
    Encode {
        case: String,
        mode: BinaryMode,
        #[source]
        source: EncodeError,
    },
    #[error("case {case}, {mode}: payload does not decode: {source}")]
    Decode {
        case: String,
        mode: BinaryMode,
        #[source]
        source: DecodeError,
    },
    #[error("case {case}, {mode}: decoded value differs from the document")]
    NotLossless { case: String, mode: BinaryMode },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl BenchError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        BenchError::Io {
            path: path.into(),
            source,
        }
    }

    /// True when the failure is a lossless round-trip violation.
    pub fn is_fairness_failure(&self) -> bool {
        matches!(self, BenchError::Decode { .. } | BenchError::NotLossless { .. })
    }
}
