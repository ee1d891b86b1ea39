use thiserror::Error;

use crate::bitstream::BitError;

/// Encoding failures. `path` is a JSON Pointer into the document, written
/// with a leading `#`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("value at {path} does not match the schema: {reason}")]
    SchemaMismatch { path: String, reason: String },
    #[error("value at {path} cannot be encoded: {reason}")]
    Unsupported { path: String, reason: String },
}

impl EncodeError {
    pub(crate) fn mismatch(reason: impl Into<String>) -> Self {
        EncodeError::SchemaMismatch {
            path: "#".into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn unsupported(reason: impl Into<String>) -> Self {
        EncodeError::Unsupported {
            path: "#".into(),
            reason: reason.into(),
        }
    }

    pub fn path(&self) -> &str {
        match self {
            EncodeError::SchemaMismatch { path, .. } | EncodeError::Unsupported { path, .. } => path,
        }
    }

    /// Prefixes the path with one more reference token, innermost first.
    pub(crate) fn within(mut self, token: &str) -> Self {
        let path = match &mut self {
            EncodeError::SchemaMismatch { path, .. } | EncodeError::Unsupported { path, .. } => path,
        };
        let escaped = token.replace('~', "~0").replace('/', "~1");
        path.insert_str(1, &format!("/{escaped}"));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("payload is truncated")]
    Truncated,
    #[error("padding bits are not zero")]
    NonZeroPadding,
    #[error("{remaining} unread bits after the value")]
    TrailingData { remaining: u64 },
    #[error("varint does not fit in 64 bits")]
    VarintOverflow,
    #[error("choice index {index} is out of range for {count} values")]
    InvalidChoiceIndex { index: u64, count: usize },
    #[error("union tag {tag} is out of range for {count} branches")]
    InvalidUnionTag { tag: u64, count: usize },
    #[error("string is not valid UTF-8")]
    InvalidUtf8,
    #[error("string pool index {index} is out of range (pool holds {len})")]
    PoolIndexOutOfRange { index: u64, len: usize },
    #[error("reserved major type 7")]
    ReservedMajorType,
    #[error("invalid tag byte {tag:#04x}")]
    InvalidTag { tag: u8 },
    #[error("integer is outside the permitted range")]
    IntegerOutOfRange,
    #[error("number exponent is out of range")]
    InvalidNumber,
    #[error("duplicate object key {key:?}")]
    DuplicateKey { key: String },
    #[error("length {len} is outside the permitted range")]
    LengthOutOfRange { len: u64 },
    #[error("nesting is too deep")]
    TooDeep,
}

impl From<BitError> for DecodeError {
    fn from(e: BitError) -> Self {
        match e {
            BitError::Truncated { .. } => DecodeError::Truncated,
            BitError::VarintOverflow => DecodeError::VarintOverflow,
            BitError::TrailingData { remaining } => DecodeError::TrailingData { remaining },
            BitError::NonZeroPadding => DecodeError::NonZeroPadding,
        }
    }
}
