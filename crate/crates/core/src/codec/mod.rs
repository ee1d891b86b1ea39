//! Bit-level encoder and decoder.
//!
//! A schema-driven payload is the concatenation of the fields selected by
//! the plan, packed MSB first and zero padded to a byte. The schema-less
//! mode is the same machinery driven by the wildcard plan.
//!
//! Strings share one pool per session. A string of two or more bytes is
//! appended the first time it is written literally, and later occurrences
//! become back references when that is strictly shorter.

mod decode;
mod encode;
mod error;
mod frame;
pub mod layout;
mod pool;

use crate::bitstream::{BitReader, BitWriter};
use crate::json::JsonValue;
use crate::plan::EncodingPlan;

use decode::Decoder;
use encode::Encoder;

pub use decode::MAX_DECODE_DEPTH;
pub use error::{DecodeError, EncodeError};
pub use frame::{frame, unframe, FrameError, Mode, MAGIC};
pub use pool::{StringPool, MIN_POOLED_LEN};

/// Pool activity recorded by a traced encode or decode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoolTrace {
    /// Pool length after each string was written or read.
    pub sizes: Vec<usize>,
    /// Final pool contents in insertion order.
    pub strings: Vec<String>,
}

pub fn encode(v: &JsonValue, plan: &EncodingPlan) -> Result<Vec<u8>, EncodeError> {
    encode_traced(v, plan).map(|(bytes, _)| bytes)
}

pub fn encode_traced(v: &JsonValue, plan: &EncodingPlan) -> Result<(Vec<u8>, PoolTrace), EncodeError> {
    let mut enc = Encoder::new(Some(plan), true);
    enc.node(plan.root(), v)?;
    let trace = PoolTrace {
        sizes: enc.trace.take().unwrap_or_default(),
        strings: enc.pool.strings().to_vec(),
    };
    Ok((enc.w.finish(), trace))
}

pub fn decode(bytes: &[u8], plan: &EncodingPlan) -> Result<JsonValue, DecodeError> {
    decode_traced(bytes, plan).map(|(v, _)| v)
}

pub fn decode_traced(bytes: &[u8], plan: &EncodingPlan) -> Result<(JsonValue, PoolTrace), DecodeError> {
    let mut dec = Decoder::new(Some(plan), BitReader::new(bytes), true);
    let value = dec.node(plan.root())?;
    dec.r.finish()?;
    let trace = PoolTrace {
        sizes: dec.trace.take().unwrap_or_default(),
        strings: dec.pool.strings().to_vec(),
    };
    Ok((value, trace))
}

pub fn encode_schemaless(v: &JsonValue) -> Result<Vec<u8>, EncodeError> {
    let mut enc = Encoder::new(None, false);
    enc.any(v)?;
    Ok(enc.w.finish())
}

pub fn decode_schemaless(bytes: &[u8]) -> Result<JsonValue, DecodeError> {
    let mut dec = Decoder::new(None, BitReader::new(bytes), false);
    let value = dec.any()?;
    dec.r.finish()?;
    Ok(value)
}

/// Writes one self-describing value into an existing stream and pool.
pub fn encode_any(v: &JsonValue, pool: &mut StringPool, w: &mut BitWriter) -> Result<(), EncodeError> {
    let mut enc = Encoder::new(None, false);
    enc.w = std::mem::take(w);
    enc.pool = std::mem::take(pool);
    let result = enc.any(v);
    *w = enc.w;
    *pool = enc.pool;
    result
}

/// Reads one self-describing value from an existing stream and pool.
pub fn decode_any(r: &mut BitReader<'_>, pool: &mut StringPool) -> Result<JsonValue, DecodeError> {
    let mut dec = Decoder::new(None, r.clone(), false);
    dec.pool = std::mem::take(pool);
    let result = dec.any();
    *r = dec.r;
    *pool = dec.pool;
    result
}
