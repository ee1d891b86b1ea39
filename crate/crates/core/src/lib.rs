//! Compact binary encoding for JSON documents.
//!
//! A JSON Schema is canonicalized ([`schema`]), compiled into an
//! [`plan::EncodingPlan`], and executed by the [`codec`] over an unaligned
//! [`bitstream`]. Encoding without a schema is the same machinery run
//! against the wildcard schema `{}`.

pub mod bitstream;
pub mod codec;
pub mod json;
pub mod plan;
pub mod schema;

pub use codec::{decode, decode_schemaless, encode, encode_schemaless, frame, unframe, DecodeError, EncodeError, Mode};
pub use json::{json_equal, minify, parse_json, JsonValue};
pub use plan::{build_plan, EncodingPlan};
pub use schema::{canonicalize, CanonicalSchema, Schema, SchemaError};
