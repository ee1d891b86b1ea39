//! Lossless JSON document model: parsing, minification and value equality.

mod number;
mod parse;
mod value;
mod write;

pub use number::{NumberError, Real};
pub use parse::{parse_json, parse_json_bytes, ParseError};
pub use value::{json_equal, JsonValue, Object};
pub use write::{minify, to_pretty_string};
