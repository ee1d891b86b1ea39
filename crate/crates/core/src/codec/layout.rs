//! Tag byte layout for self-describing values: major type in the top three
//! bits, a small argument in the low five.

pub const MAJOR_UINT: u8 = 0;
pub const MAJOR_NEGINT: u8 = 1;
pub const MAJOR_STRING: u8 = 2;
pub const MAJOR_ARRAY: u8 = 3;
pub const MAJOR_OBJECT: u8 = 4;
pub const MAJOR_SIMPLE: u8 = 5;
pub const MAJOR_REAL: u8 = 6;
pub const MAJOR_RESERVED: u8 = 7;

/// Largest argument stored inline in the tag.
pub const SMALL_MAX: u64 = 23;
/// The argument follows as a uvarint.
pub const SMALL_VARINT: u8 = 24;
/// String only: a uvarint pool index follows.
pub const SMALL_BACKREF: u8 = 31;

pub const SIMPLE_FALSE: u64 = 0;
pub const SIMPLE_TRUE: u64 = 1;
pub const SIMPLE_NULL: u64 = 2;

pub const fn tag(major: u8, small: u8) -> u8 {
    (major << 5) | small
}
