//! Unaligned, MSB-first bit writer and reader, with LEB128 varints and
//! zigzag mapping.
//!
//! Varints are laid into the stream as whole 8-bit groups at whatever bit
//! offset the cursor happens to be on; they are not re-packed.

use thiserror::Error;

/// A LEB128 varint never needs more than ten 7-bit groups for a `u64`.
pub const MAX_VARINT_GROUPS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum BitError {
    #[error("read of {wanted} bits at bit {at} runs past the end of a {len_bits}-bit stream")]
    Truncated { at: u64, wanted: u32, len_bits: u64 },
    #[error("varint does not fit in 64 bits")]
    VarintOverflow,
    #[error("{remaining} bits left over after the last value")]
    TrailingData { remaining: u64 },
    #[error("padding bits are not zero")]
    NonZeroPadding,
}

#[derive(Debug, Default, Clone)]
pub struct BitWriter {
    buffer: Vec<u8>,
    bit_cursor: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of bits written so far.
    pub fn bit_len(&self) -> u64 {
        self.bit_cursor
    }

    /// Appends the low `width` bits of `value`, most significant first.
    ///
    /// `value` must be below `2^width`.
    pub fn write_bits(&mut self, value: u64, width: u32) {
        assert!(width <= 64, "bit width {width} exceeds 64");
        debug_assert!(
            width == 64 || value >> width == 0,
            "value {value} does not fit in {width} bits"
        );
        let mut remaining = width;
        while remaining > 0 {
            let used = (self.bit_cursor % 8) as u32;
            if used == 0 {
                self.buffer.push(0);
            }
            let free = 8 - used;
            let take = free.min(remaining);
            let chunk = ((value >> (remaining - take)) & ((1u64 << take) - 1)) as u8;
            *self.buffer.last_mut().expect("byte pushed above") |= chunk << (free - take);
            remaining -= take;
            self.bit_cursor += u64::from(take);
        }
    }

    pub fn write_bit(&mut self, bit: bool) {
        self.write_bits(u64::from(bit), 1);
    }

    pub fn write_bytes(&mut self, bytes: &[u8]) {
        if self.bit_cursor.is_multiple_of(8) {
            self.buffer.extend_from_slice(bytes);
            self.bit_cursor += 8 * bytes.len() as u64;
        } else {
            for &b in bytes {
                self.write_bits(u64::from(b), 8);
            }
        }
    }

    /// LEB128: little-endian 7-bit groups, high bit set on all but the last.
    pub fn write_uvarint(&mut self, mut value: u64) {
        loop {
            let group = (value & 0x7f) as u8;
            value >>= 7;
            if value == 0 {
                self.write_bits(u64::from(group), 8);
                return;
            }
            self.write_bits(u64::from(group | 0x80), 8);
        }
    }

    /// Pads with zero bits to the next byte boundary and returns the bytes.
    pub fn finish(self) -> Vec<u8> {
        // Unused low bits of the last byte were never set.
        self.buffer
    }
}

#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    buffer: &'a [u8],
    bit_cursor: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(buffer: &'a [u8]) -> Self {
        BitReader { buffer, bit_cursor: 0 }
    }

    pub fn bit_position(&self) -> u64 {
        self.bit_cursor
    }

    fn len_bits(&self) -> u64 {
        self.buffer.len() as u64 * 8
    }

    pub fn remaining_bits(&self) -> u64 {
        self.len_bits() - self.bit_cursor
    }

    pub fn read_bits(&mut self, width: u32) -> Result<u64, BitError> {
        assert!(width <= 64, "bit width {width} exceeds 64");
        if u64::from(width) > self.remaining_bits() {
            return Err(BitError::Truncated {
                at: self.bit_cursor,
                wanted: width,
                len_bits: self.len_bits(),
            });
        }
        let mut value = 0u64;
        let mut remaining = width;
        while remaining > 0 {
            let byte = self.buffer[(self.bit_cursor / 8) as usize];
            let used = (self.bit_cursor % 8) as u32;
            let avail = 8 - used;
            let take = avail.min(remaining);
            let chunk = (byte >> (avail - take)) & (((1u16 << take) - 1) as u8);
            value = (value << take) | u64::from(chunk);
            remaining -= take;
            self.bit_cursor += u64::from(take);
        }
        Ok(value)
    }

    pub fn read_bit(&mut self) -> Result<bool, BitError> {
        Ok(self.read_bits(1)? == 1)
    }

    pub fn read_bytes(&mut self, len: usize) -> Result<Vec<u8>, BitError> {
        if (len as u64).saturating_mul(8) > self.remaining_bits() {
            return Err(BitError::Truncated {
                at: self.bit_cursor,
                wanted: u32::try_from(len.saturating_mul(8)).unwrap_or(u32::MAX),
                len_bits: self.len_bits(),
            });
        }
        if self.bit_cursor.is_multiple_of(8) {
            let start = (self.bit_cursor / 8) as usize;
            self.bit_cursor += 8 * len as u64;
            return Ok(self.buffer[start..start + len].to_vec());
        }
        (0..len).map(|_| self.read_bits(8).map(|b| b as u8)).collect()
    }

    pub fn read_uvarint(&mut self) -> Result<u64, BitError> {
        let mut value = 0u64;
        for group_index in 0..MAX_VARINT_GROUPS {
            let group = self.read_bits(8)?;
            let payload = group & 0x7f;
            let shift = 7 * group_index as u32;
            if group_index == MAX_VARINT_GROUPS - 1 && payload > 1 {
                return Err(BitError::VarintOverflow);
            }
            value |= payload << shift;
            if group & 0x80 == 0 {
                return Ok(value);
            }
        }
        Err(BitError::VarintOverflow)
    }

    /// Checks that only zero padding (fewer than 8 bits) remains.
    pub fn finish(self) -> Result<(), BitError> {
        let remaining = self.remaining_bits();
        if remaining >= 8 {
            return Err(BitError::TrailingData { remaining });
        }
        if remaining > 0 {
            let last = self.buffer[self.buffer.len() - 1];
            if last & ((1u8 << remaining) - 1) != 0 {
                return Err(BitError::NonZeroPadding);
            }
        }
        Ok(())
    }
}

pub fn zigzag(n: i64) -> u64 {
    ((n << 1) ^ (n >> 63)) as u64
}

pub fn unzigzag(z: u64) -> i64 {
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

/// Byte length of the LEB128 encoding of `value`.
pub fn uvarint_len(value: u64) -> usize {
    let bits = 64 - value.leading_zeros() as usize;
    bits.div_ceil(7).max(1)
}

/// Bits needed to index `count` distinct alternatives: `ceil(log2(count))`.
pub fn bits_for(count: u128) -> u32 {
    if count <= 1 {
        0
    } else {
        128 - (count - 1).leading_zeros()
    }
}
