use crate::bitstream::{unzigzag, BitReader};
use crate::json::{JsonValue, Object, Real};
use crate::plan::{AdditionalPlan, EncodingPlan, PlanNode, VarIntOffset};

use super::layout::*;
use super::{DecodeError, StringPool};

type Result<T> = std::result::Result<T, DecodeError>;

/// Container nesting accepted while decoding.
pub const MAX_DECODE_DEPTH: usize = 512;

pub(crate) struct Decoder<'p, 'b> {
    pub(crate) plan: Option<&'p EncodingPlan>,
    pub(crate) r: BitReader<'b>,
    pub(crate) pool: StringPool,
    pub(crate) trace: Option<Vec<usize>>,
    depth: usize,
}

impl<'p, 'b> Decoder<'p, 'b> {
    pub(crate) fn new(plan: Option<&'p EncodingPlan>, r: BitReader<'b>, trace: bool) -> Self {
        Decoder {
            plan,
            r,
            pool: StringPool::new(),
            trace: trace.then(Vec::new),
            depth: 0,
        }
    }

    fn plan(&self) -> &'p EncodingPlan {
        self.plan.expect("schema-driven node decoded without a plan")
    }

    fn record(&mut self) {
        if let Some(trace) = &mut self.trace {
            trace.push(self.pool.len());
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DECODE_DEPTH {
            return Err(DecodeError::TooDeep);
        }
        Ok(())
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    fn count(&mut self) -> Result<u64> {
        let n = self.r.read_uvarint()?;
        if n > u64::from(u32::MAX) {
            return Err(DecodeError::LengthOutOfRange { len: n });
        }
        Ok(n)
    }

    /// Reads `len` bytes after checking they can exist, so a corrupt length
    /// never drives a huge allocation.
    fn utf8(&mut self, len: u64) -> Result<String> {
        if len.saturating_mul(8) > self.r.remaining_bits() {
            return Err(DecodeError::Truncated);
        }
        let bytes = self.r.read_bytes(len as usize)?;
        String::from_utf8(bytes).map_err(|_| DecodeError::InvalidUtf8)
    }

    fn pooled(&self, index: u64) -> Result<String> {
        self.pool
            .get(index)
            .map(str::to_owned)
            .ok_or(DecodeError::PoolIndexOutOfRange {
                index,
                len: self.pool.len(),
            })
    }

    pub(crate) fn node(&mut self, node: &'p PlanNode) -> Result<JsonValue> {
        Ok(match node {
            PlanNode::Const(c) => c.clone(),
            PlanNode::Choice { values, index_bits } => {
                let index = self.r.read_bits(u32::from(*index_bits))?;
                values
                    .get(index as usize)
                    .cloned()
                    .ok_or(DecodeError::InvalidChoiceIndex {
                        index,
                        count: values.len(),
                    })?
            }
            PlanNode::BoundedInt {
                min,
                max,
                range_bits,
                scale,
            } => {
                let offset = self.r.read_bits(u32::from(*range_bits))?;
                let n = i128::from(*min) + i128::from(offset) * i128::from(*scale);
                if n > i128::from(*max) {
                    return Err(DecodeError::IntegerOutOfRange);
                }
                JsonValue::Integer(n as i64)
            }
            PlanNode::VarInt { offset, step } => {
                let raw = self.r.read_uvarint()?;
                let n = match offset {
                    VarIntOffset::Floor(floor) => i128::from(*floor) + i128::from(raw),
                    VarIntOffset::Ceil(ceil) => i128::from(*ceil) - i128::from(raw),
                    VarIntOffset::None => i128::from(unzigzag(raw)),
                };
                let n = i64::try_from(n).map_err(|_| DecodeError::IntegerOutOfRange)?;
                if let Some(step) = step {
                    if n % step != 0 {
                        return Err(DecodeError::IntegerOutOfRange);
                    }
                }
                JsonValue::Integer(n)
            }
            PlanNode::Real => JsonValue::Real(self.real_parts()?),
            PlanNode::String { max_length } => {
                let s = self.plain_string()?;
                if let Some(max) = max_length {
                    if s.chars().count() > *max as usize {
                        return Err(DecodeError::LengthOutOfRange {
                            len: s.chars().count() as u64,
                        });
                    }
                }
                JsonValue::String(s)
            }
            PlanNode::Bool => JsonValue::Bool(self.r.read_bit()?),
            PlanNode::Null => JsonValue::Null,
            PlanNode::Array {
                element,
                prefix,
                fixed_count,
                min_count,
                max_count,
            } => {
                let len = match fixed_count {
                    Some(n) => u64::from(*n),
                    None => {
                        let extra = self.count()?;
                        let len = extra + u64::from(*min_count);
                        if max_count.is_some_and(|m| len > u64::from(m)) || len > u64::from(u32::MAX) {
                            return Err(DecodeError::LengthOutOfRange { len });
                        }
                        len
                    }
                };
                self.enter()?;
                let mut items = Vec::new();
                for i in 0..len as usize {
                    let plan = prefix.get(i).unwrap_or(element);
                    items.push(self.node(plan)?);
                }
                self.leave();
                JsonValue::Array(items)
            }
            PlanNode::Object {
                required,
                optional,
                additional,
            } => {
                self.enter()?;
                let mut present = Vec::with_capacity(optional.len());
                for _ in optional {
                    present.push(self.r.read_bit()?);
                }
                let mut map = Object::new();
                for (key, plan) in required {
                    let value = self.node(plan)?;
                    map.insert(key.clone(), value);
                }
                for ((key, plan), here) in optional.iter().zip(present) {
                    if here {
                        let value = self.node(plan)?;
                        map.insert(key.clone(), value);
                    }
                }
                if let AdditionalPlan::Open(plan) = additional {
                    let n = self.count()?;
                    for _ in 0..n {
                        let key = self.plain_string()?;
                        if map.contains_key(&key) {
                            return Err(DecodeError::DuplicateKey { key });
                        }
                        let value = self.node(plan)?;
                        map.insert(key, value);
                    }
                }
                self.leave();
                JsonValue::Object(map)
            }
            PlanNode::Union { branches, tag_bits } => {
                let tag = self.r.read_bits(u32::from(*tag_bits))?;
                let (_, plan) = branches.get(tag as usize).ok_or(DecodeError::InvalidUnionTag {
                    tag,
                    count: branches.len(),
                })?;
                self.node(plan)?
            }
            PlanNode::Any => self.any()?,
            PlanNode::Ref(name) => {
                let target = self
                    .plan()
                    .definition(name)
                    .expect("plan references are resolved at build time");
                self.enter()?;
                let value = self.node(target)?;
                self.leave();
                value
            }
        })
    }

    fn real_parts(&mut self) -> Result<Real> {
        let mantissa = unzigzag(self.r.read_uvarint()?);
        let exponent = unzigzag(self.r.read_uvarint()?);
        Real::from_parts(mantissa, exponent).map_err(|_| DecodeError::InvalidNumber)
    }

    pub(crate) fn plain_string(&mut self) -> Result<String> {
        let head = self.r.read_uvarint()?;
        let s = if head == 0 {
            let index = self.r.read_uvarint()?;
            self.pooled(index)?
        } else {
            let s = self.utf8(head - 1)?;
            self.pool.insert(&s);
            s
        };
        self.record();
        Ok(s)
    }

    /// Reads a tag byte and its argument as (major, small, argument).
    fn head(&mut self) -> Result<(u8, u8, u64)> {
        let byte = self.r.read_bits(8)? as u8;
        let (major, small) = (byte >> 5, byte & 0x1F);
        if major == MAJOR_RESERVED {
            return Err(DecodeError::ReservedMajorType);
        }
        let value = match small {
            0..=23 => u64::from(small),
            SMALL_VARINT => self.r.read_uvarint()?,
            SMALL_BACKREF if major == MAJOR_STRING => self.r.read_uvarint()?,
            _ => return Err(DecodeError::InvalidTag { tag: byte }),
        };
        Ok((major, small, value))
    }

    fn any_string_body(&mut self, small: u8, value: u64) -> Result<String> {
        let s = if small == SMALL_BACKREF {
            self.pooled(value)?
        } else {
            let s = self.utf8(value)?;
            self.pool.insert(&s);
            s
        };
        self.record();
        Ok(s)
    }

    pub(crate) fn any(&mut self) -> Result<JsonValue> {
        let (major, small, value) = self.head()?;
        Ok(match major {
            MAJOR_UINT => JsonValue::Integer(i64::try_from(value).map_err(|_| DecodeError::IntegerOutOfRange)?),
            MAJOR_NEGINT => {
                let m = i64::try_from(value).map_err(|_| DecodeError::IntegerOutOfRange)?;
                JsonValue::Integer(-1 - m)
            }
            MAJOR_STRING => JsonValue::String(self.any_string_body(small, value)?),
            MAJOR_ARRAY => {
                if value > u64::from(u32::MAX) {
                    return Err(DecodeError::LengthOutOfRange { len: value });
                }
                self.enter()?;
                let mut items = Vec::new();
                for _ in 0..value {
                    items.push(self.any()?);
                }
                self.leave();
                JsonValue::Array(items)
            }
            MAJOR_OBJECT => {
                if value > u64::from(u32::MAX) {
                    return Err(DecodeError::LengthOutOfRange { len: value });
                }
                self.enter()?;
                let mut map = Object::new();
                for _ in 0..value {
                    let byte = self.r.read_bits(8)? as u8;
                    let (major, small) = (byte >> 5, byte & 0x1F);
                    if major != MAJOR_STRING {
                        return Err(DecodeError::InvalidTag { tag: byte });
                    }
                    let arg = match small {
                        0..=23 => u64::from(small),
                        SMALL_VARINT | SMALL_BACKREF => self.r.read_uvarint()?,
                        _ => return Err(DecodeError::InvalidTag { tag: byte }),
                    };
                    let key = self.any_string_body(small, arg)?;
                    if map.contains_key(&key) {
                        return Err(DecodeError::DuplicateKey { key });
                    }
                    let item = self.any()?;
                    map.insert(key, item);
                }
                self.leave();
                JsonValue::Object(map)
            }
            MAJOR_SIMPLE => match value {
                SIMPLE_FALSE => JsonValue::Bool(false),
                SIMPLE_TRUE => JsonValue::Bool(true),
                SIMPLE_NULL => JsonValue::Null,
                _ => return Err(DecodeError::InvalidTag { tag: tag(major, small) }),
            },
            MAJOR_REAL if small == 0 => JsonValue::Real(self.real_parts()?),
            _ => return Err(DecodeError::InvalidTag { tag: tag(major, small) }),
        })
    }
}
