use crate::bitstream::{uvarint_len, zigzag, BitWriter};
use crate::json::{json_equal, JsonValue, Real};
use crate::plan::{AdditionalPlan, EncodingPlan, PlanNode, VarIntOffset};

use super::layout::*;
use super::{EncodeError, StringPool};

type Result<T> = std::result::Result<T, EncodeError>;

pub(crate) struct Encoder<'p> {
    pub(crate) plan: Option<&'p EncodingPlan>,
    pub(crate) w: BitWriter,
    pub(crate) pool: StringPool,
    /// Pool length after every string emission, when tracing.
    pub(crate) trace: Option<Vec<usize>>,
}

impl<'p> Encoder<'p> {
    pub(crate) fn new(plan: Option<&'p EncodingPlan>, trace: bool) -> Self {
        Encoder {
            plan,
            w: BitWriter::new(),
            pool: StringPool::new(),
            trace: trace.then(Vec::new),
        }
    }

    fn plan(&self) -> &'p EncodingPlan {
        self.plan.expect("schema-driven node encoded without a plan")
    }

    fn record(&mut self) {
        if let Some(trace) = &mut self.trace {
            trace.push(self.pool.len());
        }
    }

    pub(crate) fn node(&mut self, node: &'p PlanNode, v: &JsonValue) -> Result<()> {
        match node {
            PlanNode::Const(c) => {
                if !json_equal(c, v) {
                    return Err(EncodeError::mismatch("value differs from the schema constant"));
                }
            }
            PlanNode::Choice { values, index_bits } => {
                let index = values
                    .iter()
                    .position(|x| json_equal(x, v))
                    .ok_or_else(|| EncodeError::mismatch("value is not one of the enumerated values"))?;
                self.w.write_bits(index as u64, u32::from(*index_bits));
            }
            PlanNode::BoundedInt {
                min,
                max,
                range_bits,
                scale,
            } => {
                let n = expect_integer(v)?;
                if n < *min || n > *max {
                    return Err(EncodeError::mismatch(format!("integer {n} is outside [{min}, {max}]")));
                }
                let offset = i128::from(n) - i128::from(*min);
                if offset % i128::from(*scale) != 0 {
                    return Err(EncodeError::mismatch(format!(
                        "integer {n} is not a multiple of {scale}"
                    )));
                }
                self.w
                    .write_bits((offset / i128::from(*scale)) as u64, u32::from(*range_bits));
            }
            PlanNode::VarInt { offset, step } => {
                let n = expect_integer(v)?;
                if let Some(step) = step {
                    if i128::from(n) % i128::from(*step) != 0 {
                        return Err(EncodeError::mismatch(format!(
                            "integer {n} is not a multiple of {step}"
                        )));
                    }
                }
                let encoded = match offset {
                    VarIntOffset::Floor(floor) if n >= *floor => (i128::from(n) - i128::from(*floor)) as u64,
                    VarIntOffset::Floor(floor) => {
                        return Err(EncodeError::mismatch(format!("integer {n} is below {floor}")))
                    }
                    VarIntOffset::Ceil(ceil) if n <= *ceil => (i128::from(*ceil) - i128::from(n)) as u64,
                    VarIntOffset::Ceil(ceil) => {
                        return Err(EncodeError::mismatch(format!("integer {n} is above {ceil}")))
                    }
                    VarIntOffset::None => zigzag(n),
                };
                self.w.write_uvarint(encoded);
            }
            PlanNode::Real => {
                let real = v
                    .to_real()
                    .ok_or_else(|| EncodeError::mismatch(format!("expected a number, found {}", v.kind())))?;
                self.real_parts(&real)?;
            }
            PlanNode::String { max_length } => {
                let s = v
                    .as_str()
                    .ok_or_else(|| EncodeError::mismatch(format!("expected a string, found {}", v.kind())))?;
                if let Some(max) = max_length {
                    if s.chars().count() > *max as usize {
                        return Err(EncodeError::mismatch(format!("string is longer than {max} characters")));
                    }
                }
                self.plain_string(s);
            }
            PlanNode::Bool => {
                let b = v
                    .as_bool()
                    .ok_or_else(|| EncodeError::mismatch(format!("expected a boolean, found {}", v.kind())))?;
                self.w.write_bit(b);
            }
            PlanNode::Null => {
                if !matches!(v, JsonValue::Null) {
                    return Err(EncodeError::mismatch(format!("expected null, found {}", v.kind())));
                }
            }
            PlanNode::Array {
                element,
                prefix,
                fixed_count,
                min_count,
                max_count,
            } => {
                let items = v
                    .as_array()
                    .ok_or_else(|| EncodeError::mismatch(format!("expected an array, found {}", v.kind())))?;
                let len = items.len() as u64;
                if len < u64::from(*min_count) {
                    return Err(EncodeError::mismatch(format!("array has fewer than {min_count} items")));
                }
                if let Some(max) = max_count {
                    if len > u64::from(*max) {
                        return Err(EncodeError::mismatch(format!("array has more than {max} items")));
                    }
                }
                if fixed_count.is_none() {
                    self.w.write_uvarint(len - u64::from(*min_count));
                }
                for (i, item) in items.iter().enumerate() {
                    let plan = prefix.get(i).unwrap_or(element);
                    self.node(plan, item).map_err(|e| e.within(&i.to_string()))?;
                }
            }
            PlanNode::Object {
                required,
                optional,
                additional,
            } => {
                let map = v
                    .as_object()
                    .ok_or_else(|| EncodeError::mismatch(format!("expected an object, found {}", v.kind())))?;
                for (key, _) in optional {
                    self.w.write_bit(map.contains_key(key));
                }
                for (key, plan) in required {
                    let value = map
                        .get(key)
                        .ok_or_else(|| EncodeError::mismatch(format!("missing required property {key:?}")))?;
                    self.node(plan, value).map_err(|e| e.within(key))?;
                }
                for (key, plan) in optional {
                    if let Some(value) = map.get(key) {
                        self.node(plan, value).map_err(|e| e.within(key))?;
                    }
                }
                let declared = |k: &str| {
                    required.binary_search_by(|(r, _)| r.as_str().cmp(k)).is_ok()
                        || optional.binary_search_by(|(o, _)| o.as_str().cmp(k)).is_ok()
                };
                let extra: Vec<(&String, &JsonValue)> = map.iter().filter(|(k, _)| !declared(k)).collect();
                match additional {
                    AdditionalPlan::Closed => {
                        if let Some((key, _)) = extra.first() {
                            return Err(EncodeError::mismatch("additional properties are not allowed").within(key));
                        }
                    }
                    AdditionalPlan::Open(plan) => {
                        self.w.write_uvarint(extra.len() as u64);
                        for (key, value) in extra {
                            self.plain_string(key);
                            self.node(plan, value).map_err(|e| e.within(key))?;
                        }
                    }
                }
            }
            PlanNode::Union { branches, tag_bits } => {
                let schema = self.plan().schema();
                let tag = branches
                    .iter()
                    .position(|(guard, _)| schema.validate_node(guard, v))
                    .ok_or_else(|| EncodeError::mismatch("value matches no union branch"))?;
                self.w.write_bits(tag as u64, u32::from(*tag_bits));
                self.node(&branches[tag].1, v)?;
            }
            PlanNode::Any => self.any(v)?,
            PlanNode::Ref(name) => {
                let target = self
                    .plan()
                    .definition(name)
                    .expect("plan references are resolved at build time");
                self.node(target, v)?;
            }
        }
        Ok(())
    }

    fn real_parts(&mut self, real: &Real) -> Result<()> {
        let mantissa = real
            .mantissa_i64()
            .ok_or_else(|| EncodeError::unsupported("number has more significant digits than fit in 64 bits"))?;
        self.w.write_uvarint(zigzag(mantissa));
        self.w.write_uvarint(zigzag(i64::from(real.exponent())));
        Ok(())
    }

    /// Schema-driven string: `uvarint(0) uvarint(index)` for a back
    /// reference, otherwise `uvarint(len + 1)` followed by the bytes.
    pub(crate) fn plain_string(&mut self, s: &str) {
        let literal_cost = uvarint_len(s.len() as u64 + 1) + s.len();
        match self.pool.lookup(s) {
            Some(index) if 1 + uvarint_len(u64::from(index)) < literal_cost => {
                self.w.write_uvarint(0);
                self.w.write_uvarint(u64::from(index));
            }
            _ => {
                self.w.write_uvarint(s.len() as u64 + 1);
                self.w.write_bytes(s.as_bytes());
                self.pool.insert(s);
            }
        }
        self.record();
    }

    fn head(&mut self, major: u8, value: u64) {
        if value <= SMALL_MAX {
            self.w.write_bits(u64::from(tag(major, value as u8)), 8);
        } else {
            self.w.write_bits(u64::from(tag(major, SMALL_VARINT)), 8);
            self.w.write_uvarint(value);
        }
    }

    fn any_string(&mut self, s: &str) {
        let len = s.len() as u64;
        let literal_cost = if len <= SMALL_MAX { 1 } else { 1 + uvarint_len(len) } + s.len();
        match self.pool.lookup(s) {
            Some(index) if 1 + uvarint_len(u64::from(index)) < literal_cost => {
                self.w.write_bits(u64::from(tag(MAJOR_STRING, SMALL_BACKREF)), 8);
                self.w.write_uvarint(u64::from(index));
            }
            _ => {
                self.head(MAJOR_STRING, len);
                self.w.write_bytes(s.as_bytes());
                self.pool.insert(s);
            }
        }
        self.record();
    }

    /// Self-describing layout used by the wildcard plan.
    pub(crate) fn any(&mut self, v: &JsonValue) -> Result<()> {
        match v {
            JsonValue::Null => self.head(MAJOR_SIMPLE, SIMPLE_NULL),
            JsonValue::Bool(b) => self.head(MAJOR_SIMPLE, if *b { SIMPLE_TRUE } else { SIMPLE_FALSE }),
            JsonValue::Integer(n) => self.any_integer(*n),
            JsonValue::Real(r) => match r.to_i64() {
                Some(n) => self.any_integer(n),
                None => {
                    self.head(MAJOR_REAL, 0);
                    self.real_parts(r)?;
                }
            },
            JsonValue::String(s) => self.any_string(s),
            JsonValue::Array(items) => {
                self.head(MAJOR_ARRAY, items.len() as u64);
                for (i, item) in items.iter().enumerate() {
                    self.any(item).map_err(|e| e.within(&i.to_string()))?;
                }
            }
            JsonValue::Object(map) => {
                self.head(MAJOR_OBJECT, map.len() as u64);
                for (key, value) in map {
                    self.any_string(key);
                    self.any(value).map_err(|e| e.within(key))?;
                }
            }
        }
        Ok(())
    }

    fn any_integer(&mut self, n: i64) {
        if n >= 0 {
            self.head(MAJOR_UINT, n as u64);
        } else {
            // -1 - n never overflows for negative n
            self.head(MAJOR_NEGINT, (-1 - n) as u64);
        }
    }
}

fn expect_integer(v: &JsonValue) -> Result<i64> {
    v.as_i64().ok_or_else(|| {
        EncodeError::mismatch(match v {
            JsonValue::Real(_) => "expected an integer, found a non-integral number".to_owned(),
            other => format!("expected an integer, found {}", other.kind()),
        })
    })
}
