//! Mapping rules: compile a canonical schema into an [`EncodingPlan`].
//!
//! The plan fixes the wire layout bit for bit. Enum values are indexed in
//! declaration order, optional properties get a presence bitmap in key
//! order, and union branches are tagged with `ceil(log2(K))` bits.

use std::collections::{BTreeMap, BTreeSet};

use crate::bitstream::bits_for;
use crate::json::{JsonValue, Object};
use crate::schema::{Additional, CanonicalSchema, Schema};

/// How an integer with at most one bound is laid out as a varint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarIntOffset {
    /// `uvarint(v - floor)`
    Floor(i64),
    /// `uvarint(ceil - v)`
    Ceil(i64),
    /// `uvarint(zigzag(v))`
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdditionalPlan {
    Closed,
    Open(Box<PlanNode>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanNode {
    /// The value is implied by the schema; nothing is written.
    Const(JsonValue),
    Choice {
        values: Vec<JsonValue>,
        index_bits: u8,
    },
    /// `(v - min) / scale` in `range_bits` bits. `min` is the first multiple
    /// of `scale` at or above the schema minimum.
    BoundedInt {
        min: i64,
        max: i64,
        range_bits: u8,
        scale: i64,
    },
    VarInt {
        offset: VarIntOffset,
        /// `multipleOf`, checked at encode time only.
        step: Option<i64>,
    },
    Real,
    String {
        max_length: Option<u32>,
    },
    Bool,
    Null,
    Array {
        element: Box<PlanNode>,
        prefix: Vec<PlanNode>,
        fixed_count: Option<u32>,
        min_count: u32,
        max_count: Option<u32>,
    },
    Object {
        required: Vec<(String, PlanNode)>,
        optional: Vec<(String, PlanNode)>,
        additional: AdditionalPlan,
    },
    Union {
        branches: Vec<(CanonicalSchema, PlanNode)>,
        tag_bits: u8,
    },
    /// Self-describing layout; see [`crate::codec::encode_any`].
    Any,
    Ref(String),
}

/// Immutable compiled plan: a root node, a table of named nodes for
/// recursive schemas, and the canonical schema that union guards are
/// evaluated against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingPlan {
    root: PlanNode,
    definitions: BTreeMap<String, PlanNode>,
    schema: Schema,
}

impl EncodingPlan {
    /// The schema-less plan.
    pub fn any() -> Self {
        build_plan(&Schema::any())
    }

    pub fn root(&self) -> &PlanNode {
        &self.root
    }

    pub fn definition(&self, name: &str) -> Option<&PlanNode> {
        self.definitions.get(name)
    }

    pub fn definitions(&self) -> &BTreeMap<String, PlanNode> {
        &self.definitions
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn is_any(&self) -> bool {
        self.root == PlanNode::Any
    }

    /// Worst-case payload size in bits, when it is statically known.
    pub fn bit_bound(&self) -> Option<u64> {
        self.node_bit_bound(&self.root, &mut BTreeSet::new())
    }

    fn node_bit_bound<'a>(&'a self, node: &'a PlanNode, active: &mut BTreeSet<&'a str>) -> Option<u64> {
        match node {
            PlanNode::Const(_) | PlanNode::Null => Some(0),
            PlanNode::Choice { index_bits, .. } => Some(u64::from(*index_bits)),
            PlanNode::BoundedInt { range_bits, .. } => Some(u64::from(*range_bits)),
            PlanNode::Bool => Some(1),
            PlanNode::VarInt { .. } | PlanNode::Real | PlanNode::String { .. } | PlanNode::Any => None,
            PlanNode::Array {
                element,
                prefix,
                fixed_count,
                ..
            } => {
                let count = (*fixed_count)? as usize;
                let mut total = 0u64;
                for p in prefix.iter().take(count) {
                    total = total.checked_add(self.node_bit_bound(p, active)?)?;
                }
                let rest = count.saturating_sub(prefix.len()) as u64;
                if rest > 0 {
                    total = total.checked_add(rest.checked_mul(self.node_bit_bound(element, active)?)?)?;
                }
                Some(total)
            }
            PlanNode::Object {
                required,
                optional,
                additional,
            } => {
                if *additional != AdditionalPlan::Closed {
                    return None;
                }
                let mut total = optional.len() as u64;
                for (_, p) in required.iter().chain(optional) {
                    total = total.checked_add(self.node_bit_bound(p, active)?)?;
                }
                Some(total)
            }
            PlanNode::Union { branches, tag_bits } => {
                let mut widest = 0u64;
                for (_, p) in branches {
                    widest = widest.max(self.node_bit_bound(p, active)?);
                }
                Some(u64::from(*tag_bits) + widest)
            }
            PlanNode::Ref(name) => {
                if !active.insert(name) {
                    return None;
                }
                let bound = self.node_bit_bound(&self.definitions[name.as_str()], active);
                active.remove(name.as_str());
                bound
            }
        }
    }

    /// Plan tree as JSON, for auditing.
    pub fn to_json(&self) -> JsonValue {
        let mut out = Object::new();
        out.insert("root".into(), node_to_json(&self.root));
        if !self.definitions.is_empty() {
            let defs = self
                .definitions
                .iter()
                .map(|(k, v)| (k.clone(), node_to_json(v)))
                .collect();
            out.insert("definitions".into(), JsonValue::Object(defs));
        }
        JsonValue::Object(out)
    }
}

/// Free-function form of [`EncodingPlan::bit_bound`].
pub fn plan_bit_bound(plan: &EncodingPlan) -> Option<u64> {
    plan.bit_bound()
}

/// Compiles a canonical schema. Total: every canonical node maps to exactly
/// one plan node.
pub fn build_plan(schema: &Schema) -> EncodingPlan {
    EncodingPlan {
        root: build_node(schema.root()),
        definitions: schema
            .definitions()
            .iter()
            .map(|(name, node)| (name.clone(), build_node(node)))
            .collect(),
        schema: schema.clone(),
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn build_node(node: &CanonicalSchema) -> PlanNode {
    match node {
        CanonicalSchema::Any => PlanNode::Any,
        CanonicalSchema::Enum(values) if values.len() == 1 => PlanNode::Const(values[0].clone()),
        CanonicalSchema::Enum(values) => PlanNode::Choice {
            index_bits: bits_for(values.len() as u128) as u8,
            values: values.clone(),
        },
        CanonicalSchema::Integer {
            minimum: Some(min),
            maximum: Some(max),
            multiple_of,
        } => {
            let scale = multiple_of.unwrap_or(1);
            let step = i128::from(scale);
            let first = -floor_div(-i128::from(*min), step) * step;
            let last = floor_div(i128::from(*max), step) * step;
            let slots = ((last - first) / step + 1) as u128;
            PlanNode::BoundedInt {
                min: first as i64,
                max: last as i64,
                range_bits: bits_for(slots) as u8,
                scale,
            }
        }
        CanonicalSchema::Integer {
            minimum,
            maximum,
            multiple_of,
        } => PlanNode::VarInt {
            offset: match (minimum, maximum) {
                (Some(min), _) => VarIntOffset::Floor(*min),
                (_, Some(max)) => VarIntOffset::Ceil(*max),
                _ => VarIntOffset::None,
            },
            step: *multiple_of,
        },
        CanonicalSchema::Real => PlanNode::Real,
        CanonicalSchema::String { max_length } => PlanNode::String {
            max_length: *max_length,
        },
        CanonicalSchema::Boolean => PlanNode::Bool,
        CanonicalSchema::Null => PlanNode::Null,
        CanonicalSchema::Array {
            items,
            prefix,
            min_items,
            max_items,
        } => PlanNode::Array {
            element: Box::new(build_node(items)),
            prefix: prefix.iter().map(build_node).collect(),
            fixed_count: (*max_items == Some(*min_items)).then_some(*min_items),
            min_count: *min_items,
            max_count: *max_items,
        },
        CanonicalSchema::Object {
            required,
            optional,
            additional,
        } => PlanNode::Object {
            required: required.iter().map(|(k, v)| (k.clone(), build_node(v))).collect(),
            optional: optional.iter().map(|(k, v)| (k.clone(), build_node(v))).collect(),
            additional: match additional {
                Additional::Closed => AdditionalPlan::Closed,
                Additional::Open(extra) => AdditionalPlan::Open(Box::new(build_node(extra))),
            },
        },
        CanonicalSchema::Union(branches) => PlanNode::Union {
            tag_bits: bits_for(branches.len() as u128) as u8,
            branches: branches.iter().map(|b| (b.clone(), build_node(b))).collect(),
        },
        CanonicalSchema::Ref(name) => PlanNode::Ref(name.clone()),
    }
}

fn kind(name: &str) -> Object {
    let mut out = Object::new();
    out.insert("kind".into(), name.into());
    out
}

fn node_to_json(node: &PlanNode) -> JsonValue {
    let out = match node {
        PlanNode::Const(value) => {
            let mut o = kind("const");
            o.insert("value".into(), value.clone());
            o
        }
        PlanNode::Choice { values, index_bits } => {
            let mut o = kind("choice");
            o.insert("indexBits".into(), i64::from(*index_bits).into());
            o.insert("values".into(), JsonValue::Array(values.clone()));
            o
        }
        PlanNode::BoundedInt {
            min,
            max,
            range_bits,
            scale,
        } => {
            let mut o = kind("boundedInt");
            o.insert("min".into(), (*min).into());
            o.insert("max".into(), (*max).into());
            o.insert("rangeBits".into(), i64::from(*range_bits).into());
            o.insert("scale".into(), (*scale).into());
            o
        }
        PlanNode::VarInt { offset, step } => {
            let mut o = kind("varint");
            match offset {
                VarIntOffset::Floor(b) => {
                    o.insert("offset".into(), "floor".into());
                    o.insert("base".into(), (*b).into());
                }
                VarIntOffset::Ceil(b) => {
                    o.insert("offset".into(), "ceil".into());
                    o.insert("base".into(), (*b).into());
                }
                VarIntOffset::None => {
                    o.insert("offset".into(), "zigzag".into());
                }
            }
            if let Some(step) = step {
                o.insert("multipleOf".into(), (*step).into());
            }
            o
        }
        PlanNode::Real => kind("real"),
        PlanNode::String { max_length } => {
            let mut o = kind("string");
            if let Some(max) = max_length {
                o.insert("maxLength".into(), i64::from(*max).into());
            }
            o
        }
        PlanNode::Bool => kind("bool"),
        PlanNode::Null => kind("null"),
        PlanNode::Array {
            element,
            prefix,
            fixed_count,
            min_count,
            max_count,
        } => {
            let mut o = kind("array");
            o.insert("element".into(), node_to_json(element));
            if !prefix.is_empty() {
                o.insert(
                    "prefix".into(),
                    JsonValue::Array(prefix.iter().map(node_to_json).collect()),
                );
            }
            match fixed_count {
                Some(n) => {
                    o.insert("fixedCount".into(), i64::from(*n).into());
                }
                None => {
                    o.insert("minCount".into(), i64::from(*min_count).into());
                    if let Some(max) = max_count {
                        o.insert("maxCount".into(), i64::from(*max).into());
                    }
                }
            }
            o
        }
        PlanNode::Object {
            required,
            optional,
            additional,
        } => {
            let fields = |list: &[(String, PlanNode)]| {
                JsonValue::Array(
                    list.iter()
                        .map(|(k, p)| {
                            let mut f = Object::new();
                            f.insert("key".into(), k.as_str().into());
                            f.insert("plan".into(), node_to_json(p));
                            JsonValue::Object(f)
                        })
                        .collect(),
                )
            };
            let mut o = kind("object");
            o.insert("required".into(), fields(required));
            o.insert("optional".into(), fields(optional));
            o.insert(
                "additional".into(),
                match additional {
                    AdditionalPlan::Closed => "closed".into(),
                    AdditionalPlan::Open(p) => node_to_json(p),
                },
            );
            o
        }
        PlanNode::Union { branches, tag_bits } => {
            let mut o = kind("union");
            o.insert("tagBits".into(), i64::from(*tag_bits).into());
            o.insert(
                "branches".into(),
                JsonValue::Array(
                    branches
                        .iter()
                        .map(|(guard, p)| {
                            let mut b = Object::new();
                            let guard = Schema::new(guard.clone(), BTreeMap::new())
                                .map(|s| s.to_json())
                                .unwrap_or_else(|_| guard_json_with_refs(guard));
                            b.insert("guard".into(), guard);
                            b.insert("plan".into(), node_to_json(p));
                            JsonValue::Object(b)
                        })
                        .collect(),
                ),
            );
            o
        }
        PlanNode::Any => kind("any"),
        PlanNode::Ref(name) => {
            let mut o = kind("ref");
            o.insert("name".into(), name.as_str().into());
            o
        }
    };
    JsonValue::Object(out)
}

/// Guards that mention references cannot stand alone as a `Schema`; render
/// them with placeholder definitions instead.
fn guard_json_with_refs(guard: &CanonicalSchema) -> JsonValue {
    let mut names = BTreeMap::new();
    crate::schema::walk(guard, &mut |n| {
        if let CanonicalSchema::Ref(name) = n {
            names.insert(name.clone(), CanonicalSchema::Any);
        }
    });
    match Schema::new(guard.clone(), names).map(|s| s.to_json()) {
        Ok(JsonValue::Object(mut o)) => {
            o.shift_remove("$defs");
            JsonValue::Object(o)
        }
        _ => JsonValue::Null,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::parse_json;
    use crate::schema::canonicalize;

    fn plan(text: &str) -> EncodingPlan {
        build_plan(&canonicalize(&parse_json(text).unwrap()).unwrap())
    }

    #[test]
    fn wildcard_is_any_plan() {
        assert_eq!(plan("{}").root(), &PlanNode::Any);
        assert!(plan("true").is_any());
        assert_eq!(plan("{}").bit_bound(), None);
    }

    #[test]
    fn const_takes_no_bits() {
        let p = plan(r#"{"const":42}"#);
        assert_eq!(p.root(), &PlanNode::Const(42.into()));
        assert_eq!(p.bit_bound(), Some(0));
    }

    #[test]
    fn boolean_enum_is_one_bit_choice() {
        let p = plan(r#"{"enum":[false,true]}"#);
        assert_eq!(
            p.root(),
            &PlanNode::Choice {
                values: vec![false.into(), true.into()],
                index_bits: 1
            }
        );
    }

    #[test]
    fn choice_of_256_values_takes_8_bits() {
        let values: Vec<String> = (0..256).map(|i| i.to_string()).collect();
        let p = plan(&format!(r#"{{"enum":[{}]}}"#, values.join(",")));
        assert_eq!(p.bit_bound(), Some(8));
        let p = plan(&format!(r#"{{"enum":[{},-1]}}"#, values.join(",")));
        assert_eq!(p.bit_bound(), Some(9));
    }

    #[test]
    fn bounded_integer_ranges() {
        assert_eq!(
            plan(r#"{"type":"integer","minimum":0,"maximum":255}"#).root(),
            &PlanNode::BoundedInt {
                min: 0,
                max: 255,
                range_bits: 8,
                scale: 1
            }
        );
        assert_eq!(
            plan(r#"{"type":"integer","minimum":7,"maximum":7}"#).root(),
            &PlanNode::BoundedInt {
                min: 7,
                max: 7,
                range_bits: 0,
                scale: 1
            }
        );
        // multiples of 5 in [1, 23]: 5, 10, 15, 20 -> 4 slots, 2 bits
        assert_eq!(
            plan(r#"{"type":"integer","minimum":1,"maximum":23,"multipleOf":5}"#).root(),
            &PlanNode::BoundedInt {
                min: 5,
                max: 20,
                range_bits: 2,
                scale: 5
            }
        );
        // multiples of 4 in [-9, 9]: -8..8 -> 5 slots, 3 bits
        assert_eq!(
            plan(r#"{"type":"integer","minimum":-9,"maximum":9,"multipleOf":4}"#).root(),
            &PlanNode::BoundedInt {
                min: -8,
                max: 8,
                range_bits: 3,
                scale: 4
            }
        );
        assert_eq!(
            plan(&format!(
                r#"{{"type":"integer","minimum":{},"maximum":{}}}"#,
                i64::MIN,
                i64::MAX
            ))
            .root(),
            &PlanNode::BoundedInt {
                min: i64::MIN,
                max: i64::MAX,
                range_bits: 64,
                scale: 1
            }
        );
    }

    #[test]
    fn half_bounded_integers_use_offsets() {
        let offset = |text: &str| match plan(text).root() {
            PlanNode::VarInt { offset, .. } => *offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(offset(r#"{"type":"integer","minimum":3}"#), VarIntOffset::Floor(3));
        assert_eq!(offset(r#"{"type":"integer","maximum":-3}"#), VarIntOffset::Ceil(-3));
        assert_eq!(offset(r#"{"type":"integer"}"#), VarIntOffset::None);
    }

    #[test]
    fn eight_required_booleans_bound_to_one_byte() {
        let props: Vec<String> = (0..8).map(|i| format!(r#""k{i}":{{"type":"boolean"}}"#)).collect();
        let keys: Vec<String> = (0..8).map(|i| format!(r#""k{i}""#)).collect();
        let p = plan(&format!(
            r#"{{"type":"object","properties":{{{}}},"required":[{}],"additionalProperties":false}}"#,
            props.join(","),
            keys.join(",")
        ));
        // sum over fields: 8 x 1 bit
        assert_eq!(p.bit_bound(), Some(8));
    }

    #[test]
    fn composite_bounds() {
        let p = plan(
            r#"{"type":"array","prefixItems":[{"type":"boolean"},{"enum":[1,2,3]}],"items":{"type":"null"},"minItems":4,"maxItems":4}"#,
        );
        assert_eq!(p.bit_bound(), Some(3));
        let p = plan(
            r#"{"type":"object","properties":{"a":{"type":"boolean"},"b":{"const":1}},"additionalProperties":false}"#,
        );
        // two presence bits + 1 bit for `a`
        assert_eq!(p.bit_bound(), Some(3));
        let p = plan(r#"{"anyOf":[{"type":"boolean"},{"type":"integer","minimum":0,"maximum":15},{"type":"null"}]}"#);
        assert_eq!(p.bit_bound(), Some(2 + 4));
        assert_eq!(plan(r#"{"type":"object"}"#).bit_bound(), None);
        assert_eq!(plan(r#"{"type":"array","items":{"type":"boolean"}}"#).bit_bound(), None);
        let p =
            plan(r##"{"$defs":{"t":{"type":"array","items":{"$ref":"#/$defs/t"},"maxItems":0}},"$ref":"#/$defs/t"}"##);
        assert_eq!(p.bit_bound(), Some(0));
        let p = plan(
            r##"{"$defs":{"t":{"type":"array","items":{"$ref":"#/$defs/t"},"minItems":1,"maxItems":1}},"$ref":"#/$defs/t"}"##,
        );
        assert_eq!(p.bit_bound(), None);
    }

    #[test]
    fn required_and_optional_keep_key_order() {
        let p = plan(r#"{"type":"object","properties":{"b":{},"a":{},"d":{},"c":{}},"required":["d","b"]}"#);
        let PlanNode::Object { required, optional, .. } = p.root() else {
            panic!()
        };
        assert_eq!(required.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>(), ["b", "d"]);
        assert_eq!(optional.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>(), ["a", "c"]);
    }

    #[test]
    fn plan_dump_is_json() {
        let p = plan(
            r##"{"$defs":{"n":{"type":["integer","null"]}},"type":"object","properties":{"x":{"$ref":"#/$defs/n"},"y":{"anyOf":[{"$ref":"#/$defs/n"},{"type":"string"}]}}}"##,
        );
        let dump = crate::json::minify(&p.to_json());
        assert!(dump.contains(r#""kind":"union""#), "{dump}");
        assert!(dump.contains(r#""definitions""#), "{dump}");
        assert!(parse_json(&dump).is_ok());
    }

    #[test]
    fn deterministic() {
        let text = r#"{"type":"object","properties":{"a":{"enum":["x","y","z"]},"b":{"type":"array"}}}"#;
        assert_eq!(plan(text), plan(text));
    }
}
