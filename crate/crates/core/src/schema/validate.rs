use crate::json::{json_equal, JsonValue};

use super::{Additional, CanonicalSchema, Schema};

impl Schema {
    /// Whether `v` satisfies the canonical constraints.
    pub fn validate(&self, v: &JsonValue) -> bool {
        self.validate_node(&self.root, v)
    }

    /// Validates against one node of this schema; references resolve through
    /// this schema's definitions table.
    pub fn validate_node(&self, node: &CanonicalSchema, v: &JsonValue) -> bool {
        match node {
            CanonicalSchema::Any => true,
            CanonicalSchema::Enum(values) => values.iter().any(|x| json_equal(x, v)),
            CanonicalSchema::Integer {
                minimum,
                maximum,
                multiple_of,
            } => v.as_i64().is_some_and(|n| {
                minimum.is_none_or(|min| n >= min)
                    && maximum.is_none_or(|max| n <= max)
                    && multiple_of.is_none_or(|step| i128::from(n) % i128::from(step) == 0)
            }),
            CanonicalSchema::Real => v.is_number(),
            CanonicalSchema::String { max_length } => v
                .as_str()
                .is_some_and(|s| max_length.is_none_or(|max| s.chars().count() <= max as usize)),
            CanonicalSchema::Boolean => matches!(v, JsonValue::Bool(_)),
            CanonicalSchema::Null => matches!(v, JsonValue::Null),
            CanonicalSchema::Array {
                items,
                prefix,
                min_items,
                max_items,
            } => v.as_array().is_some_and(|elements| {
                elements.len() >= *min_items as usize
                    && max_items.is_none_or(|max| elements.len() <= max as usize)
                    && elements
                        .iter()
                        .enumerate()
                        .all(|(i, e)| self.validate_node(prefix.get(i).unwrap_or(items), e))
            }),
            CanonicalSchema::Object {
                required,
                optional,
                additional,
            } => v.as_object().is_some_and(|map| {
                required.keys().all(|k| map.contains_key(k))
                    && map.iter().all(|(k, value)| {
                        if let Some(s) = required.get(k).or_else(|| optional.get(k)) {
                            self.validate_node(s, value)
                        } else {
                            match additional {
                                Additional::Closed => false,
                                Additional::Open(s) => self.validate_node(s, value),
                            }
                        }
                    })
            }),
            CanonicalSchema::Union(branches) => branches.iter().any(|b| self.validate_node(b, v)),
            CanonicalSchema::Ref(name) => self
                .definitions
                .get(name)
                .is_some_and(|target| self.validate_node(target, v)),
        }
    }
}

/// Free-function form of [`Schema::validate`].
pub fn validate(schema: &Schema, v: &JsonValue) -> bool {
    schema.validate(v)
}
