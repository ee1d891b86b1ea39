//! Canonical schema model.
//!
//! A JSON Schema document is rewritten into a small normal form before plan
//! compilation: `const` becomes a one-value enum, type lists become unions,
//! `oneOf`/`anyOf` become unions, and a node that uses any keyword outside
//! the supported subset degrades to [`CanonicalSchema::Any`].

mod canon;
mod validate;

use std::collections::BTreeMap;

use indexmap::IndexMap;
use thiserror::Error;

use crate::json::{JsonValue, Object};

pub use canon::canonicalize;
pub use validate::validate;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalSchema {
    /// Matches every value.
    Any,
    /// One of a fixed, deduplicated list of values, in declaration order.
    Enum(Vec<JsonValue>),
    Integer {
        minimum: Option<i64>,
        maximum: Option<i64>,
        multiple_of: Option<i64>,
    },
    /// Any JSON number.
    Real,
    String {
        max_length: Option<u32>,
    },
    Boolean,
    Null,
    Array {
        items: Box<CanonicalSchema>,
        prefix: Vec<CanonicalSchema>,
        min_items: u32,
        max_items: Option<u32>,
    },
    Object {
        required: BTreeMap<String, CanonicalSchema>,
        optional: BTreeMap<String, CanonicalSchema>,
        additional: Additional,
    },
    /// First matching branch wins.
    Union(Vec<CanonicalSchema>),
    /// Named entry in the definitions table.
    Ref(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Additional {
    Closed,
    Open(Box<CanonicalSchema>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{path}: a schema must be an object or a boolean, found {found}")]
    NotASchema { path: String, found: &'static str },
    #[error("{path}: invalid value for `{keyword}`: {reason}")]
    InvalidKeyword {
        path: String,
        keyword: String,
        reason: String,
    },
    #[error("{path}: schema admits no values: {reason}")]
    Unsatisfiable { path: String, reason: String },
    #[error("{path}: cannot resolve reference {reference:?}")]
    UnresolvedRef { path: String, reference: String },
    #[error("{path}: remote reference {reference:?} is not supported")]
    RemoteRef { path: String, reference: String },
    #[error("reference cycle through {name:?} does not pass through an array or object")]
    RefCycle { name: String },
}

/// A canonical schema tree together with its definitions table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    root: CanonicalSchema,
    definitions: BTreeMap<String, CanonicalSchema>,
}

impl Schema {
    /// Builds a schema from parts, checking that every reference resolves and
    /// that no reference cycle is free of array/object nodes.
    pub fn new(root: CanonicalSchema, definitions: BTreeMap<String, CanonicalSchema>) -> Result<Self, SchemaError> {
        let schema = Schema { root, definitions };
        schema.check_references()?;
        Ok(schema)
    }

    /// The wildcard schema `{}`.
    pub fn any() -> Self {
        Schema {
            root: CanonicalSchema::Any,
            definitions: BTreeMap::new(),
        }
    }

    pub fn root(&self) -> &CanonicalSchema {
        &self.root
    }

    pub fn definitions(&self) -> &BTreeMap<String, CanonicalSchema> {
        &self.definitions
    }

    pub fn definition(&self, name: &str) -> Option<&CanonicalSchema> {
        self.definitions.get(name)
    }

    pub fn is_any(&self) -> bool {
        self.root == CanonicalSchema::Any
    }

    /// Re-serializes as JSON Schema using only supported keywords, so that
    /// canonicalizing the output yields this schema again.
    pub fn to_json(&self) -> JsonValue {
        let mut out = match node_to_json(&self.root) {
            JsonValue::Object(map) => map,
            _ => unreachable!("nodes serialize as objects"),
        };
        if !self.definitions.is_empty() {
            let defs: Object = self
                .definitions
                .iter()
                .map(|(name, node)| (name.clone(), node_to_json(node)))
                .collect();
            out.insert("$defs".into(), JsonValue::Object(defs));
        }
        JsonValue::Object(out)
    }

    fn check_references(&self) -> Result<(), SchemaError> {
        let mut missing = None;
        let mut visit = |node: &CanonicalSchema| {
            if let CanonicalSchema::Ref(name) = node {
                if missing.is_none() && !self.definitions.contains_key(name) {
                    missing = Some(name.clone());
                }
            }
        };
        walk(&self.root, &mut visit);
        for def in self.definitions.values() {
            walk(def, &mut visit);
        }
        if let Some(name) = missing {
            return Err(SchemaError::UnresolvedRef {
                path: "#".into(),
                reference: ref_pointer(&name),
            });
        }

        // Depth-first search over references reachable without crossing an
        // array or object node.
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn visit_def(
            name: &str,
            defs: &BTreeMap<String, CanonicalSchema>,
            marks: &mut BTreeMap<String, Mark>,
        ) -> Result<(), SchemaError> {
            match marks.get(name) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Active) => return Err(SchemaError::RefCycle { name: name.to_owned() }),
                None => {}
            }
            marks.insert(name.to_owned(), Mark::Active);
            let mut next = Vec::new();
            unguarded_refs(&defs[name], &mut next);
            for target in next {
                visit_def(&target, defs, marks)?;
            }
            marks.insert(name.to_owned(), Mark::Done);
            Ok(())
        }
        let mut marks = BTreeMap::new();
        for name in self.definitions.keys() {
            visit_def(name, &self.definitions, &mut marks)?;
        }
        Ok(())
    }
}

fn unguarded_refs(node: &CanonicalSchema, out: &mut Vec<String>) {
    match node {
        CanonicalSchema::Ref(name) => out.push(name.clone()),
        CanonicalSchema::Union(branches) => {
            for branch in branches {
                unguarded_refs(branch, out);
            }
        }
        _ => {}
    }
}

/// Pre-order traversal of every node in a tree (not following references).
pub(crate) fn walk(node: &CanonicalSchema, f: &mut impl FnMut(&CanonicalSchema)) {
    f(node);
    match node {
        CanonicalSchema::Array { items, prefix, .. } => {
            prefix.iter().for_each(|p| walk(p, f));
            walk(items, f);
        }
        CanonicalSchema::Object {
            required,
            optional,
            additional,
        } => {
            required.values().chain(optional.values()).for_each(|p| walk(p, f));
            if let Additional::Open(extra) = additional {
                walk(extra, f);
            }
        }
        CanonicalSchema::Union(branches) => branches.iter().for_each(|b| walk(b, f)),
        _ => {}
    }
}

pub(crate) fn contains_ref(node: &CanonicalSchema) -> bool {
    let mut found = false;
    walk(node, &mut |n| found |= matches!(n, CanonicalSchema::Ref(_)));
    found
}

pub(crate) fn ref_pointer(name: &str) -> String {
    format!("#/$defs/{}", name.replace('~', "~0").replace('/', "~1"))
}

fn obj<const N: usize>(entries: [(&str, JsonValue); N]) -> IndexMap<String, JsonValue> {
    entries.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn type_only(name: &str) -> JsonValue {
    JsonValue::Object(obj([("type", name.into())]))
}

fn node_to_json(node: &CanonicalSchema) -> JsonValue {
    match node {
        CanonicalSchema::Any => JsonValue::Object(Object::new()),
        CanonicalSchema::Enum(values) => JsonValue::Object(obj([("enum", JsonValue::Array(values.clone()))])),
        CanonicalSchema::Integer {
            minimum,
            maximum,
            multiple_of,
        } => {
            let mut out = obj([("type", "integer".into())]);
            if let Some(min) = minimum {
                out.insert("minimum".into(), (*min).into());
            }
            if let Some(max) = maximum {
                out.insert("maximum".into(), (*max).into());
            }
            if let Some(step) = multiple_of {
                out.insert("multipleOf".into(), (*step).into());
            }
            JsonValue::Object(out)
        }
        CanonicalSchema::Real => type_only("number"),
        CanonicalSchema::String { max_length } => {
            let mut out = obj([("type", "string".into())]);
            if let Some(max) = max_length {
                out.insert("maxLength".into(), i64::from(*max).into());
            }
            JsonValue::Object(out)
        }
        CanonicalSchema::Boolean => type_only("boolean"),
        CanonicalSchema::Null => type_only("null"),
        CanonicalSchema::Array {
            items,
            prefix,
            min_items,
            max_items,
        } => {
            let mut out = obj([("type", "array".into()), ("items", node_to_json(items))]);
            if !prefix.is_empty() {
                out.insert(
                    "prefixItems".into(),
                    JsonValue::Array(prefix.iter().map(node_to_json).collect()),
                );
            }
            if *min_items > 0 {
                out.insert("minItems".into(), i64::from(*min_items).into());
            }
            if let Some(max) = max_items {
                out.insert("maxItems".into(), i64::from(*max).into());
            }
            JsonValue::Object(out)
        }
        CanonicalSchema::Object {
            required,
            optional,
            additional,
        } => {
            let mut properties: Vec<(&String, &CanonicalSchema)> = required.iter().chain(optional.iter()).collect();
            properties.sort_by(|a, b| a.0.cmp(b.0));
            let properties: Object = properties
                .into_iter()
                .map(|(k, v)| (k.clone(), node_to_json(v)))
                .collect();
            let required = required.keys().map(|k| JsonValue::from(k.as_str())).collect();
            let additional = match additional {
                Additional::Closed => JsonValue::Bool(false),
                Additional::Open(extra) => node_to_json(extra),
            };
            JsonValue::Object(obj([
                ("type", "object".into()),
                ("properties", JsonValue::Object(properties)),
                ("required", JsonValue::Array(required)),
                ("additionalProperties", additional),
            ]))
        }
        CanonicalSchema::Union(branches) => JsonValue::Object(obj([(
            "anyOf",
            JsonValue::Array(branches.iter().map(node_to_json).collect()),
        )])),
        CanonicalSchema::Ref(name) => JsonValue::Object(obj([("$ref", ref_pointer(name).into())])),
    }
}
