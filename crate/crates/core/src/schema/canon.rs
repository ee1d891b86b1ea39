use std::collections::BTreeMap;

use crate::json::{json_equal, JsonValue, Object};

use super::{contains_ref, Additional, CanonicalSchema, Schema, SchemaError};

/// Keywords with an encoding-relevant meaning.
const SUPPORTED: &[&str] = &[
    "type",
    "enum",
    "const",
    "minimum",
    "maximum",
    "multipleOf",
    "maxLength",
    "items",
    "prefixItems",
    "minItems",
    "maxItems",
    "properties",
    "required",
    "additionalProperties",
    "oneOf",
    "anyOf",
    "$ref",
];

/// Keywords that never restrict which instances are accepted.
const ANNOTATIONS: &[&str] = &[
    "$schema",
    "$id",
    "$anchor",
    "$comment",
    "$defs",
    "definitions",
    "title",
    "description",
    "default",
    "examples",
    "deprecated",
    "readOnly",
    "writeOnly",
    "format",
];

const NUMERIC_KEYWORDS: &[&str] = &["minimum", "maximum", "multipleOf"];
const STRING_KEYWORDS: &[&str] = &["maxLength"];
const ARRAY_KEYWORDS: &[&str] = &["items", "prefixItems", "minItems", "maxItems"];
const OBJECT_KEYWORDS: &[&str] = &["properties", "required", "additionalProperties"];

/// Rewrites a JSON Schema document into canonical form.
///
/// Only same-document references of the form `#/$defs/<name>` (or
/// `#/definitions/<name>`) into the root definitions table are accepted.
pub fn canonicalize(schema: &JsonValue) -> Result<Schema> {
    let mut defs_src: BTreeMap<String, (String, &JsonValue)> = BTreeMap::new();
    if let JsonValue::Object(root) = schema {
        for keyword in ["$defs", "definitions"] {
            let Some(table) = root.get(keyword) else { continue };
            let table = table.as_object().ok_or_else(|| SchemaError::InvalidKeyword {
                path: "#".into(),
                keyword: keyword.into(),
                reason: "expected an object".into(),
            })?;
            for (name, def) in table {
                let path = format!("#/{keyword}/{}", escape_pointer(name));
                if defs_src.insert(name.clone(), (path, def)).is_some() {
                    return Err(SchemaError::InvalidKeyword {
                        path: "#".into(),
                        keyword: keyword.into(),
                        reason: format!("definition {name:?} is declared twice"),
                    });
                }
            }
        }
    }

    let canon = Canonicalizer { defs: &defs_src };
    let root = canon.node(schema, "#")?;
    let mut definitions = BTreeMap::new();
    for (name, (path, def)) in &defs_src {
        definitions.insert(name.clone(), canon.node(def, path)?);
    }
    Schema::new(root, definitions)
}

fn escape_pointer(token: &str) -> String {
    token.replace('~', "~0").replace('/', "~1")
}

fn unescape_pointer(token: &str) -> String {
    token.replace("~1", "/").replace("~0", "~")
}

struct Canonicalizer<'a> {
    defs: &'a BTreeMap<String, (String, &'a JsonValue)>,
}

type Result<T> = std::result::Result<T, SchemaError>;

fn invalid(path: &str, keyword: &str, reason: impl Into<String>) -> SchemaError {
    SchemaError::InvalidKeyword {
        path: path.to_owned(),
        keyword: keyword.to_owned(),
        reason: reason.into(),
    }
}

fn unsatisfiable(path: &str, reason: impl Into<String>) -> SchemaError {
    SchemaError::Unsatisfiable {
        path: path.to_owned(),
        reason: reason.into(),
    }
}

/// Outcome of reading a numeric keyword: usable, or outside what the
/// canonical form can express (the node then degrades to `Any`).
enum Bound<T> {
    Value(T),
    Unrepresentable,
}

impl<'a> Canonicalizer<'a> {
    fn node(&self, schema: &JsonValue, path: &str) -> Result<CanonicalSchema> {
        match schema {
            JsonValue::Bool(true) => Ok(CanonicalSchema::Any),
            JsonValue::Bool(false) => Err(unsatisfiable(path, "the `false` schema")),
            JsonValue::Object(map) => self.object_node(map, path),
            other => Err(SchemaError::NotASchema {
                path: path.to_owned(),
                found: other.kind(),
            }),
        }
    }

    fn object_node(&self, map: &Object, path: &str) -> Result<CanonicalSchema> {
        if map
            .keys()
            .any(|k| !SUPPORTED.contains(&k.as_str()) && !ANNOTATIONS.contains(&k.as_str()))
        {
            return Ok(CanonicalSchema::Any);
        }
        let has = |k: &str| map.contains_key(k);
        let constraining: Vec<&str> = SUPPORTED.iter().copied().filter(|k| has(k)).collect();
        if constraining.is_empty() {
            return Ok(CanonicalSchema::Any);
        }

        if has("$ref") {
            if constraining.len() > 1 {
                return Ok(CanonicalSchema::Any);
            }
            return self.reference(&map["$ref"], path).map(CanonicalSchema::Ref);
        }

        if has("oneOf") || has("anyOf") {
            if constraining.len() > 1 {
                return Ok(CanonicalSchema::Any);
            }
            let keyword = if has("oneOf") { "oneOf" } else { "anyOf" };
            return self.union(&map[keyword], keyword, path);
        }

        let base = match self.typed(map, path)? {
            Some(node) => node,
            None => return Ok(CanonicalSchema::Any),
        };

        if has("enum") || has("const") {
            let mut values: Vec<JsonValue> = match map.get("enum") {
                Some(JsonValue::Array(items)) if !items.is_empty() => dedup(items),
                Some(_) => return Err(invalid(path, "enum", "expected a non-empty array")),
                None => vec![map["const"].clone()],
            };
            if let (Some(c), true) = (map.get("const"), has("enum")) {
                values.retain(|v| json_equal(v, c));
            }
            if !contains_ref(&base) {
                let scratch = Schema::any();
                values.retain(|v| scratch.validate_node(&base, v));
            }
            if values.is_empty() {
                return Err(unsatisfiable(path, "no enumerated value satisfies the schema"));
            }
            return Ok(CanonicalSchema::Enum(values));
        }
        Ok(base)
    }

    fn reference(&self, value: &JsonValue, path: &str) -> Result<String> {
        let reference = value
            .as_str()
            .ok_or_else(|| invalid(path, "$ref", "expected a string"))?;
        if !reference.starts_with('#') {
            return Err(SchemaError::RemoteRef {
                path: path.to_owned(),
                reference: reference.to_owned(),
            });
        }
        let name = reference
            .strip_prefix("#/$defs/")
            .or_else(|| reference.strip_prefix("#/definitions/"))
            .filter(|rest| !rest.contains('/'))
            .map(unescape_pointer);
        match name {
            Some(name) if self.defs.contains_key(&name) => Ok(name),
            _ => Err(SchemaError::UnresolvedRef {
                path: path.to_owned(),
                reference: reference.to_owned(),
            }),
        }
    }

    fn union(&self, value: &JsonValue, keyword: &str, path: &str) -> Result<CanonicalSchema> {
        let branches = match value {
            JsonValue::Array(items) if !items.is_empty() => items,
            _ => return Err(invalid(path, keyword, "expected a non-empty array")),
        };
        let mut flat = Vec::new();
        for (i, branch) in branches.iter().enumerate() {
            match self.node(branch, &format!("{path}/{keyword}/{i}"))? {
                CanonicalSchema::Union(inner) => flat.extend(inner),
                node => flat.push(node),
            }
        }
        Ok(make_union(flat))
    }

    /// Type-driven part of a node, ignoring `enum`/`const`. `None` means the
    /// node cannot be expressed canonically and falls back to `Any`.
    fn typed(&self, map: &Object, path: &str) -> Result<Option<CanonicalSchema>> {
        let types: Vec<&str> = match map.get("type") {
            Some(JsonValue::String(t)) => vec![t.as_str()],
            Some(JsonValue::Array(list)) if !list.is_empty() => {
                let mut names = Vec::new();
                for t in list {
                    let t = t.as_str().ok_or_else(|| invalid(path, "type", "expected type names"))?;
                    if !names.contains(&t) {
                        names.push(t);
                    }
                }
                names
            }
            Some(_) => return Err(invalid(path, "type", "expected a string or non-empty array")),
            None => {
                // Without `type`, keywords from exactly one family select it.
                let families: Vec<&str> = [
                    (NUMERIC_KEYWORDS, "number"),
                    (STRING_KEYWORDS, "string"),
                    (ARRAY_KEYWORDS, "array"),
                    (OBJECT_KEYWORDS, "object"),
                ]
                .into_iter()
                .filter(|(keys, _)| keys.iter().any(|k| map.contains_key(*k)))
                .map(|(_, name)| name)
                .collect();
                match families.as_slice() {
                    [] => return Ok(Some(CanonicalSchema::Any)),
                    [one] => vec![*one],
                    _ => return Ok(None),
                }
            }
        };

        let mut nodes = Vec::with_capacity(types.len());
        for t in types {
            let node = match t {
                "null" => Some(CanonicalSchema::Null),
                "boolean" => Some(CanonicalSchema::Boolean),
                "number" => Some(CanonicalSchema::Real),
                "integer" => self.integer(map, path)?,
                "string" => self.string(map, path)?,
                "array" => self.array(map, path)?,
                "object" => self.object(map, path)?,
                other => return Err(invalid(path, "type", format!("unknown type {other:?}"))),
            };
            match node {
                Some(node) => nodes.push(node),
                None => return Ok(None),
            }
        }
        Ok(Some(make_union(nodes)))
    }

    fn integer(&self, map: &Object, path: &str) -> Result<Option<CanonicalSchema>> {
        let minimum = match map.get("minimum").map(|v| int_bound(v, path, "minimum", true)) {
            Some(Ok(Bound::Value(n))) => Some(n),
            Some(Ok(Bound::Unrepresentable)) => return Ok(None),
            Some(Err(e)) => return Err(e),
            None => None,
        };
        let maximum = match map.get("maximum").map(|v| int_bound(v, path, "maximum", false)) {
            Some(Ok(Bound::Value(n))) => Some(n),
            Some(Ok(Bound::Unrepresentable)) => return Ok(None),
            Some(Err(e)) => return Err(e),
            None => None,
        };
        let multiple_of = match map.get("multipleOf") {
            None => None,
            Some(v) => {
                let positive = v.to_real().is_some_and(|r| !r.is_negative() && !r.is_zero());
                if !positive {
                    return Err(invalid(path, "multipleOf", "expected a positive number"));
                }
                match v.as_i64() {
                    Some(1) => None,
                    Some(step) => Some(step),
                    None => return Ok(None),
                }
            }
        };
        if let (Some(min), Some(max)) = (minimum, maximum) {
            if min > max {
                return Err(unsatisfiable(path, format!("minimum {min} exceeds maximum {max}")));
            }
            if let Some(step) = multiple_of {
                let step = i128::from(step);
                let first = ceil_to_multiple(i128::from(min), step);
                if first > i128::from(max) {
                    return Err(unsatisfiable(path, "no multiple of `multipleOf` within bounds"));
                }
            }
        }
        Ok(Some(CanonicalSchema::Integer {
            minimum,
            maximum,
            multiple_of,
        }))
    }

    fn string(&self, map: &Object, path: &str) -> Result<Option<CanonicalSchema>> {
        let max_length = match map.get("maxLength") {
            None => None,
            Some(v) => match count(v, path, "maxLength")? {
                Bound::Value(n) => Some(n),
                Bound::Unrepresentable => return Ok(None),
            },
        };
        Ok(Some(CanonicalSchema::String { max_length }))
    }

    fn array(&self, map: &Object, path: &str) -> Result<Option<CanonicalSchema>> {
        let mut prefix = Vec::new();
        if let Some(list) = map.get("prefixItems") {
            let list = match list {
                JsonValue::Array(list) if !list.is_empty() => list,
                _ => return Err(invalid(path, "prefixItems", "expected a non-empty array")),
            };
            for (i, item) in list.iter().enumerate() {
                prefix.push(self.node(item, &format!("{path}/prefixItems/{i}"))?);
            }
        }
        let min_items = match map.get("minItems") {
            None => 0,
            Some(v) => match count(v, path, "minItems")? {
                Bound::Value(n) => n,
                Bound::Unrepresentable => return Ok(None),
            },
        };
        let mut max_items = match map.get("maxItems") {
            None => None,
            Some(v) => match count(v, path, "maxItems")? {
                Bound::Value(n) => Some(n),
                Bound::Unrepresentable => return Ok(None),
            },
        };
        let items = match map.get("items") {
            None => CanonicalSchema::Any,
            Some(JsonValue::Bool(false)) => {
                let len = u32::try_from(prefix.len()).unwrap_or(u32::MAX);
                max_items = Some(max_items.map_or(len, |m| m.min(len)));
                CanonicalSchema::Any
            }
            // Legacy tuple form.
            Some(JsonValue::Array(_)) => return Ok(None),
            Some(item) => self.node(item, &format!("{path}/items"))?,
        };
        if let Some(max) = max_items {
            if min_items > max {
                return Err(unsatisfiable(
                    path,
                    format!("minItems {min_items} exceeds the maximum of {max} items"),
                ));
            }
        }
        Ok(Some(CanonicalSchema::Array {
            items: Box::new(items),
            prefix,
            min_items,
            max_items,
        }))
    }

    fn object(&self, map: &Object, path: &str) -> Result<Option<CanonicalSchema>> {
        let mut properties = BTreeMap::new();
        if let Some(props) = map.get("properties") {
            let props = props
                .as_object()
                .ok_or_else(|| invalid(path, "properties", "expected an object"))?;
            for (key, schema) in props {
                let child = format!("{path}/properties/{}", escape_pointer(key));
                properties.insert(key.clone(), self.node(schema, &child)?);
            }
        }
        let mut required_keys = Vec::new();
        if let Some(list) = map.get("required") {
            let list = list
                .as_array()
                .ok_or_else(|| invalid(path, "required", "expected an array of strings"))?;
            for key in list {
                let key = key
                    .as_str()
                    .ok_or_else(|| invalid(path, "required", "expected an array of strings"))?;
                if required_keys.contains(&key) {
                    return Err(invalid(path, "required", format!("duplicate key {key:?}")));
                }
                required_keys.push(key);
            }
        }
        let additional = match map.get("additionalProperties") {
            None | Some(JsonValue::Bool(true)) => Additional::Open(Box::new(CanonicalSchema::Any)),
            Some(JsonValue::Bool(false)) => Additional::Closed,
            Some(schema) => Additional::Open(Box::new(self.node(schema, &format!("{path}/additionalProperties"))?)),
        };

        let mut required = BTreeMap::new();
        for key in required_keys {
            let schema = match properties.remove(key) {
                Some(schema) => schema,
                None => match &additional {
                    Additional::Closed => {
                        return Err(unsatisfiable(
                            path,
                            format!("required key {key:?} is forbidden by additionalProperties"),
                        ))
                    }
                    Additional::Open(extra) => (**extra).clone(),
                },
            };
            required.insert(key.to_owned(), schema);
        }
        Ok(Some(CanonicalSchema::Object {
            required,
            optional: properties,
            additional,
        }))
    }
}

fn make_union(mut branches: Vec<CanonicalSchema>) -> CanonicalSchema {
    let mut unique: Vec<CanonicalSchema> = Vec::with_capacity(branches.len());
    for b in branches.drain(..) {
        if !unique.contains(&b) {
            unique.push(b);
        }
    }
    if unique.len() == 1 {
        unique.pop().expect("one branch")
    } else {
        CanonicalSchema::Union(unique)
    }
}

fn dedup(values: &[JsonValue]) -> Vec<JsonValue> {
    let mut out: Vec<JsonValue> = Vec::with_capacity(values.len());
    for v in values {
        if !out.iter().any(|seen| json_equal(seen, v)) {
            out.push(v.clone());
        }
    }
    out
}

fn ceil_to_multiple(n: i128, step: i128) -> i128 {
    n.div_euclid(step) * step + if n.rem_euclid(step) == 0 { 0 } else { step }
}

/// Integer bound from a numeric keyword: non-integral minimums round up and
/// maximums round down.
fn int_bound(v: &JsonValue, path: &str, keyword: &str, round_up: bool) -> Result<Bound<i64>> {
    let real = v.to_real().ok_or_else(|| invalid(path, keyword, "expected a number"))?;
    if let Some(n) = real.to_i64() {
        return Ok(Bound::Value(n));
    }
    if real.is_integral() {
        return Ok(Bound::Unrepresentable);
    }
    // Truncate toward zero, then step away from zero when rounding in that
    // direction.
    let keep = real.digits().len() as i64 + i64::from(real.exponent());
    let truncated: i128 = if keep <= 0 {
        0
    } else {
        match real.digits()[..keep as usize].parse() {
            Ok(n) => n,
            Err(_) => return Ok(Bound::Unrepresentable),
        }
    };
    let signed = if real.is_negative() { -truncated } else { truncated };
    let rounded = match (round_up, real.is_negative()) {
        (true, false) => signed + 1,
        (false, true) => signed - 1,
        _ => signed,
    };
    Ok(i64::try_from(rounded).map_or(Bound::Unrepresentable, Bound::Value))
}

fn count(v: &JsonValue, path: &str, keyword: &str) -> Result<Bound<u32>> {
    match v.as_i64() {
        Some(n) if n >= 0 => Ok(u32::try_from(n).map_or(Bound::Unrepresentable, Bound::Value)),
        _ => Err(invalid(path, keyword, "expected a non-negative integer")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::json::parse_json;

    fn canon(text: &str) -> Result<Schema> {
        canonicalize(&parse_json(text).unwrap())
    }

    fn root(text: &str) -> CanonicalSchema {
        canon(text).unwrap().root().clone()
    }

    #[test]
    fn wildcard_forms() {
        assert_eq!(root("{}"), CanonicalSchema::Any);
        assert_eq!(root("true"), CanonicalSchema::Any);
        assert_eq!(root(r#"{"title":"x","$schema":"y"}"#), CanonicalSchema::Any);
    }

    #[test]
    fn const_becomes_singleton_enum() {
        assert_eq!(
            root(r#"{"const":2}"#),
            CanonicalSchema::Enum(vec![JsonValue::Integer(2)])
        );
    }

    #[test]
    fn enum_dedups_in_first_occurrence_order() {
        assert_eq!(
            root(r#"{"enum":[3,1,3.0,1,"a"]}"#),
            CanonicalSchema::Enum(vec![3.into(), 1.into(), "a".into()])
        );
        // sibling constraints filter the list
        assert_eq!(
            root(r#"{"type":"integer","enum":[1,"x",2.5,4]}"#),
            CanonicalSchema::Enum(vec![1.into(), 4.into()])
        );
        assert_eq!(
            root(r#"{"enum":[1,2,3],"const":2}"#),
            CanonicalSchema::Enum(vec![2.into()])
        );
        assert!(matches!(
            canon(r#"{"type":"string","const":1}"#),
            Err(SchemaError::Unsatisfiable { .. })
        ));
        assert!(matches!(
            canon(r#"{"enum":[]}"#),
            Err(SchemaError::InvalidKeyword { .. })
        ));
    }

    #[test]
    fn bounded_integer() {
        assert_eq!(
            root(r#"{"type":"integer","minimum":0,"maximum":255}"#),
            CanonicalSchema::Integer {
                minimum: Some(0),
                maximum: Some(255),
                multiple_of: None
            }
        );
        assert_eq!(
            root(r#"{"type":"integer","minimum":-0.5,"maximum":2.5,"multipleOf":1}"#),
            CanonicalSchema::Integer {
                minimum: Some(0),
                maximum: Some(2),
                multiple_of: None
            }
        );
        assert_eq!(
            root(r#"{"type":"integer","minimum":-2.5}"#),
            CanonicalSchema::Integer {
                minimum: Some(-2),
                maximum: None,
                multiple_of: None
            }
        );
        assert!(matches!(
            canon(r#"{"type":"integer","minimum":5,"maximum":4}"#),
            Err(SchemaError::Unsatisfiable { .. })
        ));
        assert!(matches!(
            canon(r#"{"type":"integer","minimum":1,"maximum":4,"multipleOf":5}"#),
            Err(SchemaError::Unsatisfiable { .. })
        ));
        // unrepresentable bounds degrade the node
        assert_eq!(root(r#"{"type":"integer","maximum":1e30}"#), CanonicalSchema::Any);
        assert_eq!(root(r#"{"type":"integer","multipleOf":0.5}"#), CanonicalSchema::Any);
    }

    #[test]
    fn type_lists_become_unions() {
        assert_eq!(
            root(r#"{"type":["string","null","string"]}"#),
            CanonicalSchema::Union(vec![
                CanonicalSchema::String { max_length: None },
                CanonicalSchema::Null
            ])
        );
        assert_eq!(root(r#"{"type":["boolean"]}"#), CanonicalSchema::Boolean);
    }

    #[test]
    fn one_of_and_any_of_flatten() {
        let expected = CanonicalSchema::Union(vec![
            CanonicalSchema::Boolean,
            CanonicalSchema::Null,
            CanonicalSchema::Real,
        ]);
        assert_eq!(
            root(r#"{"oneOf":[{"type":"boolean"},{"anyOf":[{"type":"null"},{"type":"number"}]}]}"#),
            expected
        );
        assert_eq!(root(r#"{"anyOf":[{"type":"null"}]}"#), CanonicalSchema::Null);
    }

    #[test]
    fn unknown_keyword_degrades_only_that_node() {
        let s = root(
            r#"{"type":"object","properties":{"a":{"type":"string","pattern":"^x"},"b":{"type":"boolean"}},"required":["a"]}"#,
        );
        let CanonicalSchema::Object {
            required,
            optional,
            additional,
        } = s
        else {
            panic!("expected object")
        };
        assert_eq!(required["a"], CanonicalSchema::Any);
        assert_eq!(optional["b"], CanonicalSchema::Boolean);
        assert_eq!(additional, Additional::Open(Box::new(CanonicalSchema::Any)));
        assert_eq!(root(r#"{"type":"string","minLength":1}"#), CanonicalSchema::Any);
    }

    #[test]
    fn object_keys_partitioned_and_sorted() {
        let s = root(
            r#"{"type":"object","properties":{"z":{"type":"null"},"b":{},"a":{"type":"boolean"}},"required":["z","c"],"additionalProperties":{"type":"integer"}}"#,
        );
        let CanonicalSchema::Object {
            required,
            optional,
            additional,
        } = s
        else {
            panic!("expected object")
        };
        assert_eq!(required.keys().collect::<Vec<_>>(), ["c", "z"]);
        assert_eq!(optional.keys().collect::<Vec<_>>(), ["a", "b"]);
        // a required key without a property schema takes the additional schema
        assert!(matches!(required["c"], CanonicalSchema::Integer { .. }));
        assert!(matches!(additional, Additional::Open(_)));
        assert!(matches!(
            canon(r#"{"type":"object","required":["x"],"additionalProperties":false}"#),
            Err(SchemaError::Unsatisfiable { .. })
        ));
    }

    #[test]
    fn untyped_keyword_family_selects_type() {
        assert!(matches!(root(r#"{"properties":{}}"#), CanonicalSchema::Object { .. }));
        assert!(matches!(
            root(r#"{"maxLength":3}"#),
            CanonicalSchema::String { max_length: Some(3) }
        ));
        assert_eq!(root(r#"{"maxLength":3,"minItems":1}"#), CanonicalSchema::Any);
    }

    #[test]
    fn arrays() {
        let s = root(r#"{"type":"array","prefixItems":[{"type":"null"}],"items":false,"minItems":1}"#);
        assert_eq!(
            s,
            CanonicalSchema::Array {
                items: Box::new(CanonicalSchema::Any),
                prefix: vec![CanonicalSchema::Null],
                min_items: 1,
                max_items: Some(1)
            }
        );
        assert_eq!(root(r#"{"type":"array","items":[{}]}"#), CanonicalSchema::Any);
        assert!(matches!(
            canon(r#"{"type":"array","minItems":3,"maxItems":2}"#),
            Err(SchemaError::Unsatisfiable { .. })
        ));
        assert!(matches!(
            canon(r#"{"type":"array","minItems":-1}"#),
            Err(SchemaError::InvalidKeyword { .. })
        ));
    }

    #[test]
    fn references() {
        let s = canon(
            r##"{"$defs":{"node":{"type":"object","properties":{"next":{"$ref":"#/$defs/node"}}},"a/b":{"type":"null"}},"anyOf":[{"$ref":"#/$defs/node"},{"$ref":"#/$defs/a~1b"}]}"##,
        )
        .unwrap();
        assert_eq!(
            s.root(),
            &CanonicalSchema::Union(vec![
                CanonicalSchema::Ref("node".into()),
                CanonicalSchema::Ref("a/b".into())
            ])
        );
        assert_eq!(s.definitions().len(), 2);
        assert!(matches!(
            canon(r##"{"$ref":"#/$defs/missing"}"##),
            Err(SchemaError::UnresolvedRef { .. })
        ));
        assert!(matches!(
            canon(r#"{"$ref":"https://example.com/s.json"}"#),
            Err(SchemaError::RemoteRef { .. })
        ));
        assert!(matches!(
            canon(
                r##"{"$defs":{"a":{"$ref":"#/$defs/b"},"b":{"anyOf":[{"type":"null"},{"$ref":"#/$defs/a"}]}},"$ref":"#/$defs/a"}"##
            ),
            Err(SchemaError::RefCycle { .. })
        ));
    }

    #[test]
    fn non_schema_values() {
        assert!(matches!(canon("3"), Err(SchemaError::NotASchema { .. })));
        assert!(matches!(canon("false"), Err(SchemaError::Unsatisfiable { .. })));
        assert!(matches!(
            canon(r#"{"type":"object","properties":{"a":[]}}"#),
            Err(SchemaError::NotASchema { .. })
        ));
    }

    #[test]
    fn reserialization_is_a_fixed_point() {
        let texts = [
            r#"{"type":"object","properties":{"a":{"type":"integer","minimum":1,"maximum":9,"multipleOf":2},"b":{"enum":[1,"x",null]},"c":{"type":["string","null"],"maxLength":4}},"required":["a"],"additionalProperties":false}"#,
            r##"{"$defs":{"t":{"type":"array","items":{"$ref":"#/$defs/t"},"prefixItems":[{"const":true}],"maxItems":4}},"$ref":"#/$defs/t"}"##,
            r#"{"oneOf":[{"type":"number"},{"type":"boolean"},{}]}"#,
            "{}",
        ];
        for text in texts {
            let first = canon(text).unwrap();
            let second = canonicalize(&first.to_json()).unwrap();
            assert_eq!(first, second, "{text}");
        }
    }
}
