#![allow(dead_code)]

use bjson_core::json::{JsonValue, Object, Real};
use proptest::prelude::*;

pub fn arb_string() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-c]{0,3}",
        "\\PC{0,12}",
        "[\\x00-\\x1f\"\\\\/]{0,4}",
        Just("ab".to_owned()),
    ]
}

pub fn arb_real() -> impl Strategy<Value = Real> {
    (any::<i64>(), -30i64..30).prop_map(|(m, e)| Real::from_parts(m, e).unwrap())
}

pub fn arb_leaf() -> impl Strategy<Value = JsonValue> {
    prop_oneof![
        Just(JsonValue::Null),
        any::<bool>().prop_map(JsonValue::Bool),
        any::<i64>().prop_map(JsonValue::Integer),
        (-40i64..40).prop_map(JsonValue::Integer),
        arb_real().prop_map(JsonValue::Real),
        arb_string().prop_map(JsonValue::String),
    ]
}

pub fn arb_json() -> impl Strategy<Value = JsonValue> {
    arb_leaf().prop_recursive(4, 48, 6, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..6).prop_map(JsonValue::Array),
            prop::collection::vec((arb_string(), inner), 0..6).prop_map(|pairs| {
                let mut map = Object::new();
                for (k, v) in pairs {
                    map.insert(k, v);
                }
                JsonValue::Object(map)
            }),
        ]
    })
}

/// Small schema documents covering every keyword the canonicalizer reads.
pub fn arb_schema() -> impl Strategy<Value = JsonValue> {
    let leaf = prop_oneof![
        Just(r#"{}"#),
        Just(r#"true"#),
        Just(r#"{"type":"null"}"#),
        Just(r#"{"type":"boolean"}"#),
        Just(r#"{"type":"string"}"#),
        Just(r#"{"type":"string","maxLength":4}"#),
        Just(r#"{"type":"number"}"#),
        Just(r#"{"type":"integer"}"#),
        Just(r#"{"type":"integer","minimum":-3,"maximum":9}"#),
        Just(r#"{"type":"integer","minimum":0,"maximum":100,"multipleOf":5}"#),
        Just(r#"{"type":"integer","exclusiveMinimum":1.5}"#),
        Just(r#"{"maximum":7}"#),
        Just(r#"{"const":"x"}"#),
        Just(r#"{"enum":[1,"a",null,[true]]}"#),
        Just(r#"{"type":["string","null"]}"#),
        Just(r#"{"type":"integer","enum":[1,2.5,3]}"#),
    ]
    .prop_map(|s| bjson_core::parse_json(s).unwrap());
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            inner
                .clone()
                .prop_map(|items| obj(&[("type", "array".into()), ("items", items)])),
            (prop::collection::vec(inner.clone(), 1..3), 0u32..3).prop_map(|(prefix, min)| obj(&[
                ("type", "array".into()),
                ("prefixItems", JsonValue::Array(prefix)),
                ("minItems", JsonValue::Integer(min.into())),
                ("items", JsonValue::Bool(false)),
            ])),
            (
                prop::collection::btree_map("[a-d]", inner.clone(), 0..4),
                prop::collection::vec("[a-d]", 0..3),
                prop_oneof![
                    Just(None),
                    Just(Some(JsonValue::Bool(false))),
                    inner.clone().prop_map(Some)
                ],
            )
                .prop_map(|(props, required, additional)| {
                    let mut properties = Object::new();
                    let mut required_keys = Vec::new();
                    for (k, v) in props {
                        properties.insert(k, v);
                    }
                    for r in required {
                        if properties.contains_key(&r) && !required_keys.contains(&JsonValue::String(r.clone())) {
                            required_keys.push(JsonValue::String(r));
                        }
                    }
                    let mut fields = vec![
                        ("type", JsonValue::from("object")),
                        ("properties", JsonValue::Object(properties)),
                        ("required", JsonValue::Array(required_keys)),
                    ];
                    if let Some(a) = additional {
                        fields.push(("additionalProperties", a));
                    }
                    obj(&fields)
                }),
            prop::collection::vec(inner.clone(), 1..4).prop_map(|b| obj(&[("anyOf", JsonValue::Array(b))])),
            prop::collection::vec(inner, 1..3).prop_map(|b| obj(&[("oneOf", JsonValue::Array(b))])),
        ]
    })
}

pub fn obj(fields: &[(&str, JsonValue)]) -> JsonValue {
    let mut map = Object::new();
    for (k, v) in fields {
        map.insert((*k).to_owned(), v.clone());
    }
    JsonValue::Object(map)
}
