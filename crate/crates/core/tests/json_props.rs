mod common;

use bjson_core::json::{json_equal, minify, parse_json, to_pretty_string, JsonValue};
use common::arb_json;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn minified_text_round_trips(v in arb_json()) {
        let text = minify(&v);
        let back = parse_json(&text).unwrap();
        prop_assert!(json_equal(&back, &v), "{text}");
    }

    #[test]
    fn minify_is_idempotent(v in arb_json()) {
        let once = minify(&v);
        prop_assert_eq!(minify(&parse_json(&once).unwrap()), once);
    }

    #[test]
    fn pretty_text_parses_to_same_value(v in arb_json()) {
        let back = parse_json(&to_pretty_string(&v)).unwrap();
        prop_assert!(json_equal(&back, &v));
    }

    #[test]
    fn equality_is_reflexive_and_symmetric(a in arb_json(), b in arb_json()) {
        prop_assert!(json_equal(&a, &a));
        prop_assert_eq!(json_equal(&a, &b), json_equal(&b, &a));
    }

    #[test]
    fn equality_is_transitive_through_reordering(v in arb_json()) {
        let reversed = reverse_objects(&v);
        let text = parse_json(&minify(&reversed)).unwrap();
        prop_assert!(json_equal(&v, &reversed));
        prop_assert!(json_equal(&reversed, &text));
        prop_assert!(json_equal(&v, &text));
    }

    #[test]
    fn integers_equal_their_real_spelling(n in any::<i32>(), zeros in 0usize..4) {
        let spelled = format!("{n}.{}", "0".repeat(zeros.max(1)));
        prop_assert!(json_equal(&parse_json(&spelled).unwrap(), &JsonValue::Integer(n.into())));
        let shifted = format!("{n}0e-1");
        prop_assert!(json_equal(&parse_json(&shifted).unwrap(), &JsonValue::Integer(n.into())));
    }
}

fn reverse_objects(v: &JsonValue) -> JsonValue {
    match v {
        JsonValue::Array(items) => JsonValue::Array(items.iter().map(reverse_objects).collect()),
        JsonValue::Object(map) => {
            JsonValue::Object(map.iter().rev().map(|(k, v)| (k.clone(), reverse_objects(v))).collect())
        }
        other => other.clone(),
    }
}

#[test]
fn rejects_malformed_text() {
    for bad in [
        "",
        "{",
        "[1,]",
        "01",
        "1.",
        "\"\\x\"",
        "{\"a\":1,\"a\":2}",
        "\"\\ud800\"",
        "nul",
        "1 2",
    ] {
        assert!(parse_json(bad).is_err(), "{bad}");
    }
}
