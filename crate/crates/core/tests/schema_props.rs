mod common;

use bjson_core::json::JsonValue;
use bjson_core::plan::PlanNode;
use bjson_core::schema::validate;
use bjson_core::{build_plan, canonicalize, decode, encode, json_equal, EncodeError};
use common::{arb_json, arb_schema};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1500))]

    #[test]
    fn canonical_form_is_a_fixed_point(raw in arb_schema()) {
        let first = canonicalize(&raw);
        prop_assume!(first.is_ok());
        let first = first.unwrap();
        let again = canonicalize(&first.to_json()).unwrap();
        prop_assert_eq!(&again, &first);
        prop_assert_eq!(again.to_json(), first.to_json());
    }

    #[test]
    fn loose_schema_accepts_everything(v in arb_json()) {
        let loose = canonicalize(&JsonValue::Object(Default::default())).unwrap();
        prop_assert!(validate(&loose, &v));
    }

    #[test]
    fn plans_are_deterministic(raw in arb_schema()) {
        if let Ok(schema) = canonicalize(&raw) {
            prop_assert_eq!(build_plan(&schema), build_plan(&schema.clone()));
        }
    }

    #[test]
    fn validating_values_round_trip_under_their_schema(raw in arb_schema(), v in arb_json()) {
        let Ok(schema) = canonicalize(&raw) else { return Ok(()) };
        if !validate(&schema, &v) {
            return Ok(());
        }
        let plan = build_plan(&schema);
        match encode(&v, &plan) {
            Ok(bytes) => prop_assert!(json_equal(&decode(&bytes, &plan).unwrap(), &v)),
            Err(e) => prop_assert!(matches!(e, EncodeError::Unsupported { .. }), "{e}"),
        }
    }
}

#[test]
fn wildcard_schema_builds_any_plan() {
    let schema = canonicalize(&JsonValue::Object(Default::default())).unwrap();
    assert_eq!(build_plan(&schema).root(), &PlanNode::Any);
    assert_eq!(
        build_plan(&canonicalize(&JsonValue::Bool(true)).unwrap()).root(),
        &PlanNode::Any
    );
}
