mod common;

use bjson_core::bitstream::uvarint_len;
use bjson_core::codec::{decode_traced, encode_traced};
use bjson_core::json::JsonValue;
use bjson_core::plan::EncodingPlan;
use bjson_core::{decode_schemaless, encode, encode_schemaless, json_equal};
use common::arb_json;
use proptest::prelude::*;

/// Reals with more than 19 significant digits are outside the codec's range.
fn encodable(v: &JsonValue) -> bool {
    match v {
        JsonValue::Real(r) => r.is_integral() && r.to_i64().is_some() || r.mantissa_i64().is_some(),
        JsonValue::Array(items) => items.iter().all(encodable),
        JsonValue::Object(map) => map.values().all(encodable),
        _ => true,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn schemaless_round_trips(v in arb_json()) {
        prop_assume!(encodable(&v));
        let bytes = encode_schemaless(&v).unwrap();
        prop_assert!(json_equal(&decode_schemaless(&bytes).unwrap(), &v));
    }

    #[test]
    fn wildcard_plan_matches_schemaless(v in arb_json()) {
        prop_assume!(encodable(&v));
        prop_assert_eq!(encode(&v, &EncodingPlan::any()).unwrap(), encode_schemaless(&v).unwrap());
    }

    #[test]
    fn encoding_is_deterministic(v in arb_json()) {
        prop_assume!(encodable(&v));
        prop_assert_eq!(encode_schemaless(&v).unwrap(), encode_schemaless(&v.clone()).unwrap());
    }

    #[test]
    fn pools_evolve_identically(v in arb_json()) {
        prop_assume!(encodable(&v));
        let plan = EncodingPlan::any();
        let (bytes, written) = encode_traced(&v, &plan).unwrap();
        let (_, read) = decode_traced(&bytes, &plan).unwrap();
        prop_assert_eq!(written, read);
    }

    #[test]
    fn second_occurrence_is_a_back_reference(s in "\\PC{2,40}") {
        let once = encode_schemaless(&JsonValue::Array(vec![s.clone().into()])).unwrap();
        let twice = encode_schemaless(&JsonValue::Array(vec![s.clone().into(), s.clone().into()])).unwrap();
        let second = twice.len() - once.len();
        prop_assert_eq!(second, 1 + uvarint_len(0));
        let literal = 1 + if s.len() <= 23 { 0 } else { uvarint_len(s.len() as u64) } + s.len();
        prop_assert!(second < literal);
    }

    #[test]
    fn corrupted_payloads_never_panic(v in arb_json(), flip in any::<prop::sample::Index>(), cut in any::<prop::sample::Index>()) {
        prop_assume!(encodable(&v));
        let mut bytes = encode_schemaless(&v).unwrap();
        let i = flip.index(bytes.len());
        bytes[i] ^= 0x5A;
        let _ = decode_schemaless(&bytes);
        bytes.truncate(cut.index(bytes.len()));
        let _ = decode_schemaless(&bytes);
    }
}
