use indexmap::IndexMap;

use super::number::Real;

/// JSON object: keys keep their insertion order for emission, but equality
/// ignores order.
pub type Object = IndexMap<String, JsonValue>;

/// In-memory JSON document.
///
/// `PartialEq` is value equality: objects compare without regard to key
/// order and numbers compare mathematically, so `Integer(25)` equals the
/// real `2.5e1`.
#[derive(Debug, Clone)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Integer(i64),
    Real(Real),
    String(String),
    Array(Vec<JsonValue>),
    Object(Object),
}

impl JsonValue {
    pub fn kind(&self) -> &'static str {
        match self {
            JsonValue::Null => "null",
            JsonValue::Bool(_) => "boolean",
            JsonValue::Integer(_) => "integer",
            JsonValue::Real(_) => "number",
            JsonValue::String(_) => "string",
            JsonValue::Array(_) => "array",
            JsonValue::Object(_) => "object",
        }
    }

    pub fn is_number(&self) -> bool {
        matches!(self, JsonValue::Integer(_) | JsonValue::Real(_))
    }

    /// Integer value of an integral number that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            JsonValue::Integer(n) => Some(*n),
            JsonValue::Real(r) => r.to_i64(),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            JsonValue::String(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            JsonValue::Bool(b) => Some(*b),
            _ => None,
        }
    }

    pub fn as_array(&self) -> Option<&[JsonValue]> {
        match self {
            JsonValue::Array(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_object(&self) -> Option<&Object> {
        match self {
            JsonValue::Object(map) => Some(map),
            _ => None,
        }
    }

    /// Number as a normalized real; `None` for non-numbers.
    pub fn to_real(&self) -> Option<Real> {
        match self {
            JsonValue::Integer(n) => Some(Real::from_i64(*n)),
            JsonValue::Real(r) => Some(r.clone()),
            _ => None,
        }
    }
}

impl From<bool> for JsonValue {
    fn from(b: bool) -> Self {
        JsonValue::Bool(b)
    }
}

impl From<i64> for JsonValue {
    fn from(n: i64) -> Self {
        JsonValue::Integer(n)
    }
}

impl From<&str> for JsonValue {
    fn from(s: &str) -> Self {
        JsonValue::String(s.to_owned())
    }
}

impl From<String> for JsonValue {
    fn from(s: String) -> Self {
        JsonValue::String(s)
    }
}

impl From<Real> for JsonValue {
    fn from(r: Real) -> Self {
        JsonValue::Real(r)
    }
}

impl From<Vec<JsonValue>> for JsonValue {
    fn from(items: Vec<JsonValue>) -> Self {
        JsonValue::Array(items)
    }
}

impl From<Object> for JsonValue {
    fn from(map: Object) -> Self {
        JsonValue::Object(map)
    }
}

/// Value equality used by the round-trip check.
pub fn json_equal(a: &JsonValue, b: &JsonValue) -> bool {
    use JsonValue::*;
    match (a, b) {
        (Null, Null) => true,
        (Bool(x), Bool(y)) => x == y,
        (Integer(x), Integer(y)) => x == y,
        (Integer(x), Real(r)) | (Real(r), Integer(x)) => r.to_i64() == Some(*x),
        (Real(x), Real(y)) => x == y,
        (String(x), String(y)) => x == y,
        (Array(x), Array(y)) => x.len() == y.len() && x.iter().zip(y).all(|(p, q)| json_equal(p, q)),
        (Object(x), Object(y)) => {
            x.len() == y.len() && x.iter().all(|(k, v)| y.get(k).is_some_and(|w| json_equal(v, w)))
        }
        _ => false,
    }
}

impl PartialEq for JsonValue {
    fn eq(&self, other: &Self) -> bool {
        json_equal(self, other)
    }
}

impl Eq for JsonValue {}
