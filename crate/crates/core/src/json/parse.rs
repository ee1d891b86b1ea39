use thiserror::Error;

use super::number::Real;
use super::value::{JsonValue, Object};

const MAX_DEPTH: usize = 512;

/// JSON text rejected by [`parse_json`]. Every variant carries the byte
/// offset at which the problem was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected end of input at byte {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("unexpected character {found:?} at byte {offset}")]
    UnexpectedChar { offset: usize, found: char },
    #[error("invalid escape sequence at byte {offset}")]
    InvalidEscape { offset: usize },
    #[error("unpaired surrogate escape at byte {offset}")]
    LoneSurrogate { offset: usize },
    #[error("unescaped control character in string at byte {offset}")]
    ControlCharacter { offset: usize },
    #[error("duplicate object key {key:?} at byte {offset}")]
    DuplicateKey { offset: usize, key: String },
    #[error("malformed number at byte {offset}")]
    InvalidNumber { offset: usize },
    #[error("unsupported number at byte {offset}: {reason}")]
    UnsupportedNumber { offset: usize, reason: String },
    #[error("byte order mark is not allowed")]
    ByteOrderMark { offset: usize },
    #[error("invalid UTF-8 at byte {offset}")]
    InvalidUtf8 { offset: usize },
    #[error("nesting deeper than {MAX_DEPTH} levels at byte {offset}")]
    TooDeep { offset: usize },
    #[error("trailing characters at byte {offset}")]
    TrailingCharacters { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        use ParseError::*;
        match self {
            UnexpectedEnd { offset }
            | UnexpectedChar { offset, .. }
            | InvalidEscape { offset }
            | LoneSurrogate { offset }
            | ControlCharacter { offset }
            | DuplicateKey { offset, .. }
            | InvalidNumber { offset }
            | UnsupportedNumber { offset, .. }
            | ByteOrderMark { offset }
            | InvalidUtf8 { offset }
            | TooDeep { offset }
            | TrailingCharacters { offset } => *offset,
        }
    }
}

/// Parses JSON text into a [`JsonValue`].
///
/// Integer literals (no fraction, no exponent) must fit in `i64`; every
/// other number becomes a normalized [`Real`].
pub fn parse_json(text: &str) -> Result<JsonValue, ParseError> {
    if text.starts_with('\u{feff}') {
        return Err(ParseError::ByteOrderMark { offset: 0 });
    }
    let mut parser = Parser {
        src: text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    parser.skip_ws();
    let value = parser.value(0)?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(ParseError::TrailingCharacters { offset: parser.pos });
    }
    Ok(value)
}

/// Like [`parse_json`] but starts from raw bytes, rejecting invalid UTF-8.
pub fn parse_json_bytes(bytes: &[u8]) -> Result<JsonValue, ParseError> {
    if bytes.starts_with(&[0xEF, 0xBB, 0xBF]) {
        return Err(ParseError::ByteOrderMark { offset: 0 });
    }
    let text = std::str::from_utf8(bytes).map_err(|e| ParseError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    parse_json(text)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(b' ' | b'\t' | b'\n' | b'\r') = self.peek() {
            self.pos += 1;
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.src[self.pos..].chars().next() {
            Some(found) => ParseError::UnexpectedChar {
                offset: self.pos,
                found,
            },
            None => ParseError::UnexpectedEnd { offset: self.pos },
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseError> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn literal(&mut self, word: &str, value: JsonValue) -> Result<JsonValue, ParseError> {
        for &b in word.as_bytes() {
            self.expect(b)?;
        }
        Ok(value)
    }

    fn value(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd { offset: self.pos }),
            Some(b'n') => self.literal("null", JsonValue::Null),
            Some(b't') => self.literal("true", JsonValue::Bool(true)),
            Some(b'f') => self.literal("false", JsonValue::Bool(false)),
            Some(b'"') => self.string().map(JsonValue::String),
            Some(b'-' | b'0'..=b'9') => self.number(),
            Some(b'[') => self.array(depth + 1),
            Some(b'{') => self.object(depth + 1),
            Some(_) => Err(self.unexpected()),
        }
    }

    fn array(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.pos });
        }
        self.pos += 1;
        let mut items = Vec::new();
        self.skip_ws();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(JsonValue::Array(items));
        }
        loop {
            self.skip_ws();
            items.push(self.value(depth)?);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(JsonValue::Array(items));
                }
                _ => return Err(self.unexpected()),
            }
        }
    }

    fn object(&mut self, depth: usize) -> Result<JsonValue, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError::TooDeep { offset: self.pos });
        }
        self.pos += 1;
        let mut map = Object::new();
        self.skip_ws();
        if self.peek() == Some(b'}') {
            self.pos += 1;
            return Ok(JsonValue::Object(map));
        }
        loop {
            self.skip_ws();
            if self.peek() != Some(b'"') {
                return Err(self.unexpected());
            }
            let key_offset = self.pos;
            let key = self.string()?;
            self.skip_ws();
            self.expect(b':')?;
            self.skip_ws();
            let value = self.value(depth)?;
            if map.contains_key(&key) {
                return Err(ParseError::DuplicateKey {
                    offset: key_offset,
                    key,
                });
            }
            map.insert(key, value);
            self.skip_ws();
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b'}') => {
                    self.pos += 1;
                    return Ok(JsonValue::Object(map));
                }
                _ => return Err(self.unexpected()),
            }
        }
    }

    fn hex4(&mut self) -> Result<u16, ParseError> {
        let start = self.pos;
        let chunk = self
            .bytes
            .get(start..start + 4)
            .ok_or(ParseError::InvalidEscape { offset: start })?;
        let mut v = 0u16;
        for &b in chunk {
            let d = (b as char)
                .to_digit(16)
                .ok_or(ParseError::InvalidEscape { offset: start })?;
            v = (v << 4) | d as u16;
        }
        self.pos += 4;
        Ok(v)
    }

    fn string(&mut self) -> Result<String, ParseError> {
        self.pos += 1;
        let mut out = String::new();
        loop {
            let run_start = self.pos;
            while let Some(b) = self.peek() {
                if b == b'"' || b == b'\\' || b < 0x20 {
                    break;
                }
                self.pos += 1;
            }
            // Stops only on ASCII bytes, so the slice is on char boundaries.
            out.push_str(&self.src[run_start..self.pos]);
            match self.peek() {
                None => return Err(ParseError::UnexpectedEnd { offset: self.pos }),
                Some(b'"') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(b'\\') => {
                    let escape_at = self.pos;
                    self.pos += 1;
                    let Some(code) = self.peek() else {
                        return Err(ParseError::UnexpectedEnd { offset: self.pos });
                    };
                    self.pos += 1;
                    match code {
                        b'"' => out.push('"'),
                        b'\\' => out.push('\\'),
                        b'/' => out.push('/'),
                        b'b' => out.push('\u{8}'),
                        b'f' => out.push('\u{c}'),
                        b'n' => out.push('\n'),
                        b'r' => out.push('\r'),
                        b't' => out.push('\t'),
                        b'u' => out.push(self.unicode_escape(escape_at)?),
                        _ => return Err(ParseError::InvalidEscape { offset: escape_at }),
                    }
                }
                Some(_) => return Err(ParseError::ControlCharacter { offset: self.pos }),
            }
        }
    }

    fn unicode_escape(&mut self, escape_at: usize) -> Result<char, ParseError> {
        let first = self.hex4()?;
        let code = match first {
            0xD800..=0xDBFF => {
                if self.bytes.get(self.pos..self.pos + 2) != Some(b"\\u") {
                    return Err(ParseError::LoneSurrogate { offset: escape_at });
                }
                self.pos += 2;
                let second = self.hex4()?;
                if !(0xDC00..=0xDFFF).contains(&second) {
                    return Err(ParseError::LoneSurrogate { offset: escape_at });
                }
                0x10000 + (((first as u32) - 0xD800) << 10) + ((second as u32) - 0xDC00)
            }
            0xDC00..=0xDFFF => return Err(ParseError::LoneSurrogate { offset: escape_at }),
            other => other as u32,
        };
        char::from_u32(code).ok_or(ParseError::InvalidEscape { offset: escape_at })
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while let Some(b'0'..=b'9') = self.peek() {
            self.pos += 1;
        }
        self.pos - start
    }

    fn number(&mut self) -> Result<JsonValue, ParseError> {
        let start = self.pos;
        let negative = self.peek() == Some(b'-');
        if negative {
            self.pos += 1;
        }
        let int_start = self.pos;
        match self.peek() {
            Some(b'0') => self.pos += 1,
            Some(b'1'..=b'9') => {
                self.digits();
            }
            _ => return Err(ParseError::InvalidNumber { offset: start }),
        }
        let int_part = &self.src[int_start..self.pos];

        let mut frac_part = "";
        if self.peek() == Some(b'.') {
            self.pos += 1;
            let frac_start = self.pos;
            if self.digits() == 0 {
                return Err(ParseError::InvalidNumber { offset: start });
            }
            frac_part = &self.src[frac_start..self.pos];
        }

        let mut exponent: Option<i64> = None;
        if let Some(b'e' | b'E') = self.peek() {
            self.pos += 1;
            let exp_negative = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let exp_start = self.pos;
            if self.digits() == 0 {
                return Err(ParseError::InvalidNumber { offset: start });
            }
            // Saturate absurd exponents; normalization rejects them unless
            // the mantissa is zero.
            let magnitude = self.src[exp_start..self.pos]
                .parse::<i64>()
                .unwrap_or(i64::MAX / 4)
                .min(i64::MAX / 4);
            exponent = Some(if exp_negative { -magnitude } else { magnitude });
        }

        if frac_part.is_empty() && exponent.is_none() {
            let literal = &self.src[start..self.pos];
            return literal
                .parse::<i64>()
                .map(JsonValue::Integer)
                .map_err(|_| ParseError::UnsupportedNumber {
                    offset: start,
                    reason: "integer literal outside the signed 64-bit range".to_owned(),
                });
        }

        let mut digits = String::with_capacity(int_part.len() + frac_part.len());
        digits.push_str(int_part);
        digits.push_str(frac_part);
        let exp = exponent.unwrap_or(0) - frac_part.len() as i64;
        Real::new(negative, &digits, exp)
            .map(JsonValue::Real)
            .map_err(|e| ParseError::UnsupportedNumber {
                offset: start,
                reason: e.to_string(),
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_arrays() {
        assert!(matches!(parse_json("null"), Ok(JsonValue::Null)));
        let v = parse_json("[1,2,3]").unwrap();
        match v {
            JsonValue::Array(items) => {
                assert_eq!(items.len(), 3);
                assert!(matches!(items[0], JsonValue::Integer(1)));
                assert!(matches!(items[2], JsonValue::Integer(3)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_json(" \n\ttrue\r "), Ok(JsonValue::Bool(true))));
    }

    #[test]
    fn exponent_form_normalizes() {
        // 2.50e1: digits "250", exponent 1 - 2 = -1 -> strip one zero -> "25" e0
        let JsonValue::Real(r) = parse_json("2.50e1").unwrap() else {
            panic!("expected real")
        };
        assert!(!r.is_negative());
        assert_eq!(r.digits(), "25");
        assert_eq!(r.exponent(), 0);

        let JsonValue::Real(r) = parse_json("-0.00120E+2").unwrap() else {
            panic!("expected real")
        };
        assert!(r.is_negative());
        assert_eq!((r.digits(), r.exponent()), ("12", -2));
    }

    #[test]
    fn integer_range() {
        assert!(matches!(
            parse_json("9223372036854775807"),
            Ok(JsonValue::Integer(i64::MAX))
        ));
        assert!(matches!(
            parse_json("-9223372036854775808"),
            Ok(JsonValue::Integer(i64::MIN))
        ));
        assert!(matches!(
            parse_json("9223372036854775808"),
            Err(ParseError::UnsupportedNumber { offset: 0, .. })
        ));
        assert!(matches!(
            parse_json("[1e2147483648]"),
            Err(ParseError::UnsupportedNumber { offset: 1, .. })
        ));
        assert!(parse_json("0e99999999999999999999999").is_ok());
    }

    #[test]
    fn malformed_numbers() {
        for text in ["01", "-", "1.", ".5", "1e", "1e+", "+1", "0x10", "--1"] {
            assert!(parse_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn strings_and_escapes() {
        let v = parse_json(r#""a\"b\\c\/\né😀""#).unwrap();
        assert_eq!(v.as_str(), Some("a\"b\\c/\né😀"));
        assert!(matches!(
            parse_json(r#""\ud83d""#),
            Err(ParseError::LoneSurrogate { offset: 1 })
        ));
        assert!(matches!(
            parse_json(r#""\ude00x""#),
            Err(ParseError::LoneSurrogate { offset: 1 })
        ));
        assert!(matches!(
            parse_json(r#""\ud83dA""#),
            Err(ParseError::LoneSurrogate { .. })
        ));
        assert!(matches!(
            parse_json("\"a\u{1}\""),
            Err(ParseError::ControlCharacter { offset: 2 })
        ));
        assert!(matches!(
            parse_json(r#""\x""#),
            Err(ParseError::InvalidEscape { offset: 1 })
        ));
    }

    #[test]
    fn structural_errors_carry_offsets() {
        assert_eq!(parse_json("[1,2").unwrap_err().offset(), 4);
        assert_eq!(parse_json("[1 2]").unwrap_err().offset(), 3);
        assert_eq!(parse_json("{\"a\" 1}").unwrap_err().offset(), 5);
        assert_eq!(parse_json("[1,]").unwrap_err().offset(), 3);
        assert_eq!(parse_json("true false").unwrap_err().offset(), 5);
        assert!(matches!(parse_json(""), Err(ParseError::UnexpectedEnd { offset: 0 })));
    }

    #[test]
    fn duplicate_keys_rejected() {
        assert_eq!(
            parse_json(r#"{"a":1,"b":2,"a":3}"#),
            Err(ParseError::DuplicateKey {
                offset: 13,
                key: "a".into()
            })
        );
    }

    #[test]
    fn bom_and_utf8() {
        assert!(matches!(
            parse_json("\u{feff}{}"),
            Err(ParseError::ByteOrderMark { .. })
        ));
        assert!(matches!(
            parse_json_bytes(b"\xEF\xBB\xBF{}"),
            Err(ParseError::ByteOrderMark { .. })
        ));
        assert!(matches!(
            parse_json_bytes(b"\"ab\xFF\""),
            Err(ParseError::InvalidUtf8 { offset: 3 })
        ));
    }

    #[test]
    fn nesting_limit() {
        let deep = "[".repeat(MAX_DEPTH + 1) + &"]".repeat(MAX_DEPTH + 1);
        assert!(matches!(parse_json(&deep), Err(ParseError::TooDeep { .. })));
        let ok = "[".repeat(MAX_DEPTH) + &"]".repeat(MAX_DEPTH);
        assert!(parse_json(&ok).is_ok());
    }
}
