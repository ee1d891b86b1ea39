//! Decimal numbers in normalized scientific form.

use std::fmt;

use thiserror::Error;

/// Reasons a numeric literal or decoded number cannot be represented.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("exponent out of range")]
    ExponentOutOfRange,
    #[error("digit string must be a non-empty run of ASCII digits")]
    InvalidDigits,
}

/// A non-integer (or non-`i64`) JSON number: `sign * digits * 10^exponent`.
///
/// The digit string never has leading or trailing zeros. Zero is the digit
/// string `"0"` with exponent 0 and a positive sign, so structurally equal
/// reals are numerically equal and vice versa.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Real {
    negative: bool,
    digits: String,
    exponent: i32,
}

impl Real {
    pub fn zero() -> Self {
        Real {
            negative: false,
            digits: "0".to_owned(),
            exponent: 0,
        }
    }

    /// Builds a normalized real from an arbitrary digit string and exponent.
    pub fn new(negative: bool, digits: &str, exponent: i64) -> Result<Self, NumberError> {
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(NumberError::InvalidDigits);
        }
        let trimmed = digits.trim_start_matches('0');
        if trimmed.is_empty() {
            return Ok(Real::zero());
        }
        let significant = trimmed.trim_end_matches('0');
        let shift = (trimmed.len() - significant.len()) as i64;
        let exponent = exponent
            .checked_add(shift)
            .and_then(|e| i32::try_from(e).ok())
            .ok_or(NumberError::ExponentOutOfRange)?;
        Ok(Real {
            negative,
            digits: significant.to_owned(),
            exponent,
        })
    }

    pub fn from_i64(n: i64) -> Self {
        let digits = n.unsigned_abs().to_string();
        // Only trailing zeros move into the exponent, which always fits.
        Real::new(n < 0, &digits, 0).expect("i64 digits are always representable")
    }

    /// Builds a real from a signed integer mantissa and a base-10 exponent.
    pub fn from_parts(mantissa: i64, exponent: i64) -> Result<Self, NumberError> {
        let digits = mantissa.unsigned_abs().to_string();
        Real::new(mantissa < 0, &digits, exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.digits == "0"
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn digits(&self) -> &str {
        &self.digits
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    /// The signed digit string as an integer, if it fits in `i64`.
    pub fn mantissa_i64(&self) -> Option<i64> {
        let magnitude: i128 = self.digits.parse().ok()?;
        let signed = if self.negative { -magnitude } else { magnitude };
        i64::try_from(signed).ok()
    }

    /// The exact integer value, if this number is integral and fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.exponent < 0 {
            return None;
        }
        let width = self.digits.len() + self.exponent as usize;
        if width > 19 {
            return None;
        }
        let magnitude: i128 = self.digits.parse::<i128>().ok()? * 10i128.pow(self.exponent as u32);
        let signed = if self.negative { -magnitude } else { magnitude };
        i64::try_from(signed).ok()
    }

    /// Whether the value has no fractional part.
    pub fn is_integral(&self) -> bool {
        self.exponent >= 0
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_real(self))
    }
}

fn decimal_len(n: i64) -> usize {
    let sign = usize::from(n < 0);
    sign + n.unsigned_abs().checked_ilog10().map_or(1, |l| l as usize + 1)
}

/// Shortest JSON literal for a real. Candidate forms are the plain decimal,
/// an integer mantissa with exponent, and one-digit scientific notation;
/// ties go to that order. A plain integral form is only used when it parses
/// back as an `i64`.
pub(crate) fn format_real(r: &Real) -> String {
    if r.is_zero() {
        return "0".to_owned();
    }
    let sign = if r.negative { "-" } else { "" };
    let digits = r.digits.as_str();
    let n = digits.len() as i64;
    let e = r.exponent as i64;

    let plain_len = if e >= 0 {
        r.to_i64().map(|_| (n + e) as usize)
    } else if n + e > 0 {
        Some(n as usize + 1)
    } else {
        Some((2 - (n + e) + n) as usize)
    };
    let mantissa_len = (e != 0).then(|| n as usize + 1 + decimal_len(e));
    let sci_exp = e + n - 1;
    let sci_len = if n > 1 { n as usize + 1 } else { 1 } + 1 + decimal_len(sci_exp);

    let mut best = (usize::MAX, 0u8);
    for (len, kind) in [(plain_len, 0u8), (mantissa_len, 1), (Some(sci_len), 2)] {
        if let Some(len) = len {
            if len < best.0 {
                best = (len, kind);
            }
        }
    }

    let mut out = String::with_capacity(best.0 + 1);
    out.push_str(sign);
    match best.1 {
        0 if e >= 0 => {
            out.push_str(digits);
            out.extend(std::iter::repeat_n('0', e as usize));
        }
        0 => {
            let point = n + e;
            if point > 0 {
                out.push_str(&digits[..point as usize]);
                out.push('.');
                out.push_str(&digits[point as usize..]);
            } else {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', (-point) as usize));
                out.push_str(digits);
            }
        }
        1 => {
            out.push_str(digits);
            out.push('e');
            out.push_str(&e.to_string());
        }
        _ => {
            out.push_str(&digits[..1]);
            if n > 1 {
                out.push('.');
                out.push_str(&digits[1..]);
            }
            out.push('e');
            out.push_str(&sci_exp.to_string());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(neg: bool, digits: &str, exp: i64) -> Real {
        Real::new(neg, digits, exp).unwrap()
    }

    #[test]
    fn normalizes_leading_and_trailing_zeros() {
        let r = real(false, "002500", -2);
        assert_eq!(r.digits(), "25");
        assert_eq!(r.exponent(), 0);
        assert_eq!(real(true, "0000", 17), Real::zero());
    }

    #[test]
    fn exponent_overflow_is_rejected() {
        assert_eq!(
            Real::new(false, "1", i64::from(i32::MAX) + 1),
            Err(NumberError::ExponentOutOfRange)
        );
        assert_eq!(
            Real::new(false, "10", i64::from(i32::MAX)),
            Err(NumberError::ExponentOutOfRange)
        );
        // zero never overflows
        assert_eq!(Real::new(false, "0", i64::MAX), Ok(Real::zero()));
    }

    #[test]
    fn integer_views() {
        assert_eq!(Real::from_i64(i64::MIN).to_i64(), Some(i64::MIN));
        assert_eq!(Real::from_i64(i64::MIN).mantissa_i64(), Some(i64::MIN));
        assert_eq!(Real::from_i64(1200).digits(), "12");
        assert_eq!(real(false, "1", 19).to_i64(), None);
        assert_eq!(real(false, "25", -1).to_i64(), None);
        assert_eq!(real(false, "12345678901234567891", 0).mantissa_i64(), None);
    }

    #[test]
    fn shortest_forms() {
        let cases = [
            (real(false, "25", -1), "2.5"),
            (real(true, "25", -3), "-0.025"),
            (real(false, "1", -7), "1e-7"),
            (real(false, "25", 0), "25"),
            (real(false, "1", 3), "1e3"),
            (real(false, "12", 2), "1200"),
            (real(false, "1", 19), "1e19"),
            (real(false, "123", 20), "123e20"),
            (real(false, "12345678901234567890123", 0), "1.2345678901234567890123e22"),
            (Real::zero(), "0"),
        ];
        for (r, s) in cases {
            assert_eq!(format_real(&r), s, "{r:?}");
        }
    }

    #[test]
    fn decimal_len_matches_to_string() {
        for n in [0i64, 1, 9, 10, -1, -10, 99, 100, i64::MAX, i64::MIN] {
            assert_eq!(decimal_len(n), n.to_string().len(), "{n}");
        }
    }
}
