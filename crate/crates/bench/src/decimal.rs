//! Decimal seconds to integer milliseconds, rounding half to even.

use anyhow::{bail, Result};

/// Parse a plain decimal number of seconds (`12`, `-3.5`, `0.0005`) into
/// milliseconds. Digits past the third decimal are rounded half to even.
pub fn seconds_to_ms(text: &str) -> Result<i64> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        bail!("`{text}` is not a decimal number");
    }
    let digit = |i: usize| frac.as_bytes().get(i).map_or(0, |b| (b - b'0') as i64);
    let whole: i64 = if int.is_empty() { 0 } else { int.parse()? };
    let mut ms = whole
        .checked_mul(1000)
        .and_then(|v| v.checked_add(digit(0) * 100 + digit(1) * 10 + digit(2)))
        .ok_or_else(|| anyhow::anyhow!("`{text}` is out of range"))?;
    let rest = frac.get(3..).unwrap_or("");
    if let Some(first) = rest.bytes().next() {
        let tail_nonzero = rest.bytes().skip(1).any(|b| b != b'0');
        let up = match first {
            b'6'..=b'9' => true,
            b'5' => tail_nonzero || ms % 2 == 1,
            _ => false,
        };
        if up {
            ms += 1;
        }
    }
    Ok(if neg { -ms } else { ms })
}

/// Milliseconds as seconds with exactly three decimals.
pub fn ms_to_seconds(ms: i64) -> String {
    let sign = if ms < 0 { "-" } else { "" };
    let a = ms.unsigned_abs();
    format!("{sign}{}.{:03}", a / 1000, a % 1000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(seconds_to_ms("12").unwrap(), 12_000);
        assert_eq!(seconds_to_ms("1.5").unwrap(), 1_500);
        assert_eq!(seconds_to_ms(".25").unwrap(), 250);
        assert_eq!(seconds_to_ms("-3.001").unwrap(), -3_001);
        assert_eq!(seconds_to_ms(" 7. ").unwrap(), 7_000);
    }

    #[test]
    fn half_even() {
        assert_eq!(seconds_to_ms("0.0005").unwrap(), 0);
        assert_eq!(seconds_to_ms("0.0015").unwrap(), 2);
        assert_eq!(seconds_to_ms("0.00150").unwrap(), 2);
        assert_eq!(seconds_to_ms("0.00051").unwrap(), 1);
        assert_eq!(seconds_to_ms("0.0025").unwrap(), 2);
        assert_eq!(seconds_to_ms("0.0026").unwrap(), 3);
        assert_eq!(seconds_to_ms("0.0024999").unwrap(), 2);
        assert_eq!(seconds_to_ms("-0.0015").unwrap(), -2);
    }

    #[test]
    fn rejects() {
        for bad in ["", ".", "1e3", "abc", "1.2.3", "--1"] {
            assert!(seconds_to_ms(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats() {
        assert_eq!(ms_to_seconds(1500), "1.500");
        assert_eq!(ms_to_seconds(7), "0.007");
        assert_eq!(ms_to_seconds(-7), "-0.007");
        for ms in [0, 1, 999, 1000, 123_456_789] {
            assert_eq!(seconds_to_ms(&ms_to_seconds(ms)).unwrap(), ms);
        }
    }
}
