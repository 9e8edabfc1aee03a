//! Formatting of extended-real thresholds.
//!
//! Thresholds may be `+inf` / `-inf`. JSON has no representation for them,
//! so they are written as the strings `"inf"` / `"-inf"`; finite values stay
//! numbers.

use serde::Serializer;

/// Text form used in CSV and JSON: `inf`, `-inf`, or the shortest
/// round-tripping decimal.
pub fn format(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        x.to_string()
    }
}

/// Inverse of [`format`]; also accepts `+inf`, `infinity` and the usual
/// decimal syntax.
pub fn parse(s: &str) -> Option<f64> {
    let x: f64 = s.trim().parse().ok()?;
    (!x.is_nan()).then_some(x)
}

/// `serialize_with` helper for threshold fields.
pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&format(*x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [f64::INFINITY, f64::NEG_INFINITY, 0.5, -1e-300, 12345.678] {
            assert_eq!(parse(&format(x)), Some(x));
        }
        assert_eq!(parse("+inf"), Some(f64::INFINITY));
        assert_eq!(parse("nan"), None);
    }
}
