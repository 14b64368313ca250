//! String/JSON conventions shared by every file format the crate emits.
//!
//! Rationals travel as `"p/q"` strings with the denominator omitted when it
//! is 1; no floating-point representation exists anywhere in the formats.

use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("malformed rational '{0}'")]
    Rational(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Syntactically fine but semantically invalid: bad normalization,
    /// signaling marginals, out-of-range expectations.
    #[error("invalid input: {0}")]
    Semantic(String),
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Result<Rat, ParseError> {
    let s = s.trim();
    let parse_int = |t: &str| BigInt::from_str(t).map_err(|_| ParseError::Rational(s.to_string()));
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == BigInt::from(0) {
                return Err(ParseError::Rational(s.to_string()));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

pub fn rat_to_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(rat_to_string(r))
}

pub fn rat_from_json(v: &serde_json::Value) -> Result<Rat, ParseError> {
    match v {
        serde_json::Value::String(s) => rat_from_str(s),
        serde_json::Value::Number(n) => {
            // Integer-valued JSON numbers are accepted; anything carrying a
            // fractional part must be written as a string.
            if let Some(i) = n.as_i64() {
                Ok(crate::rat(i))
            } else {
                Err(ParseError::Rational(n.to_string()))
            }
        }
        other => Err(ParseError::Rational(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn roundtrip() {
        for r in [rat(0), rat(7), rat(-3), ratio(1, 4), ratio(-22, 7)] {
            assert_eq!(rat_from_str(&rat_to_string(&r)).unwrap(), r);
        }
        assert_eq!(rat_to_string(&ratio(2, 4)), "1/2");
        assert_eq!(rat_to_string(&rat(5)), "5");
    }

    #[test]
    fn rejects_garbage() {
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("a/b").is_err());
        assert!(rat_from_str("1.5").is_err());
    }
}
