//! Serde adapters that write big integers as decimal strings, so JSON
//! consumers limited to 53-bit numbers read them without loss.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{de::Error, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let text = String::deserialize(d)?;
    parse(&text).map_err(D::Error::custom)
}

/// Strict decimal: optional leading '-', then digits, no leading '+' or
/// whitespace.
pub fn parse(text: &str) -> Result<BigInt, String> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("not a decimal integer: {text:?}"));
    }
    BigInt::from_str(text).map_err(|e| e.to_string())
}
