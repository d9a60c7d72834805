//! The toy cryptosystems. None of these is secure; the contract is that decryption
//! inverts encryption for every valid key and message.
//!
//! Every key serialises to a versioned plain-text record (see each `to_key_file`).

pub mod dh;
pub mod fractional;
pub mod monoid;
pub mod rsa;
pub mod system;
pub mod zone;

use std::collections::HashMap;
use std::fmt::Display;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use dh::{DhExchange, DhParams};
pub use fractional::FractionalKey;
pub use monoid::MonoidCipherKey;
pub use rsa::RsaIdealKey;
pub use system::{CipherPolynomial, CipherSystem};
pub use zone::ZoneKey;

/// Whitespace-separated integers.
pub fn format_values<T: Display>(values: &[T]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_values<T: FromStr>(text: &str) -> Result<Vec<T>> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Ciphertext(format!("`{t}` is not a nonnegative integer")))
        })
        .collect()
}

/// `KEY=value` fields of a record line that starts with `head`.
pub(crate) fn record_fields<'a>(line: &'a str, head: &str) -> Result<HashMap<&'a str, &'a str>> {
    let rest = line
        .trim()
        .strip_prefix(head)
        .ok_or_else(|| Error::parse(format!("expected a `{head}` record, got `{}`", line.trim())))?;
    rest.split_whitespace()
        .map(|tok| {
            tok.split_once('=')
                .ok_or_else(|| Error::parse(format!("expected KEY=value, got `{tok}`")))
        })
        .collect()
}

pub(crate) fn field<T: FromStr>(fields: &HashMap<&str, &str>, key: &str) -> Result<T> {
    let raw = fields
        .get(key)
        .ok_or_else(|| Error::parse(format!("missing field {key}")))?;
    raw.parse()
        .map_err(|_| Error::parse(format!("bad value for {key}: `{raw}`")))
}

/// Strips the parentheses of an ideal-valued field.
pub(crate) fn ideal_field<T: FromStr>(fields: &HashMap<&str, &str>, key: &str) -> Result<T> {
    let raw = fields
        .get(key)
        .ok_or_else(|| Error::parse(format!("missing field {key}")))?;
    raw.trim_start_matches('(')
        .trim_end_matches(')')
        .parse()
        .map_err(|_| Error::parse(format!("bad value for {key}: `{raw}`")))
}

pub(crate) fn list_field(fields: &HashMap<&str, &str>, key: &str) -> Result<Vec<u64>> {
    let raw: String = field(fields, key)?;
    raw.split(',')
        .map(|x| {
            x.parse()
                .map_err(|_| Error::parse(format!("bad entry `{x}` in {key}")))
        })
        .collect()
}
