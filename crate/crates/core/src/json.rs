//! Serde helpers that write arbitrary-precision integers as JSON numbers.

use std::fmt::Display;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub fn big_number<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
    n.serialize(s)
}

pub fn opt_big_number<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => big_number(v, s),
        None => s.serialize_none(),
    }
}
