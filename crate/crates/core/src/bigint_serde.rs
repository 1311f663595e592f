//! JSON integers of arbitrary size: small values as numbers, large ones as
//! decimal strings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Text(String),
}

fn from_raw<E: serde::de::Error>(r: Raw) -> Result<BigInt, E> {
    match r {
        Raw::Int(n) => Ok(BigInt::from(n)),
        Raw::Text(t) => BigInt::from_str(t.trim()).map_err(|_| E::custom(format!("malformed integer '{t}'"))),
    }
}

pub fn to_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(n.to_string()),
    }
}

pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    v.iter().map(to_json).collect::<Vec<_>>().serialize(s)
}

pub fn deserialize_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    Vec::<Raw>::deserialize(d)?.into_iter().map(from_raw).collect()
}

pub fn serialize_opt<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    v.as_ref().map(to_json).serialize(s)
}
