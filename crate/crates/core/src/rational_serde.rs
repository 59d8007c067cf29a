//! Rationals serialize as strings such as `"3"` or `"-5/2"`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    q.to_string().serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(serde::de::Error::custom)
}

pub fn parse(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let bad = || alloc::format!("not a rational: {s:?}");
    match t.split_once('/') {
        Some((_, d)) if d.trim().trim_start_matches('+').chars().all(|c| c == '0') => Err(bad()),
        _ => BigRational::from_str(t).map_err(|_| bad()),
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse(s).map_err(serde::de::Error::custom)).collect()
    }
}
