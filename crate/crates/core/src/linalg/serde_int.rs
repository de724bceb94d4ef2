//! JSON encoding of exact numbers: integers are written as decimal strings,
//! rationals as `"p/q"` strings. Readers also accept plain JSON integers.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serializer};

#[derive(Deserialize)]
#[serde(untagged)]
enum Exact {
    Int(i64),
    Str(String),
}

pub(crate) fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|e| format!("bad integer {s:?}: {e}"))
}

pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(BigRational::new(parse_int(p)?, q))
        }
        None => Ok(BigRational::from(parse_int(s)?)),
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn serialize_ints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for a in v {
        seq.serialize_element(&a.to_string())?;
    }
    seq.end()
}

pub(crate) fn deserialize_ints<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
    let raw: Vec<Exact> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|e| match e {
            Exact::Int(i) => Ok(BigInt::from(i)),
            Exact::Str(s) => parse_int(&s).map_err(D::Error::custom),
        })
        .collect()
}

pub(crate) fn deserialize_rational<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    match Exact::deserialize(d)? {
        Exact::Int(i) => Ok(BigRational::from(BigInt::from(i))),
        Exact::Str(s) => parse_rational(&s).map_err(D::Error::custom),
    }
}

pub(crate) fn serialize_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(q))
}
