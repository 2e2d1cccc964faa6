//! Rationals as exact `"p/q"` strings (`"p"` when `q = 1`).

use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

use crate::Rational;

pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(q)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse(&s).map_err(D::Error::custom)
}

pub fn parse(s: &str) -> Result<Rational, String> {
    let bad = || format!("invalid rational {s:?}");
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse().map_err(|_| bad())?, d.parse().map_err(|_| bad())?),
        None => (s.parse().map_err(|_| bad())?, 1.into()),
    };
    if num_traits::Zero::is_zero(&d) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

pub mod option {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(|q| q.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse(&s).map_err(D::Error::custom))
            .transpose()
    }
}
