use std::fmt;
use std::str::FromStr;

use geodstab_core::Q;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational that reads from an integer or a `"p/q"` string and always
/// writes a string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Q);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a rational literal (expected `n` or `p/q`)")]
pub struct ParseRationalError(pub String);

pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: i128 = n.parse().map_err(|_| err())?;
    let d: i128 = d.parse().map_err(|_| err())?;
    if d == 0 {
        return Err(err());
    }
    Ok(Q::new(n, d))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_q(s).map(Rational)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Q> for Rational {
    fn from(q: Q) -> Self {
        Rational(q)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(Q::from_integer(n as i128))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        i64::try_from(v)
            .map(Rational::from)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RationalVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_q("3").unwrap(), Q::from_integer(3));
        assert_eq!(parse_q("-2/4").unwrap(), Q::new(-1, 2));
        assert_eq!(parse_q(" 5 / 3 ").unwrap(), Q::new(5, 3));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn json_forms() {
        let v: Vec<Rational> = serde_json::from_str(r#"[1, "1/2", "-3"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1","1/2","-3"]"#);
    }
}
