//! Exact rationals and their `"p/q"` string form.

use num_rational::Ratio;

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Always `p/q` with `q > 0`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Integer value of `r`, or `None` if `r` is not integral.
pub fn to_integer(r: &Rational) -> Option<i64> {
    r.is_integer().then(|| r.to_integer())
}

pub mod serde_str {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_str_vec {
    use super::{format_rational, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_opt {
    use super::{format_rational, Rational};
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(format_rational).serialize(s)
    }
}

pub mod serde_opt_vec {
    use super::{format_rational, Rational};
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
            .serialize(s)
    }
}
