use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the Montesinos knot `M(1/r, 1/(s - 1/u), 1/t)`.
///
/// Construction enforces `r, u, t` odd, `s` even, `u <= -1`, `r < -1` and
/// `s, t > 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct KnotParams {
    r: i64,
    s: i64,
    t: i64,
    u: i64,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    r: i64,
    s: i64,
    t: i64,
    u: i64,
}

impl TryFrom<RawParams> for KnotParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        KnotParams::new(raw.r, raw.s, raw.t, raw.u)
    }
}

impl From<KnotParams> for RawParams {
    fn from(p: KnotParams) -> Self {
        RawParams { r: p.r, s: p.s, t: p.t, u: p.u }
    }
}

impl KnotParams {
    pub fn new(r: i64, s: i64, t: i64, u: i64) -> Result<Self> {
        let mut problems = Vec::new();
        if r % 2 == 0 {
            problems.push("r must be odd");
        }
        if t % 2 == 0 {
            problems.push("t must be odd");
        }
        if u % 2 == 0 {
            problems.push("u must be odd");
        }
        if s % 2 != 0 {
            problems.push("s must be even");
        }
        if u > -1 {
            problems.push("u must be <= -1");
        }
        if r >= -1 {
            problems.push("r must be < -1");
        }
        if s <= 1 {
            problems.push("s must be > 1");
        }
        if t <= 1 {
            problems.push("t must be > 1");
        }
        if problems.is_empty() {
            Ok(Self { r, s, t, u })
        } else {
            Err(Error::InvalidParams(format!(
                "(r,s,t,u) = ({r},{s},{t},{u}): {}",
                problems.join(", ")
            )))
        }
    }

    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn s(&self) -> i64 {
        self.s
    }
    pub fn t(&self) -> i64 {
        self.t
    }
    pub fn u(&self) -> i64 {
        self.u
    }

    /// Canonical key `r_s_t_u`.
    pub fn key(&self) -> String {
        format!("{}_{}_{}_{}", self.r, self.s, self.t, self.u)
    }

    /// `(s + t - 1) / 2`, the period of the degree quasi-polynomial in the
    /// generic case.
    pub fn generic_period(&self) -> i64 {
        (self.s + self.t - 1) / 2
    }
}

impl fmt::Display for KnotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.r, self.s, self.t, self.u)
    }
}

impl FromStr for KnotParams {
    type Err = Error;
    /// Accepts the canonical key `r_s_t_u`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split('_')
            .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad parameter key `{s}`"))))
            .collect::<Result<_>>()?;
        match parts[..] {
            [r, s, t, u] => KnotParams::new(r, s, t, u),
            _ => Err(Error::Parse(format!("bad parameter key `{s}`"))),
        }
    }
}
