use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Laurent polynomial in `v` with arbitrary-precision integer coefficients.
///
/// Terms are kept sorted by ascending exponent and never hold a zero
/// coefficient, so two equal polynomials always have identical term lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial<C: Into<BigInt>>(coeff: C, exponent: i64) -> Self {
        let coeff = coeff.into();
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exponent, coeff)] }
        }
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `coeffs[i]` is the coefficient of `v^(min_exp + i)`.
    pub(crate) fn from_dense(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (min_exp + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// True for `±v^e`, the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs().is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exponent, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn max_deg(&self) -> Result<i64> {
        self.terms.last().map(|(e, _)| *e).ok_or(Error::ZeroPolynomial)
    }

    pub fn min_deg(&self) -> Result<i64> {
        self.terms.first().map(|(e, _)| *e).ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_coeff(&self) -> Result<&BigInt> {
        self.terms.last().map(|(_, c)| c).ok_or(Error::ZeroPolynomial)
    }

    pub fn trailing_coeff(&self) -> Result<&BigInt> {
        self.terms.first().map(|(_, c)| c).ok_or(Error::ZeroPolynomial)
    }

    /// Multiplies by `sign * v^exponent`; `sign` must be `1` or `-1`.
    pub fn shift(&self, exponent: i64, sign: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e + exponent, if sign < 0 { -c } else { c.clone() }))
            .collect();
        Self { terms }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * factor)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Splits `self = v^shift * P(v)` with `P` an ordinary polynomial whose
    /// constant term is nonzero; returns `shift` and the ascending coefficients of `P`.
    pub(crate) fn to_ordinary(&self) -> Option<(i64, Vec<BigInt>)> {
        let lo = self.min_deg().ok()?;
        let hi = self.max_deg().ok()?;
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        Some((lo, dense))
    }

    /// Exact quotient `self / divisor`, failing with [`Error::NonExactDivision`]
    /// when the divisor does not divide `self` in the Laurent ring.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.num_terms() == 1 {
            let (e, c) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (pe, pc) in &self.terms {
                let (q, r) = pc.div_rem(c);
                if !r.is_zero() {
                    return Err(Error::NonExactDivision);
                }
                terms.push((pe - e, q));
            }
            return Ok(Self { terms });
        }
        let p_lo = self.min_deg()?;
        let p_hi = self.max_deg()?;
        let q_lo = divisor.min_deg()?;
        let q_hi = divisor.max_deg()?;
        let p_deg = p_hi - p_lo;
        let q_deg = q_hi - q_lo;
        if p_deg < q_deg {
            return Err(Error::NonExactDivision);
        }
        let mut rem = vec![BigInt::zero(); (p_deg + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - p_lo) as usize] = c.clone();
        }
        let divisor_terms: Vec<(usize, &BigInt)> = divisor
            .terms
            .iter()
            .map(|(e, c)| ((e - q_lo) as usize, c))
            .collect();
        let lead = divisor.leading_coeff()?;
        let q_deg = q_deg as usize;
        let quot_len = (p_deg as usize) - q_deg + 1;
        let mut quot = vec![BigInt::zero(); quot_len];
        for i in (0..quot_len).rev() {
            let top = &rem[i + q_deg];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (j, c) in &divisor_terms {
                let t = &qi * *c;
                rem[i + j] -= t;
            }
            quot[i] = qi;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Self::from_dense(p_lo - q_lo, quot))
    }

    /// Canonical text form: `c*v^e` terms joined by ` + `, descending exponent.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*v^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let (c, e) = part
                .trim()
                .split_once("*v^")
                .ok_or_else(|| Error::Parse(format!("malformed term `{part}`")))?;
            let c: BigInt = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            let e: i64 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (*e, c.to_string()))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs.into_iter().rev() {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficient in polynomial"));
            }
            if let Some((prev, _)) = terms.last() {
                if *prev >= e {
                    return Err(D::Error::custom("exponents not strictly descending"));
                }
            }
            terms.push((e, c));
        }
        Ok(Self { terms })
    }
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (e, c) = &b.terms[j];
            out.push((*e, if negate_b { -c } else { c.clone() }));
            j += 1;
        } else {
            let e = a.terms[i].0;
            let c = if negate_b {
                &a.terms[i].1 - &b.terms[j].1
            } else {
                &a.terms[i].1 + &b.terms[j].1
            };
            if !c.is_zero() {
                out.push((e, c));
            }
            i += 1;
            j += 1;
        }
    }
    LaurentPoly { terms: out }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, false);
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(pe, pc)| (pe + e, pc * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let span = (hi - lo + 1) as usize;
        if span > 64 * self.terms.len() * rhs.terms.len() {
            // very sparse operands: avoid a huge dense buffer
            let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
            for (ea, ca) in &self.terms {
                for (eb, cb) in &rhs.terms {
                    *map.entry(ea + eb).or_default() += ca * cb;
                }
            }
            return LaurentPoly {
                terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            };
        }
        let mut buf = vec![BigInt::zero(); span];
        for (ea, ca) in &self.terms {
            let base = ea - lo;
            for (eb, cb) in &rhs.terms {
                buf[(base + eb) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(lo, buf)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl<'a> std::iter::Sum<&'a LaurentPoly> for LaurentPoly {
    fn sum<I: Iterator<Item = &'a LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |acc, p| &acc + p)
    }
}

impl std::iter::Product<LaurentPoly> for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |acc, p| &acc * &p)
    }
}
