use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::LaurentPoly;
use crate::error::{Error, Result};

/// Element of the fraction field of `Z[v, v^-1]`.
///
/// Fractions are not automatically reduced; call [`frac_reduce`] (or use the
/// reducing free functions) when a canonical representative is needed.
/// Equality compares values, not representatives.
#[derive(Clone, Debug)]
pub struct PolyFraction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl PolyFraction {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { numerator: p, denominator: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Sum without gcd reduction; like denominators just add numerators.
    pub fn add_unreduced(&self, other: &PolyFraction) -> PolyFraction {
        if self.denominator == other.denominator {
            return PolyFraction {
                numerator: &self.numerator + &other.numerator,
                denominator: self.denominator.clone(),
            };
        }
        PolyFraction {
            numerator: &(&self.numerator * &other.denominator)
                + &(&other.numerator * &self.denominator),
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn mul_unreduced(&self, other: &PolyFraction) -> PolyFraction {
        PolyFraction {
            numerator: &self.numerator * &other.numerator,
            denominator: &self.denominator * &other.denominator,
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> PolyFraction {
        PolyFraction {
            numerator: &self.numerator * p,
            denominator: self.denominator.clone(),
        }
    }

    pub fn neg(&self) -> PolyFraction {
        PolyFraction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    fn denominator_span(&self) -> i64 {
        match (self.denominator.max_deg(), self.denominator.min_deg()) {
            (Ok(hi), Ok(lo)) => hi - lo,
            _ => 0,
        }
    }
}

impl PartialEq for PolyFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl Eq for PolyFraction {}

fn trim(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut p);
    let c = content(&p);
    if !c.is_zero() && c != BigInt::from(1) {
        for x in &mut p {
            *x /= &c;
        }
    }
    p
}

/// Pseudo-remainder of `a` by `b` (ascending coefficient vectors, `b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        let off = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[off + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor in the Laurent ring, normalized to an ordinary
/// polynomial with nonzero constant term and positive leading coefficient.
///
/// Both operands are shifted to ordinary polynomials and run through the
/// primitive polynomial remainder sequence over the integers; the integer
/// content gcd is restored at the end.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let normalize = |p: &LaurentPoly| -> LaurentPoly {
        match p.to_ordinary() {
            None => LaurentPoly::zero(),
            Some((_, dense)) => {
                let q = LaurentPoly::from_dense(0, dense);
                if q.leading_coeff().map(|c| c.is_negative()).unwrap_or(false) {
                    -q
                } else {
                    q
                }
            }
        }
    };
    let (Some((_, mut x)), Some((_, mut y))) = (a.to_ordinary(), b.to_ordinary()) else {
        return if a.is_zero() { normalize(b) } else { normalize(a) };
    };
    let c = content(&x).gcd(&content(&y));
    x = primitive(x);
    y = primitive(y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    loop {
        if y.len() == 1 {
            x = vec![BigInt::from(1)];
            break;
        }
        let r = primitive(pseudo_rem(&x, &y));
        if r.is_empty() {
            x = y;
            break;
        }
        x = y;
        y = r;
    }
    let g = LaurentPoly::from_dense(0, x).scale(&c);
    normalize(&g)
}

/// Divides out the gcd of numerator and denominator. A unit denominator
/// `±v^e` is folded into the numerator; otherwise the denominator is made to
/// have a positive leading coefficient.
pub fn frac_reduce(f: &PolyFraction) -> PolyFraction {
    if f.numerator.is_zero() {
        return PolyFraction::zero();
    }
    let g = poly_gcd(&f.numerator, &f.denominator);
    let (mut num, mut den) = if g.is_one() {
        (f.numerator.clone(), f.denominator.clone())
    } else {
        (
            f.numerator.exact_div(&g).expect("gcd divides numerator"),
            f.denominator.exact_div(&g).expect("gcd divides denominator"),
        )
    };
    if den.is_unit() {
        let e = den.max_deg().expect("nonzero denominator");
        let sign = if den.leading_coeff().unwrap().is_negative() { -1 } else { 1 };
        num = num.shift(-e, sign);
        den = LaurentPoly::one();
    } else if den.leading_coeff().unwrap().is_negative() {
        num = -num;
        den = -den;
    }
    PolyFraction { numerator: num, denominator: den }
}

pub fn frac_add(a: &PolyFraction, b: &PolyFraction) -> PolyFraction {
    frac_reduce(&a.add_unreduced(b))
}

pub fn frac_mul(a: &PolyFraction, b: &PolyFraction) -> PolyFraction {
    frac_reduce(&a.mul_unreduced(b))
}

/// Converts to a Laurent polynomial; fails with [`Error::NotPolynomial`]
/// unless the reduced denominator is a unit.
pub fn frac_to_poly(f: &PolyFraction) -> Result<LaurentPoly> {
    match f.numerator.exact_div(&f.denominator) {
        Ok(p) => Ok(p),
        Err(Error::NonExactDivision) => Err(Error::NotPolynomial),
        Err(e) => Err(e),
    }
}

/// Running sum of fractions that reduces only when the denominator's degree
/// span exceeds `threshold`, plus once in [`FracAccumulator::finish`].
#[derive(Clone, Debug)]
pub struct FracAccumulator {
    sum: PolyFraction,
    threshold: i64,
    reductions: usize,
}

impl FracAccumulator {
    pub const DEFAULT_THRESHOLD: i64 = 512;

    pub fn new(threshold: i64) -> Self {
        Self { sum: PolyFraction::zero(), threshold, reductions: 0 }
    }

    pub fn add(&mut self, f: &PolyFraction) {
        if f.is_zero() {
            return;
        }
        if self.sum.is_zero() {
            self.sum = f.clone();
            return;
        }
        self.sum = self.sum.add_unreduced(f);
        if self.sum.denominator_span() > self.threshold {
            self.sum = frac_reduce(&self.sum);
            self.reductions += 1;
        }
    }

    pub fn reductions(&self) -> usize {
        self.reductions
    }

    /// The unreduced running sum.
    pub fn current(&self) -> &PolyFraction {
        &self.sum
    }

    pub fn finish(self) -> PolyFraction {
        frac_reduce(&self.sum)
    }
}

impl Default for FracAccumulator {
    fn default() -> Self {
        Self::new(Self::DEFAULT_THRESHOLD)
    }
}
