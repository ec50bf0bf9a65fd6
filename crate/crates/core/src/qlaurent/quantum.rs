//! Quantum integers `[k] = (v^{2k} - v^{-2k}) / (v^2 - v^{-2})` and the
//! factorials, multinomials and binomials built from them.

use num_bigint::BigInt;
use num_traits::One;

use super::LaurentPoly;
use crate::error::{Error, Result};

/// `[k] = v^{2k-2} + v^{2k-6} + ... + v^{-(2k-2)}`.
pub fn qint(k: i64) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    Ok(LaurentPoly::from_terms(
        (0..k).map(|i| (2 * k - 2 - 4 * i, BigInt::one())),
    ))
}

/// `[k]! = [k][k-1]...[1]`, with `[0]! = 1`.
pub fn qfact(k: i64) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    let mut acc = LaurentPoly::one();
    for i in 2..=k {
        acc = &acc * &qint(i)?;
    }
    Ok(acc)
}

/// Symmetric multinomial `[p_1 + ... + p_r]! / ([p_1]! ... [p_r]!)`, computed
/// by exact division so that a non-divisible quotient trips an error.
pub fn qmultinom(parts: &[i64]) -> Result<LaurentPoly> {
    if let Some(&bad) = parts.iter().find(|&&p| p < 0) {
        return Err(Error::NegativeArgument(bad));
    }
    let total: i64 = parts.iter().sum();
    let mut acc = qfact(total)?;
    for &part in parts {
        acc = acc.exact_div(&qfact(part)?)?;
    }
    Ok(acc)
}

/// Table of quantum binomials `[n choose k]` for `0 <= k <= n <= max_n`,
/// filled by the symmetric q-Pascal rule
/// `[n; k] = v^{-2(n-k)} [n-1; k-1] + v^{2k} [n-1; k]`.
///
/// No division is involved, which makes this the route used by the state sum;
/// [`qmultinom`] is the independent exact-division route.
#[derive(Clone, Debug)]
pub struct QBinomials {
    rows: Vec<Vec<LaurentPoly>>,
}

impl QBinomials {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![LaurentPoly::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut entry = LaurentPoly::zero();
                if k >= 1 {
                    entry += &prev[k - 1].shift(-2 * (n - k) as i64, 1);
                }
                if k < n {
                    entry += &prev[k].shift(2 * k as i64, 1);
                }
                row.push(entry);
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[n choose k]`, or `None` when `k` lies outside `0..=n` (the binomial
    /// does not contribute).
    pub fn get(&self, n: i64, k: i64) -> Option<&LaurentPoly> {
        if n < 0 || k < 0 || k > n {
            return None;
        }
        let row = self.rows.get(n as usize).unwrap_or_else(|| {
            panic!("QBinomials table built up to {} but [{n};{k}] requested", self.max_n())
        });
        Some(&row[k as usize])
    }

    /// Multinomial `[p_1 + ... + p_r; p_1, ..., p_r]` as a product of binomials.
    pub fn multinomial(&self, parts: &[i64]) -> Option<LaurentPoly> {
        let mut acc = LaurentPoly::one();
        let mut running = 0;
        for &p in parts {
            if p < 0 {
                return None;
            }
            running += p;
            acc = &acc * self.get(running, p)?;
        }
        Some(acc)
    }
}
