//! Colored Jones polynomial of `M(1/r, 1/(s - 1/u), 1/t)` through the
//! knotted-trivalent-graph state sum over the domain `D_n`.
//!
//! Every summand carries the denominator `Θ(a,n,n) Θ(b,n,n) Θ(c,n,n) Θ(d,n,n)`.
//! Each `Θ(x,n,n)` divides `F = [2n+1]!`, so all summands are rewritten over
//! the shared denominator `F^4` and the accumulation is pure numerator
//! addition; a single exact division recovers the polynomial at the end.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktg::{circle, framing_power, AdmissibleTriple, KtgEvaluator, SignedMonomial};
use crate::params::KnotParams;
use crate::qlaurent::{frac_to_poly, qfact, qint, FracAccumulator, LaurentPoly, PolyFraction};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A lattice point `(a, b, c, d)` of `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColorTuple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl ColorTuple {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    pub fn in_domain(&self, n: i64) -> bool {
        let even_in_range = |x: i64| x % 2 == 0 && (0..=2 * n).contains(&x);
        [self.a, self.b, self.c, self.d].into_iter().all(even_in_range)
            && AdmissibleTriple::new(self.a, self.b, self.c).is_ok()
    }
}

/// Lexicographic enumeration of `D_n`: even `a, b, c, d` in `[0, 2n]` with
/// `(a, b, c)` admissible.
pub fn domain_points(n: i64) -> Vec<ColorTuple> {
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    for a in (0..=2 * n).step_by(2) {
        for b in (0..=2 * n).step_by(2) {
            for c in (0..=2 * n).step_by(2) {
                if AdmissibleTriple::new(a, b, c).is_err() {
                    continue;
                }
                for d in (0..=2 * n).step_by(2) {
                    out.push(ColorTuple { a, b, c, d });
                }
            }
        }
    }
    out
}

/// Cached factors of the state sum at a fixed ambient color `n`.
pub struct StateSum {
    params: KnotParams,
    n: i64,
    ktg: KtgEvaluator,
    /// `Θ(x, n, n)` keyed by `x / 2`
    thetas: Vec<LaurentPoly>,
    /// `[2n+1]! / Θ(x, n, n)` keyed by `x / 2`
    cofactors: Vec<LaurentPoly>,
    common_denominator: LaurentPoly,
    /// `Δ(b, n, n, d, n, n)` keyed by `(b / 2, d / 2)`
    outer_deltas: HashMap<(i64, i64), LaurentPoly>,
}

impl StateSum {
    pub fn new(params: KnotParams, n: i64) -> Result<Self> {
        if n < 0 {
            return Err(Error::NegativeArgument(n));
        }
        let ktg = KtgEvaluator::for_state_sum(n);
        let mut thetas = Vec::new();
        let mut cofactors = Vec::new();
        for h in 0..=n {
            thetas.push(ktg.theta(2 * h, n, n)?);
            cofactors.push(theta_cofactor(2 * h, n)?);
        }
        let common_denominator = qfact(2 * n + 1)?.pow(4);
        let mut outer_deltas = HashMap::new();
        for hb in 0..=n {
            for hd in 0..=n {
                outer_deltas.insert((hb, hd), ktg.delta6j(2 * hb, n, n, 2 * hd, n, n)?);
            }
        }
        Ok(Self { params, n, ktg, thetas, cofactors, common_denominator, outer_deltas })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn check(&self, colors: &ColorTuple) -> Result<()> {
        if colors.in_domain(self.n) {
            Ok(())
        } else {
            Err(Error::InadmissibleColoring(colors.a, colors.b, colors.c))
        }
    }

    /// Sign and `v`-power of `f^r(a) f^s(b) f^t(c) f^u(d)`.
    fn framing(&self, colors: &ColorTuple) -> Result<SignedMonomial> {
        let p = &self.params;
        Ok(framing_power(colors.a, p.r())?
            * framing_power(colors.b, p.s())?
            * framing_power(colors.c, p.t())?
            * framing_power(colors.d, p.u())?)
    }

    /// The summand's numerator before division by the four thetas.
    fn raw_numerator(&self, colors: &ColorTuple) -> Result<LaurentPoly> {
        let ColorTuple { a, b, c, d } = *colors;
        let n = self.n;
        let inner = self.ktg.delta6j(a, b, c, n, n, n)?;
        let outer = &self.outer_deltas[&(b / 2, d / 2)];
        if inner.is_zero() || outer.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut acc = self.ktg.theta(a, b, c)?;
        acc = &acc * &inner;
        acc = &acc * &inner;
        acc = &acc * outer;
        for x in [a, b, c, d] {
            acc = &acc * &circle(x)?;
        }
        Ok(self.framing(colors)?.apply(&acc))
    }

    /// The summand as a fraction over `Θ(a,n,n) Θ(b,n,n) Θ(c,n,n) Θ(d,n,n)`.
    pub fn summand(&self, colors: &ColorTuple) -> Result<PolyFraction> {
        self.check(colors)?;
        let num = self.raw_numerator(colors)?;
        if num.is_zero() {
            return Ok(PolyFraction::zero());
        }
        let den = [colors.a, colors.b, colors.c, colors.d]
            .iter()
            .map(|x| self.thetas[(*x / 2) as usize].clone())
            .product();
        PolyFraction::new(num, den)
    }

    /// The summand's numerator over the shared denominator `[2n+1]!^4`.
    pub fn summand_over_common(&self, colors: &ColorTuple) -> Result<LaurentPoly> {
        self.check(colors)?;
        let mut num = self.raw_numerator(colors)?;
        if num.is_zero() {
            return Ok(num);
        }
        for x in [colors.a, colors.b, colors.c, colors.d] {
            num = &num * &self.cofactors[(x / 2) as usize];
        }
        Ok(num)
    }

    pub fn common_denominator(&self) -> &LaurentPoly {
        &self.common_denominator
    }

    /// `Σ_d Δ(b,n,n,d,n,n) f^u(d) O^d [2n+1]!/Θ(d,n,n)`, the part of the sum
    /// that depends on `b` and `d` only.
    fn outer_sum(&self, b: i64) -> Result<LaurentPoly> {
        let mut total = LaurentPoly::zero();
        for d in (0..=2 * self.n).step_by(2) {
            let delta = &self.outer_deltas[&(b / 2, d / 2)];
            if delta.is_zero() {
                continue;
            }
            let term = &(delta * &circle(d)?) * &self.cofactors[(d / 2) as usize];
            total += &framing_power(d, self.params.u())?.apply(&term);
        }
        Ok(total)
    }

    /// Everything in the summand that depends on `(a, b, c)`, over `[2n+1]!^3`.
    fn inner_part(&self, a: i64, b: i64, c: i64) -> Result<LaurentPoly> {
        let n = self.n;
        let p = &self.params;
        let inner = self.ktg.delta6j(a, b, c, n, n, n)?;
        if inner.is_zero() {
            return Ok(inner);
        }
        let mut acc = self.ktg.theta(a, b, c)?;
        acc = &acc * &(&inner * &inner);
        for x in [a, b, c] {
            acc = &acc * &(&circle(x)? * &self.cofactors[(x / 2) as usize]);
        }
        let framing = framing_power(a, p.r())? * framing_power(b, p.s())? * framing_power(c, p.t())?;
        Ok(framing.apply(&acc))
    }

    /// `Σ_{D_n}` of the summands, as a fraction over `[2n+1]!^4`, grouped as
    /// `Σ_{(a,b,c)} inner(a,b,c) · outer(b)`.
    pub fn total(&self) -> Result<PolyFraction> {
        let n = self.n;
        let outer: Vec<LaurentPoly> = (0..=n)
            .map(|h| self.outer_sum(2 * h))
            .collect::<Result<_>>()?;
        let mut triples = Vec::new();
        for a in (0..=2 * n).step_by(2) {
            for b in (0..=2 * n).step_by(2) {
                for c in (0..=2 * n).step_by(2) {
                    if AdmissibleTriple::new(a, b, c).is_ok() {
                        triples.push((a, b, c));
                    }
                }
            }
        }
        let eval = |&(a, b, c): &(i64, i64, i64)| -> Result<LaurentPoly> {
            Ok(&self.inner_part(a, b, c)? * &outer[(b / 2) as usize])
        };
        #[cfg(feature = "parallel")]
        let parts: Vec<LaurentPoly> = triples.par_iter().map(eval).collect::<Result<_>>()?;
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<LaurentPoly> = triples.iter().map(eval).collect::<Result<_>>()?;
        let num = sum_in_order(&parts);
        PolyFraction::new(num, self.common_denominator.clone())
    }

    /// Sum of per-tuple summands in the given order, through a
    /// [`FracAccumulator`].
    pub fn total_over(&self, points: &[ColorTuple]) -> Result<PolyFraction> {
        let eval = |c: &ColorTuple| -> Result<PolyFraction> {
            PolyFraction::new(self.summand_over_common(c)?, self.common_denominator.clone())
        };
        #[cfg(feature = "parallel")]
        let parts: Vec<PolyFraction> = points.par_iter().map(eval).collect::<Result<_>>()?;
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<PolyFraction> = points.iter().map(eval).collect::<Result<_>>()?;
        let mut acc = FracAccumulator::default();
        for p in &parts {
            acc.add(p);
        }
        Ok(acc.current().clone())
    }

    /// `(-1)^n f(n)^{-4u}`.
    pub fn prefactor(&self) -> Result<SignedMonomial> {
        let sign = if self.n % 2 == 0 { 1 } else { -1 };
        Ok(SignedMonomial { sign, exponent: 0 } * framing_power(self.n, -4 * self.params.u())?)
    }

    fn finish(&self, sum: PolyFraction) -> Result<LaurentPoly> {
        let poly = frac_to_poly(&sum)?;
        Ok(self.prefactor()?.apply(&poly))
    }
}

/// Deterministic left-to-right sum.
fn sum_in_order(parts: &[LaurentPoly]) -> LaurentPoly {
    parts.iter().sum()
}

/// `[2n+1]! / Θ(x, n, n) = (-1)^{n+x/2} [n-x/2]! [x/2]!^2 [n+x/2+2] ... [2n+1]`.
pub fn theta_cofactor(x: i64, n: i64) -> Result<LaurentPoly> {
    let h = x / 2;
    let mut acc = &qfact(n - h)? * &qfact(h)?.pow(2);
    for k in (n + h + 2)..=(2 * n + 1) {
        acc = &acc * &qint(k)?;
    }
    Ok(if (n + h) % 2 == 0 { acc } else { -acc })
}

/// Summand of the state sum at `colors`, as an unreduced fraction over the
/// product of the four `Θ(x, n, n)`.
pub fn summand(params: &KnotParams, n: i64, colors: &ColorTuple) -> Result<PolyFraction> {
    StateSum::new(*params, n)?.summand(colors)
}

/// `J_K(N) = (-1)^n f(n)^{-4u} Σ_{D_n} summand` with `n = N - 1`.
pub fn colored_jones(params: &KnotParams, big_n: i64) -> Result<LaurentPoly> {
    if big_n < 1 {
        return Err(Error::NegativeArgument(big_n - 1));
    }
    let state = StateSum::new(*params, big_n - 1)?;
    let total = state.total()?;
    state.finish(total)
}

/// Same value as [`colored_jones`], summing the per-tuple summands of `D_n`
/// in the order given (which must be a permutation of [`domain_points`]).
pub fn colored_jones_in_order(params: &KnotParams, big_n: i64, points: &[ColorTuple]) -> Result<LaurentPoly> {
    if big_n < 1 {
        return Err(Error::NegativeArgument(big_n - 1));
    }
    let state = StateSum::new(*params, big_n - 1)?;
    let total = state.total_over(points)?;
    state.finish(total)
}

/// Maximal degree and leading coefficient of `J_K(N)`.
pub fn exact_dplus(params: &KnotParams, big_n: i64) -> Result<(i64, BigInt)> {
    let j = colored_jones(params, big_n)?;
    dplus_of(&j)
}

pub fn dplus_of(j: &LaurentPoly) -> Result<(i64, BigInt)> {
    Ok((j.max_deg()?, j.leading_coeff()?.clone()))
}
