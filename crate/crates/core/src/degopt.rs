//! The degree objective `Φ` of the state sum and its maximization.
//!
//! `d₊J_K(n+1) = max_{D_n} Φ` is a quadratic integer program. It is solved
//! here three independent ways: exhaustive enumeration of `D_n`
//! ([`brute_max_phi`]), the case analysis that restricts to `d = 2n`,
//! `a = b + c` ([`fast_max_phi`]), and the closed-form quasi-polynomial
//! ([`closed_form_dplus`]).

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jones::{domain_points, ColorTuple};
use crate::ktg::{dplus_atom, dplus_delta6j, dplus_theta, Atom};
use crate::params::KnotParams;
use crate::rational::{int, rat, serde_str, to_integer, Rational};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    #[serde(rename = "Case2_1")]
    Case2_1,
    #[serde(rename = "Case2_2")]
    Case2_2,
    #[serde(rename = "Case2_3")]
    Case2_3,
    #[serde(rename = "Case2_4")]
    Case2_4,
}

impl CaseTag {
    /// Cases whose degree is the quadratic quasi-polynomial with slope
    /// `2(t-1)^2/(s+t-1) - 2(r+t)`; the remaining cases have degree `2u(N-1)`.
    pub fn is_quadratic(self) -> bool {
        matches!(self, CaseTag::Case1 | CaseTag::Case2_1)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2_1 => "Case2_1",
            CaseTag::Case2_2 => "Case2_2",
            CaseTag::Case2_3 => "Case2_3",
            CaseTag::Case2_4 => "Case2_4",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "A", with = "serde_str")]
    pub a: Rational,
    #[serde(rename = "B", with = "serde_str")]
    pub b: Rational,
    #[serde(rename = "C", with = "serde_str")]
    pub c: Rational,
    /// `4AC - B^2`
    #[serde(rename = "Delta", with = "serde_str")]
    pub discriminant: Rational,
    pub case: CaseTag,
}

/// `A = -(r+s+1)/2`, `B = -(r+1)`, `C = -(r+t)/2`, `Δ = 4AC - B²` and the
/// case of the degree theorem they select.
pub fn classify(params: &KnotParams) -> Classification {
    let (r, s, t) = (params.r(), params.s(), params.t());
    let a = rat(-(r + s + 1), 2);
    let b = int(-(r + 1));
    let c = rat(-(r + t), 2);
    let discriminant = int(4) * a * c - b * b;
    let case = if !a.is_negative() || !c.is_negative() {
        CaseTag::Case1
    } else if discriminant.is_negative() {
        CaseTag::Case2_1
    } else if discriminant.is_positive() {
        CaseTag::Case2_2
    } else if (r + s - 1).pow(2) + (r + t - 2).pow(2) != 0 {
        CaseTag::Case2_3
    } else {
        CaseTag::Case2_4
    };
    Classification { a, b, c, discriminant, case }
}

fn dplus_framing(a: i64) -> Rational {
    dplus_atom(Atom::Framing(a)).expect("non-negative color")
}

fn dplus_circle(k: i64) -> Rational {
    dplus_atom(Atom::Circle(k)).expect("non-negative color")
}

/// Exact value of `Φ(a, b, c, d)` at ambient color `n`.
pub fn phi(params: &KnotParams, n: i64, colors: &ColorTuple) -> Result<i64> {
    if !colors.in_domain(n) {
        return Err(Error::InadmissibleColoring(colors.a, colors.b, colors.c));
    }
    let ColorTuple { a, b, c, d } = *colors;
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    let mut total = int(dplus_theta(a, b, c)?);
    total += int(2 * dplus_delta6j(a, b, c, n, n, n)?.0);
    total += int(dplus_delta6j(b, n, n, d, n, n)?.0);
    total += int(r) * dplus_framing(a)
        + int(s) * dplus_framing(b)
        + int(t) * dplus_framing(c)
        + int(u) * dplus_framing(d);
    for x in [a, b, c, d] {
        total += dplus_circle(x);
        total -= int(dplus_theta(x, n, n)?);
    }
    total -= int(4 * u) * dplus_framing(n);
    Ok(to_integer(&total).expect("Φ is integral on D_n"))
}

/// `R(b, c) = Φ(b+c, b, c, 2n)` in closed form:
/// `A b² - (r+s-1) b + B bc + C c² - (r+t-2) c + 2un`.
pub fn restricted_r(params: &KnotParams, n: i64, b: i64, c: i64) -> Rational {
    let cl = classify(params);
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    let (b, c) = (int(b), int(c));
    cl.a * b * b - int(r + s - 1) * b + cl.b * b * c + cl.c * c * c - int(r + t - 2) * c + int(2 * u * n)
}

/// `Q(b) = R(b, 2n - b)`.
pub fn restricted_q(params: &KnotParams, n: i64, b: i64) -> Rational {
    restricted_r(params, n, b, 2 * n - b)
}

/// Shape of the maximization at ambient color `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeProfile {
    /// Real maximizer of `Q` on the segment `b + c = 2n`.
    #[serde(with = "serde_str")]
    pub b_m: Rational,
    /// Even integers nearest to `b_m` (two on a tie), clamped to `[0, 2n]`.
    pub b0: Vec<i64>,
    /// Stationary point of `R`, when `Δ ≠ 0`.
    #[serde(skip)]
    pub stationary: Option<(Rational, Rational)>,
}

pub fn degree_profile(params: &KnotParams, n: i64) -> DegreeProfile {
    let (r, s, t) = (params.r(), params.s(), params.t());
    let b_m = rat(2 * (t - 1) * n - s + t - 1, s + t - 1);
    let lower = {
        let f = b_m.floor().to_integer();
        if f.rem_euclid(2) == 0 { f } else { f - 1 }
    };
    let mut b0: Vec<i64> = Vec::new();
    let d_lo = b_m - int(lower);
    let d_hi = int(lower + 2) - b_m;
    if d_lo <= d_hi {
        b0.push(lower);
    }
    if d_hi <= d_lo {
        b0.push(lower + 2);
    }
    for x in &mut b0 {
        *x = (*x).clamp(0, 2 * n);
    }
    b0.dedup();
    let cl = classify(params);
    let stationary = (!cl.discriminant.is_zero()).then(|| {
        let delta = cl.discriminant;
        let bp = int((r + 1) * (r + t - 2) - (r + t) * (r + s - 1)) / delta;
        let cp = int((r + 1) * (r + s - 1) - (r + s + 1) * (r + t - 2)) / delta;
        (bp, cp)
    });
    DegreeProfile { b_m, b0, stationary }
}

/// Exhaustive maximum of `Φ` over `D_n` with every maximizer, in
/// enumeration order.
pub fn brute_max_phi(params: &KnotParams, n: i64) -> (i64, Vec<ColorTuple>) {
    let points = domain_points(n);
    let eval = |c: &ColorTuple| phi(params, n, c).expect("domain point");
    #[cfg(feature = "parallel")]
    let values: Vec<i64> = points.par_iter().map(eval).collect();
    #[cfg(not(feature = "parallel"))]
    let values: Vec<i64> = points.iter().map(eval).collect();
    let best = values.iter().copied().max().unwrap_or(0);
    let argmax = points
        .iter()
        .zip(&values)
        .filter(|(_, v)| **v == best)
        .map(|(p, _)| *p)
        .collect();
    (best, argmax)
}

/// Even integers bracketing `x`, clamped to `[lo, hi]`.
fn even_neighbours(x: Rational, lo: i64, hi: i64) -> Vec<i64> {
    let f = x.floor().to_integer();
    let below = if f.rem_euclid(2) == 0 { f } else { f - 1 };
    let mut out = vec![below.clamp(lo, hi), (below + 2).clamp(lo, hi)];
    out.dedup();
    out
}

/// Exact maximum of `R` over the even lattice points of the triangle
/// `b, c >= 0`, `b + c <= 2n`, one row `b = const` at a time.
fn triangle_max_r(params: &KnotParams, n: i64) -> i64 {
    let cl = classify(params);
    let lin_c = int(params.r() + params.t() - 2);
    (0..=n)
        .map(|half| {
            let b = 2 * half;
            let hi = 2 * n - b;
            let cands = if cl.c.is_negative() {
                even_neighbours((lin_c - cl.b * int(b)) / (int(2) * cl.c), 0, hi)
            } else {
                vec![0, hi]
            };
            cands
                .into_iter()
                .map(|c| to_integer(&restricted_r(params, n, b, c)).expect("integral on lattice"))
                .max()
                .unwrap()
        })
        .max()
        .unwrap()
}

/// Case-analysis maximum. The maximizer always lies on `d = 2n`, `a = b + c`.
/// In Case 1 it sits on `b + c = 2n` at the even `b` nearest `b_m`; in
/// Cases 2.2 to 2.4 it is the origin with value `2un`. Case 2.1 reaches the
/// hypotenuse only for large `n`, so there the triangle is scanned row by row.
pub fn fast_max_phi(params: &KnotParams, n: i64) -> i64 {
    if n == 0 {
        return 0;
    }
    match classify(params).case {
        CaseTag::Case1 => hypotenuse_max(params, n),
        CaseTag::Case2_1 => triangle_max_r(params, n),
        _ => 2 * params.u() * n,
    }
}

/// Maximum of `Q` over even `b` in `[0, 2n]`.
pub fn hypotenuse_max(params: &KnotParams, n: i64) -> i64 {
    degree_profile(params, n)
        .b0
        .iter()
        .map(|&b| to_integer(&restricted_q(params, n, b)).expect("integral on lattice"))
        .max()
        .expect("at least one candidate")
}

/// Per-residue data of the closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueData {
    pub j: i64,
    pub v_j: i64,
    #[serde(with = "serde_str")]
    pub beta_j: Rational,
    #[serde(with = "serde_str")]
    pub c_j: Rational,
}

fn residue_constant(params: &KnotParams, beta: Rational) -> Rational {
    let k = int(params.s() + params.t() - 1);
    -k / int(2) * beta * beta - k * beta - int(2 * (params.u() + 2))
}

/// `v_j`, `β_j`, `c_j` for `0 <= j < (s+t-1)/2`. When two odd numbers are
/// equally near, both are evaluated and must give the same `c_j`; the smaller
/// is stored.
pub fn residues(params: &KnotParams) -> Vec<ResidueData> {
    let (s, t) = (params.s(), params.t());
    (0..params.generic_period())
        .map(|j| {
            let x = rat(2 * (t - 1) * j, s + t - 1);
            let f = x.floor().to_integer();
            let lower_odd = if f.rem_euclid(2) == 1 { f } else { f - 1 };
            let (d_lo, d_hi) = (x - int(lower_odd), int(lower_odd + 2) - x);
            let mut choices = Vec::new();
            if d_lo <= d_hi {
                choices.push(lower_odd);
            }
            if d_hi <= d_lo {
                choices.push(lower_odd + 2);
            }
            let data: Vec<ResidueData> = choices
                .iter()
                .map(|&v| {
                    let beta = int(v - 1) - x;
                    ResidueData { j, v_j: v, beta_j: beta, c_j: residue_constant(params, beta) }
                })
                .collect();
            assert!(
                data.windows(2).all(|w| w[0].c_j == w[1].c_j),
                "tied v_j must give equal c_j"
            );
            data.into_iter().next().unwrap()
        })
        .collect()
}

/// Predicted quadratic and linear coefficients `(a, 2b)` of `d₊J_K(N)` in `N`.
pub fn predicted_coefficients(params: &KnotParams) -> (Rational, Rational) {
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    if classify(params).case.is_quadratic() {
        (
            rat(2 * (t - 1) * (t - 1), s + t - 1) - int(2 * (r + t)),
            int(2 * (r + u + 3)),
        )
    } else {
        (int(0), int(2 * u))
    }
}

/// The closed-form degree at `N` without a threshold check. Integral by
/// construction; the assertion guards the rational bookkeeping.
pub fn closed_form_raw(params: &KnotParams, big_n: i64) -> i64 {
    let cl = classify(params);
    if !cl.case.is_quadratic() {
        return 2 * params.u() * (big_n - 1);
    }
    let (a, two_b) = predicted_coefficients(params);
    let p = params.generic_period();
    let j = big_n.rem_euclid(p);
    let c_j = residues(params)[j as usize].c_j;
    let n = int(big_n);
    let value = a * n * n + two_b * n + c_j;
    to_integer(&value).expect("closed form is integral")
}

/// Closed-form `d₊J_K(N)`, refusing `N` below a recorded threshold `n0`.
pub fn closed_form_dplus(params: &KnotParams, big_n: i64, n0: i64) -> Result<i64> {
    if big_n < n0 {
        return Err(Error::BelowThreshold { n: big_n, n0 });
    }
    Ok(closed_form_raw(params, big_n))
}

/// Least `N0` such that the closed form equals the case-analysis maximum
/// for every `N0 <= N <= n_check`.
pub fn stabilization_threshold(params: &KnotParams, n_check: i64) -> i64 {
    let mut n0 = n_check + 1;
    for big_n in (1..=n_check).rev() {
        if closed_form_raw(params, big_n) != fast_max_phi(params, big_n - 1) {
            break;
        }
        n0 = big_n;
    }
    n0
}

/// One residue class of a fitted quasi-polynomial `a N² + 2b N + c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiResidue {
    pub j: i64,
    #[serde(with = "serde_str")]
    pub a: Rational,
    #[serde(with = "serde_str")]
    pub two_b: Rational,
    #[serde(with = "serde_str")]
    pub c: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiPolynomial {
    pub period: i64,
    pub residues: Vec<QuasiResidue>,
    /// Every sample with `N >= n0` is reproduced exactly.
    #[serde(rename = "N0")]
    pub n0: i64,
}

impl QuasiPolynomial {
    pub fn evaluate(&self, big_n: i64) -> Rational {
        let q = &self.residues[big_n.rem_euclid(self.period) as usize];
        let n = int(big_n);
        q.a * n * n + q.two_b * n + q.c
    }
}

fn quadratic_through(pts: &[(i64, i64)]) -> (Rational, Rational, Rational) {
    // Lagrange interpolation, expanded into monomial coefficients
    let mut coeffs = [int(0); 3];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        let others: Vec<i64> = pts.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, p)| p.0).collect();
        let denom = (xi - others[0]) * (xi - others[1]);
        let w = rat(yi, denom);
        coeffs[0] += w;
        coeffs[1] -= w * int(others[0] + others[1]);
        coeffs[2] += w * int(others[0] * others[1]);
    }
    (coeffs[0], coeffs[1], coeffs[2])
}

/// Fits `a_j N² + 2b_j N + c_j` per residue class `j = N mod period` from the
/// last three samples of each class and finds the least `N0` from which every
/// sample is reproduced. A class with fewer than three samples has no fit.
pub fn fit_quasi(degrees: &[(i64, i64)], period: i64) -> Result<QuasiPolynomial> {
    if period < 1 {
        return Err(Error::NoQuadraticFit(0));
    }
    let mut residues = Vec::new();
    for j in 0..period {
        let mut class: Vec<(i64, i64)> = degrees.iter().copied().filter(|(n, _)| n.rem_euclid(period) == j).collect();
        class.sort();
        if class.len() < 3 {
            return Err(Error::NoQuadraticFit(j));
        }
        let (a, two_b, c) = quadratic_through(&class[class.len() - 3..]);
        residues.push(QuasiResidue { j, a, two_b, c });
    }
    let mut quasi = QuasiPolynomial { period, residues, n0: 0 };
    let mut sorted = degrees.to_vec();
    sorted.sort();
    let first = sorted.first().map(|p| p.0).unwrap_or(0);
    quasi.n0 = sorted
        .iter()
        .filter(|(n, d)| quasi.evaluate(*n) != int(*d))
        .map(|(n, _)| n + 1)
        .max()
        .unwrap_or(first);
    Ok(quasi)
}

/// Smallest divisor `q` of `period` whose fit explains the samples from the
/// same threshold on.
pub fn least_period(degrees: &[(i64, i64)], period: i64) -> Result<i64> {
    let reference = fit_quasi(degrees, period)?;
    for q in 1..=period {
        if period % q != 0 {
            continue;
        }
        if let Ok(fit) = fit_quasi(degrees, q) {
            if fit.n0 <= reference.n0 {
                return Ok(q);
            }
        }
    }
    Ok(period)
}

/// JSON report fragment for the degree side.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    #[serde(flatten)]
    pub classification: Classification,
    pub period: i64,
    pub residues: Vec<ResidueData>,
    #[serde(rename = "N0")]
    pub n0: i64,
}

pub fn degree_report(params: &KnotParams, n_check: i64) -> DegreeReport {
    let classification = classify(params);
    let (period, residues) = if classification.case.is_quadratic() {
        (params.generic_period(), residues(params))
    } else {
        (1, Vec::new())
    };
    DegreeReport {
        classification,
        period,
        residues,
        n0: stabilization_threshold(params, n_check),
    }
}
