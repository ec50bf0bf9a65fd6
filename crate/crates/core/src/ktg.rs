//! Evaluators for the four knotted-trivalent-graph building blocks: the theta
//! graph, the colored unknot, the framing-change scalar and the 6j/theta
//! quotient, together with closed forms for their maximal `v`-degrees.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qlaurent::{qint, LaurentPoly, QBinomials};
use crate::rational::{int, rat, Rational};

/// Colors `(x, y, z)` with even sum satisfying the triangle inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleTriple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl AdmissibleTriple {
    pub fn new(x: i64, y: i64, z: i64) -> Result<Self> {
        let ok = x >= 0
            && y >= 0
            && z >= 0
            && (x + y + z) % 2 == 0
            && x <= y + z
            && y <= x + z
            && z <= x + y;
        if ok {
            Ok(Self { x, y, z })
        } else {
            Err(Error::InadmissibleColoring(x, y, z))
        }
    }

    pub fn half_sum(&self) -> i64 {
        (self.x + self.y + self.z) / 2
    }

    /// `((-x+y+z)/2, (x-y+z)/2, (x+y-z)/2)`
    pub fn inner_parts(&self) -> [i64; 3] {
        [
            (-self.x + self.y + self.z) / 2,
            (self.x - self.y + self.z) / 2,
            (self.x + self.y - self.z) / 2,
        ]
    }
}

/// `sign * v^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub sign: i64,
    pub exponent: i64,
}

impl SignedMonomial {
    pub const ONE: SignedMonomial = SignedMonomial { sign: 1, exponent: 0 };

    pub fn to_poly(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign, self.exponent)
    }

    pub fn apply(self, p: &LaurentPoly) -> LaurentPoly {
        p.shift(self.exponent, self.sign)
    }
}

impl std::ops::Mul for SignedMonomial {
    type Output = SignedMonomial;
    fn mul(self, rhs: SignedMonomial) -> SignedMonomial {
        SignedMonomial {
            sign: self.sign * rhs.sign,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

/// `O^k = (-1)^k [k+1]`, the `k`-colored unknot.
pub fn circle(k: i64) -> Result<LaurentPoly> {
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    let q = qint(k + 1)?;
    Ok(if k % 2 == 0 { q } else { -q })
}

/// `f(a)^w` where `f(a) = (sqrt -1)^{-a} v^{-a(a+2)/2}`.
///
/// Only real phases are representable, so `a*w` must be even.
pub fn framing_power(a: i64, w: i64) -> Result<SignedMonomial> {
    if a < 0 {
        return Err(Error::NegativeArgument(a));
    }
    let aw = a * w;
    if aw % 2 != 0 {
        return Err(Error::NonRealPhase(aw));
    }
    let twice_exp = w * a * (a + 2);
    if twice_exp % 2 != 0 {
        return Err(Error::FractionalExponent(twice_exp));
    }
    Ok(SignedMonomial {
        sign: if (aw / 2) % 2 == 0 { 1 } else { -1 },
        exponent: -twice_exp / 2,
    })
}

/// Degree bookkeeping for `Δ(a, b, c, α, β, γ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaDegreeData {
    /// `2m = a+b+c+α+β+γ - max(a+α, b+β, c+γ)`
    pub m: i64,
    pub g_terms: [i64; 4],
    /// Inclusive range of the summation index, `None` when empty.
    pub z_range: Option<(i64, i64)>,
}

/// The 6j/theta quotient's data after validating its colors.
struct DeltaShape {
    half_sum: i64,
    inner: [i64; 3],
    /// `(a+β+γ)/2, (α+b+γ)/2, (α+β+c)/2`
    faces: [i64; 3],
}

impl DeltaShape {
    fn new(a: i64, b: i64, c: i64, alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        let abc = AdmissibleTriple::new(a, b, c)?;
        let face_sums = [(a, beta, gamma), (alpha, b, gamma), (alpha, beta, c)];
        let mut faces = [0; 3];
        for (slot, (x, y, z)) in faces.iter_mut().zip(face_sums) {
            if x < 0 || y < 0 || z < 0 || (x + y + z) % 2 != 0 {
                return Err(Error::InadmissibleColoring(x, y, z));
            }
            *slot = (x + y + z) / 2;
        }
        Ok(Self {
            half_sum: abc.half_sum(),
            inner: abc.inner_parts(),
            faces,
        })
    }

    /// Lower bounds come from `[z+1; S+1]` (z >= S) and `k >= 0` in the three
    /// face binomials; upper bounds from `k <= n` in the face binomials.
    fn z_range(&self) -> Option<(i64, i64)> {
        let lo = self.faces.iter().copied().fold(self.half_sum, i64::max);
        let hi = self
            .faces
            .iter()
            .zip(self.inner)
            .map(|(f, n)| f + n)
            .min()
            .unwrap();
        (lo <= hi).then_some((lo, hi))
    }
}

/// Holds a quantum-binomial table and evaluates graph values from it.
#[derive(Clone, Debug)]
pub struct KtgEvaluator {
    binomials: QBinomials,
}

impl KtgEvaluator {
    /// Evaluator able to handle binomials `[n; k]` with `n <= max_n`.
    pub fn new(max_n: usize) -> Self {
        Self { binomials: QBinomials::new(max_n) }
    }

    /// Sized for every graph value appearing in the state sum at ambient color `n`.
    pub fn for_state_sum(n: i64) -> Self {
        Self::new((3 * n + 2).max(1) as usize)
    }

    pub fn binomials(&self) -> &QBinomials {
        &self.binomials
    }

    pub fn theta(&self, a: i64, b: i64, c: i64) -> Result<LaurentPoly> {
        let triple = AdmissibleTriple::new(a, b, c)?;
        let multinom = self
            .binomials
            .multinomial(&triple.inner_parts())
            .expect("admissible parts are non-negative");
        Ok(&circle(triple.half_sum())? * &multinom)
    }

    pub fn delta6j(&self, a: i64, b: i64, c: i64, alpha: i64, beta: i64, gamma: i64) -> Result<LaurentPoly> {
        let shape = DeltaShape::new(a, b, c, alpha, beta, gamma)?;
        let Some((lo, hi)) = shape.z_range() else {
            return Ok(LaurentPoly::zero());
        };
        let mut total = LaurentPoly::zero();
        for z in lo..=hi {
            let mut term = self
                .binomials
                .get(z + 1, shape.half_sum + 1)
                .expect("z >= S on the summation range")
                .clone();
            for (n, f) in shape.inner.iter().zip(shape.faces) {
                let binom = self.binomials.get(*n, z - f).expect("z inside face range");
                term = &term * binom;
            }
            if (z - shape.half_sum) % 2 == 0 {
                total += &term;
            } else {
                total = &total - &term;
            }
        }
        Ok(total)
    }
}

/// `<Θ; a, b, c> = O^{(a+b+c)/2} [(a+b+c)/2; (-a+b+c)/2, (a-b+c)/2, (a+b-c)/2]`.
pub fn theta(a: i64, b: i64, c: i64) -> Result<LaurentPoly> {
    let triple = AdmissibleTriple::new(a, b, c)?;
    KtgEvaluator::new(triple.half_sum().max(1) as usize).theta(a, b, c)
}

/// The 6j-symbol divided by a theta value, as an alternating sum of products
/// of four quantum binomials. Returns zero when the summation range is empty.
pub fn delta6j(a: i64, b: i64, c: i64, alpha: i64, beta: i64, gamma: i64) -> Result<LaurentPoly> {
    let shape = DeltaShape::new(a, b, c, alpha, beta, gamma)?;
    let top = shape.z_range().map(|(_, hi)| hi + 1).unwrap_or(0);
    let size = top.max(shape.half_sum + 1).max(*shape.inner.iter().max().unwrap());
    KtgEvaluator::new(size.max(1) as usize).delta6j(a, b, c, alpha, beta, gamma)
}

/// `g(n, k) = 2k(n - k)`, the top degree of `[n; k]`.
pub fn g(n: i64, k: i64) -> i64 {
    2 * k * (n - k)
}

/// `a(1-a) + b(1-b) + c(1-c) + (a+b+c)^2 / 2`
pub fn dplus_theta(a: i64, b: i64, c: i64) -> Result<i64> {
    AdmissibleTriple::new(a, b, c)?;
    let s = a + b + c;
    Ok(a * (1 - a) + b * (1 - b) + c * (1 - c) + s * s / 2)
}

pub fn dplus_delta6j(a: i64, b: i64, c: i64, alpha: i64, beta: i64, gamma: i64) -> Result<(i64, DeltaDegreeData)> {
    let shape = DeltaShape::new(a, b, c, alpha, beta, gamma)?;
    let twice_m = a + b + c + alpha + beta + gamma - (a + alpha).max(b + beta).max(c + gamma);
    if twice_m % 2 != 0 {
        return Err(Error::InadmissibleColoring(a + alpha, b + beta, c + gamma));
    }
    let m = twice_m / 2;
    let g_terms = [
        g(m + 1, shape.half_sum + 1),
        g(shape.inner[0], m - shape.faces[0]),
        g(shape.inner[1], m - shape.faces[1]),
        g(shape.inner[2], m - shape.faces[2]),
    ];
    let data = DeltaDegreeData { m, g_terms, z_range: shape.z_range() };
    Ok((g_terms.iter().sum(), data))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    /// `f(a)`
    Framing(i64),
    /// `O^k`
    Circle(i64),
}

/// Top degree of a framing scalar (`-a(a+2)/2`, half-integral for odd `a`)
/// or a colored unknot (`2k`).
pub fn dplus_atom(atom: Atom) -> Result<Rational> {
    match atom {
        Atom::Framing(a) if a < 0 => Err(Error::NegativeArgument(a)),
        Atom::Framing(a) => Ok(rat(-a * (a + 2), 2)),
        Atom::Circle(k) if k < 0 => Err(Error::NegativeArgument(k)),
        Atom::Circle(k) => Ok(int(2 * k)),
    }
}
