//! The Hatcher–Oertel uv-diagram restricted to what the family
//! `M(1/r, 1/(s-1/u), 1/t)` needs: the Seifert edgepath system, the system
//! `Γ` carrying the Jones slope, twists, boundary slopes and `χ/#S`.
//!
//! Edgepaths run right to left, from the tangle vertex toward `u = 0`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::degopt::classify;
use crate::error::{Error, Result};
use crate::params::KnotParams;
use crate::rational::{int, rat, serde_str, Rational};

/// Projective curve system `[a, b, c]`: `a` arcs, `b` arcs, and signed
/// twisting `c`, with `u = b/(a+b)` and `v = c/(a+b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjCurveSystem {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl ProjCurveSystem {
    pub fn uv(&self) -> Option<(Rational, Rational)> {
        let w = self.a + self.b;
        (w > 0).then(|| (rat(self.b, w), rat(self.c, w)))
    }

    fn scaled(self, k: i64) -> Self {
        Self { a: self.a * k, b: self.b * k, c: self.c * k }
    }

    fn plus(self, o: Self) -> Self {
        Self { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagramVertex {
    /// `⟨p/q⟩`
    Arc(Rational),
    /// `⟨p/q⟩°`
    Circle(Rational),
    /// `⟨∞⟩`
    Infinity,
}

impl DiagramVertex {
    pub fn arc(p: i64, q: i64) -> Self {
        DiagramVertex::Arc(rat(p, q))
    }

    pub fn fraction(&self) -> Option<Rational> {
        match self {
            DiagramVertex::Arc(f) | DiagramVertex::Circle(f) => Some(*f),
            DiagramVertex::Infinity => None,
        }
    }

    pub fn curve_system(&self) -> ProjCurveSystem {
        match self {
            DiagramVertex::Arc(f) => ProjCurveSystem { a: 1, b: f.denom() - 1, c: *f.numer() },
            DiagramVertex::Circle(f) => ProjCurveSystem { a: 0, b: *f.denom(), c: *f.numer() },
            DiagramVertex::Infinity => ProjCurveSystem { a: 1, b: 0, c: 0 },
        }
    }

    pub fn uv(&self) -> (Rational, Rational) {
        match self {
            DiagramVertex::Arc(f) => (rat(f.denom() - 1, *f.denom()), *f),
            DiagramVertex::Circle(f) => (int(1), *f),
            DiagramVertex::Infinity => (int(-1), int(0)),
        }
    }
}

impl std::fmt::Display for DiagramVertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DiagramVertex::Arc(x) => write!(f, "<{x}>"),
            DiagramVertex::Circle(x) => write!(f, "<{x}>o"),
            DiagramVertex::Infinity => f.write_str("<inf>"),
        }
    }
}

pub fn vertex_uv(v: &DiagramVertex) -> (Rational, Rational) {
    v.uv()
}

fn farey_det(x: Rational, y: Rational) -> i64 {
    x.numer() * y.denom() - x.denom() * y.numer()
}

/// Whether `⟨x⟩` and `⟨y⟩` span a non-horizontal edge.
pub fn adjacent(x: Rational, y: Rational) -> bool {
    farey_det(x, y).abs() == 1
}

/// The point `k/m ⟨to⟩ + (m-k)/m ⟨from⟩` on the edge from `⟨from⟩` to `⟨to⟩`.
pub fn interp_point(from: Rational, to: Rational, frac: Rational) -> (ProjCurveSystem, (Rational, Rational)) {
    let (k, m) = (*frac.numer(), *frac.denom());
    let sys = DiagramVertex::Arc(to)
        .curve_system()
        .scaled(k)
        .plus(DiagramVertex::Arc(from).curve_system().scaled(m - k));
    let uv = sys.uv().expect("arc systems have a + b > 0");
    (sys, uv)
}

/// Coefficient on `⟨to⟩` of the point on the edge `⟨from⟩ → ⟨to⟩` with
/// u-coordinate `u0`. The point is `λ⟨to⟩ + (1-λ)⟨from⟩`, and `1/(1-u)` is
/// linear in `λ` along an edge: `1/(1-u) = λ q_to + (1-λ) q_from`.
pub fn partial_fraction_from_u(from: Rational, to: Rational, u0: Rational) -> Result<Rational> {
    let (u_from, u_to) = (DiagramVertex::Arc(from).uv().0, DiagramVertex::Arc(to).uv().0);
    let (lo, hi) = if u_from <= u_to { (u_from, u_to) } else { (u_to, u_from) };
    if u0 < lo || u0 > hi || u0 >= int(1) {
        return Err(Error::Construction(format!("u0 = {u0} outside the edge <{from}>-<{to}>")));
    }
    let (q_from, q_to) = (int(*from.denom()), int(*to.denom()));
    if q_from == q_to {
        return Err(Error::Construction(format!("edge <{from}>-<{to}> is vertical in u")));
    }
    Ok((int(1) / (int(1) - u0) - q_from) / (q_to - q_from))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    NonHorizontal,
    Horizontal,
    Vertical,
    Infinity,
    Constant,
    Partial,
}

/// A directed edge, traversed from `start` (right) to `end` (left). For a
/// partial edge, `length` is the coefficient on `end` of the point reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub kind: EdgeKind,
    pub start: DiagramVertex,
    pub end: DiagramVertex,
    pub length: Rational,
}

impl DiagramEdge {
    pub fn complete(start: Rational, end: Rational) -> Result<Self> {
        if !adjacent(start, end) {
            return Err(Error::Construction(format!("<{start}> and <{end}> are not adjacent")));
        }
        Ok(Self {
            kind: EdgeKind::NonHorizontal,
            start: DiagramVertex::Arc(start),
            end: DiagramVertex::Arc(end),
            length: int(1),
        })
    }

    /// A partial edge of length `frac` in `(0, 1]`; `frac = 1` gives the
    /// complete edge.
    pub fn partial(start: Rational, toward: Rational, frac: Rational) -> Result<Self> {
        if frac <= int(0) || frac > int(1) {
            return Err(Error::Construction(format!("partial length {frac} outside (0, 1]")));
        }
        let mut e = Self::complete(start, toward)?;
        if frac < int(1) {
            e.kind = EdgeKind::Partial;
            e.length = frac;
        }
        Ok(e)
    }

    /// Where the edge stops in the diagram.
    pub fn end_point(&self) -> (Rational, Rational) {
        match (self.kind, self.start.fraction(), self.end.fraction()) {
            (EdgeKind::Partial, Some(a), Some(b)) => interp_point(a, b, self.length).1,
            (EdgeKind::Constant, _, _) => self.start.uv(),
            _ => self.end.uv(),
        }
    }

    pub fn start_point(&self) -> (Rational, Rational) {
        self.start.uv()
    }
}

/// `(σ, |e|)`: the sign of the v-motion from right to left, and the length.
pub fn edge_measure(e: &DiagramEdge) -> (i64, Rational) {
    let length = match e.kind {
        EdgeKind::Constant => int(0),
        EdgeKind::Partial => e.length,
        _ => int(1),
    };
    let sigma = match e.kind {
        EdgeKind::Infinity | EdgeKind::Constant => 0,
        _ => {
            let dv = e.end_point().1 - e.start_point().1;
            if dv.is_positive() {
                1
            } else if dv.is_negative() {
                -1
            } else {
                0
            }
        }
    };
    (sigma, length)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndingKind {
    AtZeroVertex,
    InteriorU,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgepathSystem {
    pub paths: [Vec<DiagramEdge>; 3],
    /// The tangle fractions the paths must start from.
    pub tangles: [Rational; 3],
    pub u0: Rational,
    pub ending: EndingKind,
}

impl EdgepathSystem {
    pub fn path_lengths(&self) -> [Rational; 3] {
        self.paths.clone().map(|p| p.iter().map(|e| edge_measure(e).1).sum())
    }

    pub fn end_points(&self) -> [(Rational, Rational); 3] {
        self.paths.clone().map(|p| p.last().expect("non-empty path").end_point())
    }
}

fn tangle_fractions(params: &KnotParams) -> [Rational; 3] {
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    [rat(1, r), rat(-u, -s * u + 1), rat(1, t)]
}

/// `⟨k/(sk+1)⟩` for `k = from, from-1, ..., 1`.
fn middle_chain(s: i64, from: i64) -> Vec<Rational> {
    (1..=from).rev().map(|k| rat(k, s * k + 1)).collect()
}

fn chain_edges(vertices: &[Rational]) -> Result<Vec<DiagramEdge>> {
    vertices.windows(2).map(|w| DiagramEdge::complete(w[0], w[1])).collect()
}

/// The Seifert surface: `δ₁ = ⟨1/r⟩ → ⟨0⟩`, `δ₂` through the chain
/// `⟨k/(sk+1)⟩` down to `⟨0⟩`, `δ₃ = ⟨1/t⟩ → ⟨0⟩`, ending at the vertex `⟨0⟩`.
pub fn seifert_system(params: &KnotParams) -> Result<EdgepathSystem> {
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    let zero = int(0);
    let d1 = vec![DiagramEdge::complete(rat(1, r), zero)?];
    let mut chain = middle_chain(s, -u);
    chain.push(zero);
    let d2 = chain_edges(&chain)?;
    let d3 = vec![DiagramEdge::complete(rat(1, t), zero)?];
    Ok(EdgepathSystem {
        paths: [d1, d2, d3],
        tangles: tangle_fractions(params),
        u0: zero,
        ending: EndingKind::AtZeroVertex,
    })
}

/// `u₀ = (t-1)s / (ts+t-1)`, where `v₁ + v₂ + v₃ = 0` along the final edges.
pub fn u_zero(params: &KnotParams) -> Rational {
    let (s, t) = (params.s(), params.t());
    rat((t - 1) * s, t * s + t - 1)
}

/// `λ = (t-1)²/(s+t-1) - r - t`, the total length of `γ₁`.
pub fn gamma_one_length(params: &KnotParams) -> Rational {
    let (r, s, t) = (params.r(), params.s(), params.t());
    rat((t - 1) * (t - 1), s + t - 1) - int(r + t)
}

/// Number of complete edges of `γ₁` before the last (partial or complete)
/// one: the `k` with `λ - k ∈ (0, 1]`.
pub fn gamma_one_k(params: &KnotParams) -> i64 {
    gamma_one_length(params).ceil().to_integer() - 1
}

/// The system `Γ` whose slope is the Jones slope. Exists when `Δ < 0`.
pub fn gamma_system(params: &KnotParams) -> Result<EdgepathSystem> {
    let case = classify(params).case;
    if !case.is_quadratic() {
        return Err(Error::NotCaseOne(format!("{params} is {case}")));
    }
    let (r, s, t, u) = (params.r(), params.s(), params.t(), params.u());
    let u0 = u_zero(params);
    let lambda = gamma_one_length(params);
    let k = gamma_one_k(params);
    if k < 0 || k > -r - 2 {
        return Err(Error::Construction(format!("k = {k} outside [0, {}] for {params}", -r - 2)));
    }

    let g1_vertices: Vec<Rational> = (0..=k).map(|i| rat(1, r + i)).collect();
    let mut g1 = chain_edges(&g1_vertices)?;
    let last = rat(1, r + k);
    let toward = rat(1, r + k + 1);
    let frac = lambda - int(k);
    check_partial(last, toward, u0, frac)?;
    g1.push(DiagramEdge::partial(last, toward, frac)?);

    let mut g2 = chain_edges(&middle_chain(s, -u))?;
    let frac2 = rat(s, s + t - 1);
    check_partial(rat(1, s + 1), int(0), u0, frac2)?;
    g2.push(DiagramEdge::partial(rat(1, s + 1), int(0), frac2)?);

    let frac3 = rat(t - 1, s + t - 1);
    check_partial(rat(1, t), int(0), u0, frac3)?;
    let g3 = vec![DiagramEdge::partial(rat(1, t), int(0), frac3)?];

    Ok(EdgepathSystem {
        paths: [g1, g2, g3],
        tangles: tangle_fractions(params),
        u0,
        ending: EndingKind::InteriorU,
    })
}

fn check_partial(from: Rational, to: Rational, u0: Rational, expected: Rational) -> Result<()> {
    let got = partial_fraction_from_u(from, to, u0)?;
    if got != expected {
        return Err(Error::Construction(format!(
            "partial edge <{from}>-<{to}>: length {expected} but u0 gives {got}"
        )));
    }
    Ok(())
}

/// Checks that `u₀` solves `v₁(u) + v₂(u) + v₃(u) = 0` on the lines through
/// the final edges of `Γ`, and that it lies left of the edges' right ends.
pub fn line_check(params: &KnotParams) -> Result<bool> {
    let g = gamma_system(params)?;
    let u0 = u_zero(params);
    let mut total = int(0);
    for path in &g.paths {
        let e = path.last().unwrap();
        let (p0, p1) = (e.start.uv(), e.end.uv());
        let slope = (p1.1 - p0.1) / (p1.0 - p0.0);
        total += p0.1 + slope * (u0 - p0.0);
        if u0 >= p0.0 {
            return Ok(false);
        }
    }
    let (s, t) = (params.s(), params.t());
    let u_t = rat(t - 1, t);
    let gap_ok = u0 - u_t == -rat((t - 1) * (t - 1), t * (s * t + t - 1));
    Ok(total.is_zero() && gap_ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    #[serde(rename = "E1")]
    pub e1: bool,
    #[serde(rename = "E2")]
    pub e2: bool,
    #[serde(rename = "E3")]
    pub e3: bool,
    #[serde(rename = "E4")]
    pub e4: bool,
    /// For an interior ending: the final edges all move the same way.
    pub lemma41: Option<bool>,
}

impl Admissibility {
    pub fn all(&self) -> bool {
        self.e1 && self.e2 && self.e3 && self.e4 && self.lemma41.unwrap_or(true)
    }
}

fn path_is_minimal(path: &[DiagramEdge]) -> bool {
    path.windows(2).all(|w| {
        let (x, y, z) = (w[0].start, w[0].end, w[1].end);
        if w[1].start != y || x == z {
            return false;
        }
        match (x.fraction(), z.fraction()) {
            (Some(x), Some(z)) => !adjacent(x, z),
            _ => true,
        }
    })
}

pub fn check_admissible(system: &EdgepathSystem) -> Admissibility {
    let e1 = system
        .paths
        .iter()
        .zip(system.tangles)
        .all(|(p, f)| p.first().is_some_and(|e| e.start == DiagramVertex::Arc(f)));
    let e2 = system.paths.iter().all(|p| path_is_minimal(p));
    let ends = system.end_points();
    let e3 = ends.iter().all(|(u, _)| *u == system.u0)
        && ends.iter().map(|(_, v)| *v).sum::<Rational>().is_zero();
    let e4 = system.paths.iter().all(|p| {
        p.iter().all(|e| e.end_point().0 <= e.start_point().0)
    });
    let lemma41 = (system.ending == EndingKind::InteriorU && system.u0.is_positive()).then(|| {
        let signs: Vec<i64> = system.paths.iter().map(|p| edge_measure(p.last().unwrap()).0).collect();
        signs[0] != 0 && signs.iter().all(|&s| s == signs[0])
    });
    Admissibility { e1, e2, e3, e4, lemma41 }
}

/// `τ = Σ -2σ(e)|e|` over all edges.
pub fn twist(system: &EdgepathSystem) -> Rational {
    system
        .paths
        .iter()
        .flatten()
        .map(|e| {
            let (sigma, len) = edge_measure(e);
            int(-2 * sigma) * len
        })
        .sum()
}

/// `χ/#S` for three tangles. Ending at `⟨0⟩`: `-χ/#S = Σ|γ| - 2`. Interior
/// ending at `u₀` with no constant edges: `-χ/#S = Σ|γ| - 3 + 1/(1-u₀)`.
pub fn euler_ratio(system: &EdgepathSystem) -> Result<Rational> {
    if system.paths.iter().flatten().any(|e| e.kind == EdgeKind::Constant) {
        return Err(Error::UnsupportedEnding("constant edges".into()));
    }
    let total: Rational = system.path_lengths().iter().sum();
    let minus_chi = match system.ending {
        EndingKind::AtZeroVertex if system.u0.is_zero() => total - int(2),
        EndingKind::InteriorU if system.u0 > int(0) && system.u0 < int(1) => {
            total - int(3) + int(1) / (int(1) - system.u0)
        }
        other => return Err(Error::UnsupportedEnding(format!("{other:?} at u = {}", system.u0))),
    };
    Ok(-minus_chi)
}

/// `τ(Γ) - τ(Seifert)` when `Γ` exists, otherwise the Seifert slope 0.
pub fn boundary_slope(params: &KnotParams) -> Result<Rational> {
    if !classify(params).case.is_quadratic() {
        return Ok(int(0));
    }
    Ok(twist(&gamma_system(params)?) - twist(&seifert_system(params)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct Twists {
    #[serde(with = "serde_str")]
    pub seifert: Rational,
    #[serde(with = "crate::rational::serde_opt")]
    pub gamma: Option<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub seifert: Admissibility,
    pub gamma: Option<Admissibility>,
}

/// JSON report fragment for the surface side.
#[derive(Clone, Debug, Serialize)]
pub struct EdgepathReport {
    #[serde(with = "crate::rational::serde_opt")]
    pub u0: Option<Rational>,
    pub k: Option<i64>,
    #[serde(with = "crate::rational::serde_opt_vec")]
    pub gamma_lengths: Option<Vec<Rational>>,
    pub twists: Twists,
    #[serde(with = "serde_str")]
    pub slope: Rational,
    #[serde(with = "serde_str")]
    pub euler_ratio_seifert: Rational,
    #[serde(with = "crate::rational::serde_opt")]
    pub euler_ratio_gamma: Option<Rational>,
    pub line_check: Option<bool>,
    pub admissibility: AdmissibilityReport,
}

impl EdgepathReport {
    /// The surface paired with the degree: `Γ` when it exists, else Seifert.
    pub fn euler_ratio(&self) -> Rational {
        self.euler_ratio_gamma.unwrap_or(self.euler_ratio_seifert)
    }
}

pub fn edgepath_report(params: &KnotParams) -> Result<EdgepathReport> {
    let seifert = seifert_system(params)?;
    let gamma = if classify(params).case.is_quadratic() { Some(gamma_system(params)?) } else { None };
    let tau_s = twist(&seifert);
    let tau_g = gamma.as_ref().map(twist);
    Ok(EdgepathReport {
        u0: gamma.as_ref().map(|g| g.u0),
        k: gamma.as_ref().map(|_| gamma_one_k(params)),
        gamma_lengths: gamma.as_ref().map(|g| g.path_lengths().to_vec()),
        twists: Twists { seifert: tau_s, gamma: tau_g },
        slope: tau_g.map(|g| g - tau_s).unwrap_or_else(Rational::zero),
        euler_ratio_seifert: euler_ratio(&seifert)?,
        euler_ratio_gamma: gamma.as_ref().map(euler_ratio).transpose()?,
        line_check: gamma.as_ref().map(|_| line_check(params)).transpose()?,
        admissibility: AdmissibilityReport {
            seifert: check_admissible(&seifert),
            gamma: gamma.as_ref().map(check_admissible),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: i64, s: i64, t: i64, u: i64) -> KnotParams {
        KnotParams::new(r, s, t, u).unwrap()
    }

    fn grid() -> Vec<KnotParams> {
        let mut out = Vec::new();
        for r in (-11..=-3).step_by(2) {
            for s in (2..=10).step_by(2) {
                for t in (3..=11).step_by(2) {
                    for u in [-1, -3, -5] {
                        out.push(params(r, s, t, u));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn vertex_coordinates() {
        assert_eq!(DiagramVertex::arc(0, 1).uv(), (int(0), int(0)));
        assert_eq!(DiagramVertex::arc(1, 3).uv(), (rat(2, 3), rat(1, 3)));
        assert_eq!(DiagramVertex::arc(-1, 2).uv(), (rat(1, 2), rat(-1, 2)));
        assert_eq!(DiagramVertex::Circle(rat(2, 5)).uv(), (int(1), rat(2, 5)));
        assert_eq!(DiagramVertex::Infinity.uv(), (int(-1), int(0)));
        for v in [DiagramVertex::arc(3, 7), DiagramVertex::arc(-2, 5), DiagramVertex::Circle(rat(3, 4))] {
            assert_eq!(v.curve_system().uv().unwrap(), v.uv());
        }
    }

    #[test]
    fn interpolation() {
        let (a, b) = (int(0), rat(1, 3));
        assert_eq!(interp_point(a, b, int(0)).1, DiagramVertex::Arc(a).uv());
        assert_eq!(interp_point(a, b, int(1)).1, DiagramVertex::Arc(b).uv());
        let (sys, uv) = interp_point(a, b, rat(1, 2));
        assert_eq!(sys, ProjCurveSystem { a: 2, b: 2, c: 1 });
        assert_eq!(uv.0, rat(1, 2));
    }

    #[test]
    fn partial_fractions() {
        let u0 = rat(1, 2);
        assert_eq!(partial_fraction_from_u(int(0), rat(1, 3), u0).unwrap(), rat(1, 2));
        assert_eq!(partial_fraction_from_u(rat(1, 3), int(0), u0).unwrap(), rat(1, 2));
        assert_eq!(partial_fraction_from_u(int(0), rat(1, 3), int(0)).unwrap(), int(0));
        assert_eq!(partial_fraction_from_u(int(0), rat(1, 3), rat(2, 3)).unwrap(), int(1));
        assert!(partial_fraction_from_u(int(0), rat(1, 3), rat(3, 4)).is_err());
        // the inverse of interp_point
        for (a, b) in [(rat(1, 3), int(0)), (rat(-1, 4), rat(-1, 3)), (rat(2, 5), rat(1, 3))] {
            for frac in [rat(1, 7), rat(1, 2), rat(5, 6)] {
                let u = interp_point(a, b, frac).1 .0;
                assert_eq!(partial_fraction_from_u(a, b, u).unwrap(), frac);
            }
        }
    }

    #[test]
    fn edge_measures() {
        let e = DiagramEdge::complete(rat(1, 3), int(0)).unwrap();
        assert_eq!(edge_measure(&e), (-1, int(1)));
        let e = DiagramEdge::complete(rat(-1, 3), rat(-1, 2)).unwrap();
        assert_eq!(edge_measure(&e), (-1, int(1)));
        let e = DiagramEdge::complete(rat(1, -5), int(0)).unwrap();
        assert_eq!(edge_measure(&e), (1, int(1)));
        let e = DiagramEdge { kind: EdgeKind::Infinity, start: DiagramVertex::arc(0, 1), end: DiagramVertex::Infinity, length: int(1) };
        assert_eq!(edge_measure(&e).0, 0);
        let sys = EdgepathSystem {
            paths: [vec![e.clone()], vec![e.clone()], vec![e]],
            tangles: [int(0); 3],
            u0: int(0),
            ending: EndingKind::AtZeroVertex,
        };
        assert_eq!(twist(&sys), int(0));
        assert!(DiagramEdge::complete(rat(1, 3), rat(1, 5)).is_err());
    }

    #[test]
    fn seifert_examples() {
        let s = seifert_system(&params(-3, 2, 3, -1)).unwrap();
        assert_eq!(s.paths[1], vec![DiagramEdge::complete(rat(1, 3), int(0)).unwrap()]);
        assert_eq!(s.path_lengths().iter().sum::<Rational>(), int(3));
        let p = params(-3, 2, 3, -3);
        let s = seifert_system(&p).unwrap();
        let middle: Vec<Rational> = s.paths[1].iter().map(|e| e.start.fraction().unwrap()).collect();
        assert_eq!(middle, vec![rat(3, 7), rat(2, 5), rat(1, 3)]);
        assert_eq!(twist(&s), int(6));
        assert_eq!(euler_ratio(&s).unwrap(), int(-3));
        for p in grid() {
            let s = seifert_system(&p).unwrap();
            assert!(check_admissible(&s).all(), "{p}");
            assert_eq!(twist(&s), int(-2 * p.u()));
            assert_eq!(euler_ratio(&s).unwrap(), int(p.u()));
        }
    }

    #[test]
    fn gamma_examples() {
        let p = params(-3, 2, 3, -3);
        let g = gamma_system(&p).unwrap();
        assert_eq!(gamma_one_k(&p), 0);
        assert_eq!(g.paths[0], vec![DiagramEdge::complete(rat(-1, 3), rat(-1, 2)).unwrap()]);
        assert_eq!(g.u0, rat(1, 2));
        let ends = g.end_points();
        assert_eq!(ends.map(|e| e.1), [rat(-1, 2), rat(1, 4), rat(1, 4)]);
        assert_eq!(twist(&g), int(8));
        assert_eq!(euler_ratio(&g).unwrap(), int(-3));
        assert_eq!(boundary_slope(&p).unwrap(), int(2));

        let q = params(-5, 2, 3, -1);
        assert_eq!(gamma_one_length(&q), int(3));
        assert_eq!(gamma_one_k(&q), 2);
        let g = gamma_system(&q).unwrap();
        let last = g.paths[0].last().unwrap();
        assert_eq!((last.start, last.end), (DiagramVertex::arc(-1, 3), DiagramVertex::arc(-1, 2)));
        assert_eq!(boundary_slope(&q).unwrap(), int(6));
        assert_eq!(euler_ratio(&g).unwrap(), int(-3));

        assert!(matches!(gamma_system(&params(-3, 4, 5, -1)), Err(Error::NotCaseOne(_))));
        assert_eq!(boundary_slope(&params(-3, 4, 5, -1)).unwrap(), int(0));
    }

    #[test]
    fn u_zero_examples() {
        assert_eq!(u_zero(&params(-3, 2, 3, -1)), rat(1, 2));
        assert_eq!(u_zero(&params(-3, 4, 5, -1)), rat(2, 3));
    }

    #[test]
    fn gamma_over_grid() {
        for p in grid() {
            let case = classify(&p).case;
            if !case.is_quadratic() {
                continue;
            }
            let (r, s, t, u) = (p.r(), p.s(), p.t(), p.u());
            let g = gamma_system(&p).unwrap();
            let adm = check_admissible(&g);
            assert!(adm.all(), "{p}: {adm:?}");
            assert_eq!(adm.lemma41, Some(true));
            assert!(line_check(&p).unwrap(), "{p}");
            let u0 = g.u0;
            for path in &g.paths {
                assert!(u0 < path[0].start.uv().0);
            }
            let expected_slope = rat(2 * (t - 1) * (t - 1), s + t - 1) - int(2 * (r + t));
            assert_eq!(twist(&g), expected_slope - int(2 * u));
            assert_eq!(boundary_slope(&p).unwrap(), expected_slope);
            assert_eq!(euler_ratio(&g).unwrap(), int(r + u + 3));
        }
    }

    #[test]
    fn retraced_path_fails_minimality() {
        let p = params(-3, 2, 3, -1);
        let mut s = seifert_system(&p).unwrap();
        s.paths[2].push(DiagramEdge::complete(int(0), rat(1, 3)).unwrap());
        assert!(!check_admissible(&s).e2);
        let mut s = seifert_system(&p).unwrap();
        // <1/3> -> <1/2> -> <0> walks two sides of the triangle <0>,<1/3>,<1/2>
        s.paths[2] = vec![
            DiagramEdge::complete(rat(1, 3), rat(1, 2)).unwrap(),
            DiagramEdge::complete(rat(1, 2), int(0)).unwrap(),
        ];
        assert!(!check_admissible(&s).e2);
    }

    #[test]
    fn report_fragment() {
        let rep = edgepath_report(&params(-3, 2, 3, -3)).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["slope"], "2/1");
        assert_eq!(json["twists"]["gamma"], "8/1");
        assert_eq!(json["admissibility"]["gamma"]["E2"], true);
        assert_eq!(rep.euler_ratio(), int(-3));
        let rep = edgepath_report(&params(-3, 4, 5, -1)).unwrap();
        assert!(rep.u0.is_none());
        assert_eq!(rep.euler_ratio(), int(-1));
    }
}
