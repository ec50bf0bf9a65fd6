//! Verification runs: predictions from the closed form and the edgepath
//! surfaces, exact degrees from the state sum, quasi-polynomial fits,
//! parameter grids, an on-disk polynomial cache and the JSON/CSV outputs.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::degopt::{
    brute_max_phi, classify, closed_form_raw, fast_max_phi, fit_quasi, least_period, predicted_coefficients, residues,
    CaseTag, Classification, QuasiPolynomial, ResidueData,
};
use crate::edgepath::{edgepath_report, EdgepathReport};
use crate::error::{Error, Result};
use crate::jones::{colored_jones, dplus_of};
use crate::params::KnotParams;
use crate::qlaurent::LaurentPoly;
use crate::rational::{format_rational, int, serde_str, Rational};

pub const DEFAULT_N_MAX: i64 = 6;
pub const N_MAX_CEILING: i64 = 9;
pub const MIN_N_MAX: i64 = 4;

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub case: CaseTag,
    /// Quadratic coefficient `a_j` of the closed form (the same for all `j`).
    #[serde(with = "serde_str")]
    pub slope: Rational,
    /// Linear coefficient `2b_j`.
    #[serde(with = "serde_str")]
    pub linear_2b: Rational,
    pub period: i64,
    pub residues: Vec<ResidueData>,
    #[serde(with = "serde_str")]
    pub edgepath_slope: Rational,
    /// `χ/#S` of the surface paired with the degree.
    #[serde(with = "serde_str")]
    pub euler_ratio: Rational,
    pub slope_match: bool,
    pub euler_match: bool,
}

impl Prediction {
    /// Constant term predicted for residue `j`.
    pub fn constant(&self, params: &KnotParams, j: i64) -> Rational {
        if self.case.is_quadratic() {
            self.residues[j as usize].c_j
        } else {
            int(-2 * params.u())
        }
    }
}

pub fn predict(params: &KnotParams) -> Result<Prediction> {
    let case = classify(params).case;
    let (slope, linear_2b) = predicted_coefficients(params);
    let surface = edgepath_report(params)?;
    let (period, res) = if case.is_quadratic() { (params.generic_period(), residues(params)) } else { (1, Vec::new()) };
    Ok(Prediction {
        case,
        slope,
        linear_2b,
        period,
        residues: res,
        edgepath_slope: surface.slope,
        euler_ratio: surface.euler_ratio(),
        slope_match: slope == surface.slope,
        euler_match: linear_2b / int(2) == surface.euler_ratio(),
    })
}

/// One row of the degree table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    #[serde(rename = "N")]
    pub n: i64,
    pub exact: i64,
    pub leading_coeff: String,
    pub brute: i64,
    pub fast: i64,
    pub closed: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Agreement {
    /// `d₊J(N) = max Φ` for every computed `N`.
    pub exact_eq_brute: bool,
    pub brute_eq_fast: bool,
    pub leading_coeff_positive: bool,
    /// Closed form equals the exact degree for `N0 <= N <= N_max`.
    pub closed_eq_exact_from_n0: bool,
    /// Every fitted `(a_j, 2b_j, c_j)` equals the predicted one.
    pub fit_eq_prediction: bool,
    pub slope_match: bool,
    pub euler_match: bool,
    pub edgepath_admissible: bool,
}

impl Agreement {
    pub fn all(&self) -> bool {
        self.exact_eq_brute
            && self.brute_eq_fast
            && self.leading_coeff_positive
            && self.closed_eq_exact_from_n0
            && self.fit_eq_prediction
            && self.slope_match
            && self.euler_match
            && self.edgepath_admissible
    }
}

/// Which samples fed the fit: exact state-sum degrees through
/// `exact_through`, then case-analysis maxima of `Φ` through `phi_through`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FitSamples {
    pub exact_through: i64,
    pub phi_through: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub params: KnotParams,
    pub classification: Classification,
    pub prediction: Prediction,
    pub degrees: Vec<DegreeRow>,
    pub fit: QuasiPolynomial,
    pub fit_samples: FitSamples,
    pub least_period: i64,
    #[serde(rename = "N0")]
    pub n0: i64,
    pub edgepath: EdgepathReport,
    pub agreement: Agreement,
    pub verified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CacheRecord {
    pub params: KnotParams,
    #[serde(rename = "N")]
    pub n: i64,
    pub polynomial: LaurentPoly,
    pub max_deg: i64,
    pub leading_coeff: String,
}

impl CacheRecord {
    pub fn new(params: KnotParams, n: i64, polynomial: LaurentPoly) -> Result<Self> {
        let (max_deg, lead) = dplus_of(&polynomial)?;
        Ok(Self { params, n, polynomial, max_deg, leading_coeff: lead.to_string() })
    }

    fn is_consistent(&self, params: &KnotParams, n: i64) -> bool {
        self.params == *params
            && self.n == n
            && dplus_of(&self.polynomial)
                .map(|(d, c)| d == self.max_deg && c.to_string() == self.leading_coeff)
                .unwrap_or(false)
    }
}

/// Polynomials stored as `DIR/r_s_t_u/N.json`.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, params: &KnotParams, n: i64) -> PathBuf {
        self.dir.join(params.key()).join(format!("{n}.json"))
    }

    /// A stored record, or `None` when absent. Unreadable or inconsistent
    /// records are deleted with a warning.
    pub fn load(&self, params: &KnotParams, n: i64) -> Option<CacheRecord> {
        let path = self.path(params, n);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<CacheRecord>(&text) {
            Ok(rec) if rec.is_consistent(params, n) => Some(rec),
            Ok(_) => {
                log::warn!("discarding inconsistent cache record {}", path.display());
                let _ = fs::remove_file(&path);
                None
            }
            Err(e) => {
                log::warn!("discarding corrupt cache record {}: {e}", path.display());
                let _ = fs::remove_file(&path);
                None
            }
        }
    }

    pub fn store(&self, record: &CacheRecord) -> Result<()> {
        let path = self.path(&record.params, record.n);
        let dir = path.parent().expect("cache path has a parent");
        fs::create_dir_all(dir)?;
        // write then rename so readers never see a half-written record
        let tmp = dir.join(format!(".{}.{}.tmp", record.n, std::process::id()));
        fs::write(&tmp, serde_json::to_string_pretty(record)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// `J_K(N)`, through the cache when one is given.
pub fn jones_cached(params: &KnotParams, n: i64, cache: Option<&Cache>) -> Result<CacheRecord> {
    if let Some(rec) = cache.and_then(|c| c.load(params, n)) {
        log::debug!("cache hit {} N={n}", params.key());
        return Ok(rec);
    }
    let start = Instant::now();
    let record = CacheRecord::new(*params, n, colored_jones(params, n)?)?;
    log::info!("J{params} N={n} in {:?}", start.elapsed());
    if let Some(c) = cache {
        c.store(&record)?;
    }
    Ok(record)
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub cache: Option<Cache>,
    /// Upper bound on `N_max`; [`N_MAX_CEILING`] when `None`.
    pub ceiling: Option<i64>,
}

fn check_n_max(n_max: i64, config: &RunConfig) -> Result<()> {
    let ceiling = config.ceiling.unwrap_or(N_MAX_CEILING);
    if !(MIN_N_MAX..=ceiling).contains(&n_max) {
        return Err(Error::InvalidParams(format!("N_max = {n_max} outside [{MIN_N_MAX}, {ceiling}]")));
    }
    Ok(())
}

/// Exact degrees for `N = 1..=n_max` against the three maximizations, a
/// quasi-polynomial fit, and the comparison with [`predict`].
pub fn run_verification(params: &KnotParams, n_max: i64, config: &RunConfig) -> Result<Report> {
    check_n_max(n_max, config)?;
    let start = Instant::now();
    let prediction = predict(params)?;
    let edgepath = edgepath_report(params)?;

    let mut degrees = Vec::new();
    for n in 1..=n_max {
        let rec = jones_cached(params, n, config.cache.as_ref())?;
        degrees.push(DegreeRow {
            n,
            exact: rec.max_deg,
            leading_coeff: rec.leading_coeff,
            brute: brute_max_phi(params, n - 1).0,
            fast: fast_max_phi(params, n - 1),
            closed: closed_form_raw(params, n),
        });
    }

    // Exact degrees alone cannot pin down a period larger than n_max / 3, so
    // the samples continue with the case-analysis maximum of Φ, which the
    // table above checks against the state sum.
    let period = prediction.period;
    let phi_through = n_max.max(4 * period + 12);
    let mut samples: Vec<(i64, i64)> = degrees.iter().map(|d| (d.n, d.exact)).collect();
    samples.extend((n_max + 1..=phi_through).map(|n| (n, fast_max_phi(params, n - 1))));
    let fit = fit_quasi(&samples, period)?;
    let least = least_period(&samples, period)?;
    let n0 = fit.n0;

    let fit_eq_prediction = fit.residues.iter().all(|r| {
        r.a == prediction.slope && r.two_b == prediction.linear_2b && r.c == prediction.constant(params, r.j)
    });
    let agreement = Agreement {
        exact_eq_brute: degrees.iter().all(|d| d.exact == d.brute),
        brute_eq_fast: degrees.iter().all(|d| d.brute == d.fast),
        leading_coeff_positive: degrees
            .iter()
            .all(|d| d.leading_coeff.parse::<BigInt>().map(|c| c.is_positive()).unwrap_or(false)),
        closed_eq_exact_from_n0: degrees.iter().filter(|d| d.n >= n0).all(|d| d.closed == d.exact),
        fit_eq_prediction,
        slope_match: prediction.slope_match,
        euler_match: prediction.euler_match,
        edgepath_admissible: edgepath.admissibility.seifert.all()
            && edgepath.admissibility.gamma.is_none_or(|g| g.all()),
    };
    log::info!("verified {params} through N={n_max} in {:?}", start.elapsed());
    Ok(Report {
        params: *params,
        classification: classify(params),
        prediction,
        degrees,
        fit,
        fit_samples: FitSamples { exact_through: n_max, phi_through },
        least_period: least,
        n0,
        edgepath,
        verified: agreement.all(),
        agreement,
    })
}

/// Tuples described by a grid spec such as `r=-9..-3;s=2..6;t=3..7;u=-5..-1`.
/// Each axis takes an inclusive range `lo..hi`, a comma list, or one value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub r: Vec<i64>,
    pub s: Vec<i64>,
    pub t: Vec<i64>,
    pub u: Vec<i64>,
}

fn parse_axis(text: &str) -> Result<Vec<i64>> {
    let bad = || Error::Parse(format!("bad grid axis `{text}`"));
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi)?);
        let (lo, hi) = (lo.min(hi), lo.max(hi));
        return Ok((lo..=hi).collect());
    }
    let mut values: Vec<i64> = text.split(',').map(num).collect::<Result<_>>()?;
    values.sort_unstable();
    values.dedup();
    Ok(values)
}

impl std::str::FromStr for GridSpec {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let mut axes: [Option<Vec<i64>>; 4] = Default::default();
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, range) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad grid term `{part}`")))?;
            let slot = match name.trim() {
                "r" => 0,
                "s" => 1,
                "t" => 2,
                "u" => 3,
                other => return Err(Error::Parse(format!("unknown grid axis `{other}`"))),
            };
            if axes[slot].is_some() {
                return Err(Error::Parse(format!("grid axis `{}` given twice", name.trim())));
            }
            axes[slot] = Some(parse_axis(range)?);
        }
        let [r, s, t, u] = axes;
        let missing = |n: &str| Error::Parse(format!("grid spec lacks axis `{n}`"));
        Ok(GridSpec {
            r: r.ok_or_else(|| missing("r"))?,
            s: s.ok_or_else(|| missing("s"))?,
            t: t.ok_or_else(|| missing("t"))?,
            u: u.ok_or_else(|| missing("u"))?,
        })
    }
}

impl GridSpec {
    /// Valid tuples in lexicographic `(r, s, t, u)` order, and the number of
    /// combinations skipped for violating the parameter constraints.
    pub fn tuples(&self) -> (Vec<KnotParams>, usize) {
        let mut out = Vec::new();
        let mut skipped = 0;
        for &r in &self.r {
            for &s in &self.s {
                for &t in &self.t {
                    for &u in &self.u {
                        match KnotParams::new(r, s, t, u) {
                            Ok(p) => out.push(p),
                            Err(_) => skipped += 1,
                        }
                    }
                }
            }
        }
        (out, skipped)
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum GridEntry {
    Report(Box<Report>),
    Fault { params: KnotParams, error: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub tuples: usize,
    pub skipped: usize,
    pub verified: usize,
    pub mismatched: usize,
    pub faulted: usize,
}

pub struct GridRun {
    pub entries: Vec<GridEntry>,
    pub summary: GridSummary,
}

/// Verifies every tuple of the grid, `jobs` tuples at a time. The entries
/// come back in grid order whatever the scheduling.
pub fn grid_run(spec: &GridSpec, n_max: i64, jobs: usize, config: &RunConfig) -> Result<GridRun> {
    check_n_max(n_max, config)?;
    let (tuples, skipped) = spec.tuples();
    let run_one = |p: &KnotParams| match run_verification(p, n_max, config) {
        Ok(rep) => GridEntry::Report(Box::new(rep)),
        Err(e) => GridEntry::Fault { params: *p, error: e.to_string() },
    };
    #[cfg(feature = "parallel")]
    let entries: Vec<GridEntry> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| tuples.par_iter().map(run_one).collect())
    };
    #[cfg(not(feature = "parallel"))]
    let entries: Vec<GridEntry> = {
        let _ = jobs;
        tuples.iter().map(run_one).collect()
    };
    let mut summary = GridSummary { tuples: tuples.len(), skipped, ..Default::default() };
    for e in &entries {
        match e {
            GridEntry::Report(r) if r.verified => summary.verified += 1,
            GridEntry::Report(_) => summary.mismatched += 1,
            GridEntry::Fault { .. } => summary.faulted += 1,
        }
    }
    Ok(GridRun { entries, summary })
}

/// Canonical JSON: object keys sorted, two-space indentation, trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub const CSV_HEADER: &str = "r,s,t,u,case,slope,linear_2b,slope_match,euler_match,N0,verified,error";

pub fn summary_csv(entries: &[GridEntry]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for e in entries {
        match e {
            GridEntry::Report(r) => {
                let p = &r.params;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},",
                    p.r(),
                    p.s(),
                    p.t(),
                    p.u(),
                    r.prediction.case,
                    format_rational(&r.prediction.slope),
                    format_rational(&r.prediction.linear_2b),
                    r.prediction.slope_match,
                    r.prediction.euler_match,
                    r.n0,
                    r.verified
                );
            }
            GridEntry::Fault { params: p, error } => {
                let _ = writeln!(out, "{},{},{},{},,,,,,,false,\"{}\"", p.r(), p.s(), p.t(), p.u(), error.replace('"', "'"));
            }
        }
    }
    out
}

/// Writes the JSON report array and, optionally, the CSV summary.
pub fn write_outputs(run: &GridRun, json_path: &Path, csv_path: Option<&Path>) -> Result<()> {
    for path in std::iter::once(json_path).chain(csv_path) {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(json_path, to_canonical_json(&run.entries)?)?;
    if let Some(csv) = csv_path {
        fs::write(csv, summary_csv(&run.entries))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(r: i64, s: i64, t: i64, u: i64) -> KnotParams {
        KnotParams::new(r, s, t, u).unwrap()
    }

    #[test]
    fn predictions() {
        let p = predict(&params(-3, 2, 3, -3)).unwrap();
        assert_eq!((p.slope, p.linear_2b, p.euler_ratio), (int(2), int(-6), int(-3)));
        assert!(p.slope_match && p.euler_match);
        let p = predict(&params(-3, 4, 5, -1)).unwrap();
        assert_eq!((p.slope, p.linear_2b, p.euler_ratio), (int(0), int(-2), int(-1)));
        assert!(p.slope_match && p.euler_match);
        let p = predict(&params(-5, 2, 3, -1)).unwrap();
        assert_eq!((p.slope, p.linear_2b / int(2)), (int(6), int(-3)));
        assert_eq!(p.edgepath_slope, int(6));
    }

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "r=-9..-3;s=2..6;t=3..7;u=-5..-1".parse().unwrap();
        assert_eq!(g.r, vec![-9, -8, -7, -6, -5, -4, -3]);
        let (tuples, skipped) = g.tuples();
        assert_eq!(tuples.len(), 4 * 3 * 3 * 3);
        assert_eq!(tuples.len() + skipped, 7 * 5 * 5 * 5);
        assert!(tuples.windows(2).all(|w| w[0] < w[1]));
        let g: GridSpec = "r=-3,-5; s=2,4; t=3,5; u=-1,-3".parse().unwrap();
        assert_eq!(g.tuples(), (g.tuples().0, 0));
        assert_eq!(g.tuples().0.len(), 16);
        assert!("r=-3;s=2;t=3".parse::<GridSpec>().is_err());
        assert!("r=-3;s=2;t=3;u=x".parse::<GridSpec>().is_err());
        assert!("r=-3;s=2;t=3;u=-1;w=2".parse::<GridSpec>().is_err());
        let empty: GridSpec = "r=-2;s=2;t=3;u=-1".parse().unwrap();
        assert_eq!(empty.tuples(), (vec![], 1));
    }

    #[test]
    fn empty_grid_csv_is_header_only() {
        assert_eq!(summary_csv(&[]), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn n_max_bounds() {
        let p = params(-3, 2, 3, -3);
        let cfg = RunConfig::default();
        assert!(run_verification(&p, 3, &cfg).is_err());
        assert!(run_verification(&p, 10, &cfg).is_err());
        let tight = RunConfig { ceiling: Some(5), ..Default::default() };
        assert!(run_verification(&p, 6, &tight).is_err());
    }

    #[test]
    fn verification_case_one() {
        let rep = run_verification(&params(-3, 2, 3, -3), 5, &RunConfig::default()).unwrap();
        assert!(rep.verified, "{:?}", rep.agreement);
        assert!(rep.n0 <= 4);
        assert_eq!(rep.degrees.iter().map(|d| d.exact).collect::<Vec<_>>(), vec![0, -2, 4, 10, 24]);
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["prediction"]["slope"], "2/1");
        assert_eq!(json["fit"]["residues"][0]["c"], "2/1");
    }

    #[test]
    fn verification_case_two() {
        let rep = run_verification(&params(-3, 4, 5, -1), 4, &RunConfig::default()).unwrap();
        assert!(rep.verified);
        for d in &rep.degrees {
            assert_eq!(d.exact, -2 * (d.n - 1));
        }
        assert_eq!(rep.least_period, 1);
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let rep = run_verification(&params(-3, 4, 5, -1), 4, &RunConfig::default()).unwrap();
        let text = to_canonical_json(&rep).unwrap();
        let top: Vec<&str> = text
            .lines()
            .filter(|l| l.starts_with("  \""))
            .map(|l| l.trim().split('"').nth(1).unwrap())
            .collect();
        let mut sorted = top.clone();
        sorted.sort();
        assert_eq!(top, sorted);
    }
}
