//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;

use montesinos::degopt::{brute_max_phi, classify, closed_form_dplus, fast_max_phi, stabilization_threshold};
use montesinos::edgepath::{
    boundary_slope, check_admissible, edgepath_report, gamma_system, partial_fraction_from_u, seifert_system, twist,
    EdgeKind,
};
use montesinos::jones::{colored_jones, domain_points, exact_dplus};
use montesinos::ktg::{dplus_delta6j, dplus_theta, AdmissibleTriple, KtgEvaluator};
use montesinos::pipeline::{run_verification, GridSpec, Report, RunConfig};
use montesinos::rational::{int, rat};
use montesinos::{KnotParams, LaurentPoly, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&mut Shared) -> Outcome);

#[derive(Default)]
struct Shared {
    /// `(params, N, d₊, leading coefficient)` from criteria 1 and 2
    exact: Vec<(KnotParams, i64, i64, BigInt)>,
    reports: Option<Vec<Report>>,
}

fn knot(r: i64, s: i64, t: i64, u: i64) -> KnotParams {
    KnotParams::new(r, s, t, u).unwrap()
}

fn small_grid() -> Vec<KnotParams> {
    let spec: GridSpec = "r=-3,-5;s=2,4;t=3,5;u=-1,-3".parse().unwrap();
    spec.tuples().0
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:?}, limit {limit:?}", start.elapsed()))
}

fn degree_case_one(shared: &mut Shared) -> Outcome {
    let start = Instant::now();
    let p = knot(-3, 2, 3, -3);
    let expected = |n: i64| if n % 2 == 0 { 2 * n * n - 6 * n + 2 } else { 2 * n * n - 6 * n + 4 };
    let mut degrees = Vec::new();
    for n in 1..=6 {
        let (d, lead) = exact_dplus(&p, n).map_err(|e| e.to_string())?;
        shared.exact.push((p, n, d, lead));
        degrees.push((n, d));
    }
    // least N0 with agreement on all of N0..=6
    let n0 = degrees.iter().rev().take_while(|(n, d)| *d == expected(*n)).map(|(n, _)| *n).last().unwrap_or(7);
    within(start, Duration::from_secs(300))?;
    ensure(n0 <= 4, || format!("closed form holds only from N0 = {n0}: {degrees:?}"))?;
    Ok(format!("N0 = {n0}, degrees {:?}", degrees.iter().map(|d| d.1).collect::<Vec<_>>()))
}

fn degree_case_two(shared: &mut Shared) -> Outcome {
    let mut parts = Vec::new();
    for p in [knot(-3, 4, 5, -1), knot(-3, 6, 5, -3)] {
        let start = Instant::now();
        for n in 2..=6 {
            let (d, lead) = exact_dplus(&p, n).map_err(|e| e.to_string())?;
            shared.exact.push((p, n, d, lead));
            ensure(d == 2 * p.u() * (n - 1), || format!("{p} N={n}: d+ = {d}, expected {}", 2 * p.u() * (n - 1)))?;
        }
        within(start, Duration::from_secs(300))?;
        parts.push(format!("{p} ok"));
    }
    Ok(parts.join(", "))
}

fn triple_oracle(_: &mut Shared) -> Outcome {
    let start = Instant::now();
    let spec: GridSpec = "r=-3,-5;s=2,4,6;t=3,5,7;u=-1,-3".parse().unwrap();
    let mut grid = spec.tuples().0;
    grid.push(knot(-5, 8, 9, -1));
    let mut cases = std::collections::BTreeSet::new();
    let mut compared = 0;
    for p in &grid {
        cases.insert(classify(p).case.to_string());
        let n0 = stabilization_threshold(p, 60);
        ensure(n0 <= 9, || format!("{p}: closed form only from N0 = {n0}"))?;
        for n in 0..=8 {
            let brute = brute_max_phi(p, n).0;
            let fast = fast_max_phi(p, n);
            ensure(brute == fast, || format!("{p} n={n}: brute {brute} fast {fast}"))?;
            if let Ok(closed) = closed_form_dplus(p, n + 1, n0) {
                ensure(closed == brute, || format!("{p} N={}: closed {closed} brute {brute}", n + 1))?;
                compared += 1;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    ensure(grid.len() >= 16, || "grid too small".into())?;
    Ok(format!("{} tuples, cases {:?}, {compared} closed-form comparisons", grid.len(), cases))
}

fn no_cancellation(shared: &mut Shared) -> Outcome {
    ensure(!shared.exact.is_empty(), || "criteria 1 and 2 produced no degrees".into())?;
    for (p, n, d, lead) in &shared.exact {
        let brute = brute_max_phi(p, n - 1).0;
        ensure(*d == brute, || format!("{p} N={n}: d+ {d} but max Phi {brute}"))?;
        ensure(lead.is_positive(), || format!("{p} N={n}: leading coefficient {lead}"))?;
    }
    Ok(format!("{} (tuple, N) pairs", shared.exact.len()))
}

fn degree_laws(_: &mut Shared) -> Outcome {
    let start = Instant::now();
    let ev = KtgEvaluator::new(80);
    let mut thetas = 0;
    for a in 0..=20 {
        for b in 0..=20 {
            for c in 0..=20 {
                if AdmissibleTriple::new(a, b, c).is_err() {
                    continue;
                }
                let th = ev.theta(a, b, c).map_err(|e| e.to_string())?;
                let predicted = dplus_theta(a, b, c).map_err(|e| e.to_string())?;
                ensure(th.max_deg() == Ok(predicted), || format!("theta({a},{b},{c})"))?;
                thetas += 1;
            }
        }
    }
    let mut deltas = 0;
    for n in 0..=6 {
        for pt in domain_points(n) {
            for args in [(pt.a, pt.b, pt.c, n, n, n), (pt.b, n, n, pt.d, n, n)] {
                let (a, b, c, x, y, z) = args;
                let value = ev.delta6j(a, b, c, x, y, z).map_err(|e| e.to_string())?;
                if value.is_zero() {
                    continue;
                }
                let predicted = dplus_delta6j(a, b, c, x, y, z).map_err(|e| e.to_string())?.0;
                ensure(value.max_deg() == Ok(predicted), || format!("delta{args:?}"))?;
                deltas += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{thetas} theta values, {deltas} nonzero delta values"))
}

fn reports(shared: &mut Shared) -> Result<&Vec<Report>, String> {
    if shared.reports.is_none() {
        let mut grid = small_grid();
        grid.extend([knot(-5, 6, 7, -1), knot(-3, 6, 5, -3), knot(-5, 8, 9, -1)]);
        let reps = grid
            .iter()
            .map(|p| run_verification(p, 5, &RunConfig::default()).map_err(|e| format!("{p}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        shared.reports = Some(reps);
    }
    Ok(shared.reports.as_ref().unwrap())
}

fn slope_identity(shared: &mut Shared) -> Outcome {
    let mut cases = std::collections::BTreeSet::new();
    for rep in reports(shared)? {
        let p = rep.params;
        let slope = boundary_slope(&p).map_err(|e| e.to_string())?;
        let (r, s, t) = (p.r(), p.s(), p.t());
        let expected = if classify(&p).case.is_quadratic() {
            rat(2 * (t - 1) * (t - 1), s + t - 1) - int(2 * (r + t))
        } else {
            int(0)
        };
        ensure(slope == expected, || format!("{p}: boundary slope {slope}, expected {expected}"))?;
        for res in &rep.fit.residues {
            ensure(res.a == slope, || format!("{p}: a_{} = {} but slope {slope}", res.j, res.a))?;
        }
        cases.insert(rep.prediction.case.to_string());
    }
    Ok(format!("{} tuples, cases {cases:?}", reports(shared)?.len()))
}

fn euler_identity(shared: &mut Shared) -> Outcome {
    for rep in reports(shared)? {
        let p = rep.params;
        let ratio = if classify(&p).case.is_quadratic() {
            let r = montesinos::edgepath::euler_ratio(&gamma_system(&p).map_err(|e| e.to_string())?);
            let r = r.map_err(|e| e.to_string())?;
            ensure(r == int(p.r() + p.u() + 3), || format!("{p}: chi/#S = {r}"))?;
            r
        } else {
            let r = montesinos::edgepath::euler_ratio(&seifert_system(&p).map_err(|e| e.to_string())?);
            let r = r.map_err(|e| e.to_string())?;
            ensure(r == int(p.u()), || format!("{p}: chi/#S = {r}"))?;
            r
        };
        for res in &rep.fit.residues {
            let b = res.two_b / int(2);
            ensure(b == ratio, || format!("{p}: b_{} = {b} but chi/#S = {ratio}", res.j))?;
        }
    }
    Ok(format!("{} tuples", reports(shared)?.len()))
}

fn edgepath_consistency(_: &mut Shared) -> Outcome {
    let mut checked = 0;
    let mut grid = small_grid();
    grid.extend([knot(-5, 6, 7, -1), knot(-7, 10, 11, -3), knot(-9, 2, 11, -5)]);
    for p in grid {
        let seifert = seifert_system(&p).map_err(|e| e.to_string())?;
        ensure(twist(&seifert) == int(-2 * p.u()), || format!("{p}: seifert twist"))?;
        ensure(check_admissible(&seifert).all(), || format!("{p}: seifert inadmissible"))?;
        if !classify(&p).case.is_quadratic() {
            continue;
        }
        let g = gamma_system(&p).map_err(|e| e.to_string())?;
        let adm = check_admissible(&g);
        ensure(adm.all() && adm.lemma41 == Some(true), || format!("{p}: {adm:?}"))?;
        let vsum: Rational = g.end_points().iter().map(|e| e.1).sum();
        ensure(vsum == int(0), || format!("{p}: ending v sum {vsum}"))?;
        for path in &g.paths {
            let last = path.last().unwrap();
            let (a, b) = (last.start.fraction().unwrap(), last.end.fraction().unwrap());
            let from_u = partial_fraction_from_u(a, b, g.u0).map_err(|e| e.to_string())?;
            let length = if last.kind == EdgeKind::Partial { last.length } else { int(1) };
            ensure(from_u == length, || format!("{p}: partial edge {length} vs {from_u} from u0"))?;
        }
        let (r, s, t, u) = (p.r(), p.s(), p.t(), p.u());
        let expected = rat(2 * (t - 1) * (t - 1), s + t - 1) - int(2 * (u + r + t));
        ensure(twist(&g) == expected, || format!("{p}: gamma twist {}", twist(&g)))?;
        ensure(edgepath_report(&p).is_ok(), || format!("{p}: report"))?;
        checked += 1;
    }
    Ok(format!("{checked} systems with an interior ending"))
}

fn trivial_normalization(_: &mut Shared) -> Outcome {
    let grid = small_grid();
    for p in &grid {
        let j = colored_jones(p, 1).map_err(|e| e.to_string())?;
        ensure(j == LaurentPoly::one(), || format!("{p}: J(1) = {j}"))?;
    }
    Ok(format!("{} tuples", grid.len()))
}

fn determinism(_: &mut Shared) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().join("cache");
    let run = |name: &str, jobs: &str, with_cache: bool| -> Result<Vec<u8>, String> {
        let out = dir.path().join(format!("{name}.json"));
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_montesinos"));
        cmd.args(["verify", "--grid", "r=-3,-5;s=2,4;t=3,5;u=-1,-3", "--n-max", "4", "--jobs", jobs]);
        cmd.arg("--out").arg(&out);
        if with_cache {
            cmd.arg("--cache").arg(&cache);
        }
        let status = cmd.status().map_err(|e| e.to_string())?;
        ensure(status.code() == Some(0), || format!("{name}: exit {status}"))?;
        std::fs::read(&out).map_err(|e| e.to_string())
    };
    let first = run("a", "1", false)?;
    for (name, jobs, with_cache) in [("b", "1", false), ("c", "8", false), ("d", "8", true), ("e", "1", true)] {
        ensure(run(name, jobs, with_cache)? == first, || format!("run {name} differs"))?;
    }
    Ok(format!("5 runs, {} identical bytes", first.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("degree closed form, quadratic case", degree_case_one),
        ("degree closed form, linear case", degree_case_two),
        ("brute = fast = closed on a grid", triple_oracle),
        ("no cancellation of the top coefficient", no_cancellation),
        ("theta and delta degree laws", degree_laws),
        ("slope identity", slope_identity),
        ("Euler ratio identity", euler_identity),
        ("edgepath consistency", edgepath_consistency),
        ("trivial normalization J(1) = 1", trivial_normalization),
        ("byte-identical verify output", determinism),
    ];
    let mut shared = Shared::default();
    let mut failures = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut shared);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS [{secs:6.1}s] {title}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL [{secs:6.1}s] {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
