//! Browser bindings: the degree curve, the landscape of `R(b, c)` over the
//! triangle `T_n`, and the uv-diagram of the edgepath systems. Every export
//! returns a JSON string.

use montesinos::degopt::{
    classify, closed_form_raw, degree_profile, fast_max_phi, predicted_coefficients, restricted_r,
    stabilization_threshold,
};
use montesinos::edgepath::{edgepath_report, gamma_system, seifert_system, EdgepathSystem};
use montesinos::jones::exact_dplus;
use montesinos::rational::format_rational;
use montesinos::{KnotParams, Rational};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Exact state sums are only run for `N` up to this in the browser.
const EXACT_LIMIT: i64 = 4;
const MAX_CURVE_N: i64 = 200;
const MAX_LANDSCAPE_N: i64 = 60;

fn knot(r: i32, s: i32, t: i32, u: i32) -> Result<KnotParams, String> {
    KnotParams::new(r.into(), s.into(), t.into(), u.into()).map_err(|e| e.to_string())
}

fn to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

pub fn degree_curve_json(r: i32, s: i32, t: i32, u: i32, n_max: i32) -> Result<String, String> {
    let p = knot(r, s, t, u)?;
    let n_max = i64::from(n_max).clamp(1, MAX_CURVE_N);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let exact = if n <= EXACT_LIMIT { Some(exact_dplus(&p, n).map_err(|e| e.to_string())?.0) } else { None };
        rows.push(json!({ "N": n, "max_phi": fast_max_phi(&p, n - 1), "closed": closed_form_raw(&p, n), "exact": exact }));
    }
    let (a, two_b) = predicted_coefficients(&p);
    let surface = edgepath_report(&p).map_err(|e| e.to_string())?;
    let out = json!({
        "params": p,
        "case": classify(&p).case,
        "slope": format_rational(&a),
        "linear_2b": format_rational(&two_b),
        "period": if classify(&p).case.is_quadratic() { p.generic_period() } else { 1 },
        "N0": stabilization_threshold(&p, n_max.max(4 * p.generic_period() + 12)),
        "edgepath_slope": format_rational(&surface.slope),
        "euler_ratio": format_rational(&surface.euler_ratio()),
        "rows": rows,
    });
    Ok(out.to_string())
}

pub fn landscape_json(r: i32, s: i32, t: i32, u: i32, n: i32) -> Result<String, String> {
    let p = knot(r, s, t, u)?;
    let n = i64::from(n).clamp(1, MAX_LANDSCAPE_N);
    let mut points = Vec::new();
    let mut best = i64::MIN;
    let mut argmax = Vec::new();
    for b in (0..=2 * n).step_by(2) {
        for c in (0..=2 * n - b).step_by(2) {
            let v = restricted_r(&p, n, b, c).to_integer();
            points.push(json!([b, c, v]));
            if v > best {
                best = v;
                argmax.clear();
            }
            if v == best {
                argmax.push(json!([b, c]));
            }
        }
    }
    let profile = degree_profile(&p, n);
    let out = json!({
        "n": n,
        "b_m": to_f64(profile.b_m),
        "max": best,
        "argmax": argmax,
        "points": points,
    });
    Ok(out.to_string())
}

fn polylines(system: &EdgepathSystem) -> Value {
    let paths: Vec<Value> = system
        .paths
        .iter()
        .map(|path| {
            let mut pts: Vec<(Rational, Rational)> = path.iter().map(|e| e.start_point()).collect();
            pts.push(path.last().expect("non-empty path").end_point());
            Value::from(pts.into_iter().map(|(u, v)| json!([to_f64(u), to_f64(v)])).collect::<Vec<_>>())
        })
        .collect();
    json!({ "u0": to_f64(system.u0), "paths": paths })
}

pub fn edgepath_json(r: i32, s: i32, t: i32, u: i32) -> Result<String, String> {
    let p = knot(r, s, t, u)?;
    let seifert = seifert_system(&p).map_err(|e| e.to_string())?;
    let gamma = if classify(&p).case.is_quadratic() {
        Some(gamma_system(&p).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let out = json!({
        "seifert": polylines(&seifert),
        "gamma": gamma.as_ref().map(polylines),
        "report": edgepath_report(&p).map_err(|e| e.to_string())?,
    });
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn degree_curve(r: i32, s: i32, t: i32, u: i32, n_max: i32) -> Result<String, JsError> {
    degree_curve_json(r, s, t, u, n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn landscape(r: i32, s: i32, t: i32, u: i32, n: i32) -> Result<String, JsError> {
    landscape_json(r, s, t, u, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn edgepath_diagram(r: i32, s: i32, t: i32, u: i32) -> Result<String, JsError> {
    edgepath_json(r, s, t, u).map_err(|e| JsError::new(&e))
}
