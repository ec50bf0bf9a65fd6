use std::fs;

use montesinos::jones::colored_jones;
use montesinos::pipeline::{jones_cached, run_verification, to_canonical_json, Cache, CacheRecord, RunConfig};
use montesinos::KnotParams;

fn knot() -> KnotParams {
    KnotParams::new(-3, 2, 3, -3).unwrap()
}

#[test]
fn cold_cache_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    assert!(cache.load(&knot(), 3).is_none());
}

#[test]
fn store_then_load_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let rec = CacheRecord::new(knot(), 3, colored_jones(&knot(), 3).unwrap()).unwrap();
    cache.store(&rec).unwrap();
    assert!(cache.path(&knot(), 3).ends_with("-3_2_3_-3/3.json"));
    assert_eq!(cache.load(&knot(), 3), Some(rec));
}

#[test]
fn hits_skip_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let first = jones_cached(&knot(), 2, Some(&cache)).unwrap();
    // a planted record with a different (but self-consistent) polynomial is
    // returned as is, which shows the state sum was not rerun
    let planted = CacheRecord::new(knot(), 2, montesinos::LaurentPoly::constant(5)).unwrap();
    cache.store(&planted).unwrap();
    assert_eq!(jones_cached(&knot(), 2, Some(&cache)).unwrap(), planted);
    assert_ne!(first, planted);
}

#[test]
fn corrupt_records_are_replaced() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let good = jones_cached(&knot(), 3, Some(&cache)).unwrap();
    let path = cache.path(&knot(), 3);

    fs::write(&path, "{ not json").unwrap();
    assert!(cache.load(&knot(), 3).is_none());
    assert!(!path.exists());
    assert_eq!(jones_cached(&knot(), 3, Some(&cache)).unwrap(), good);
    assert_eq!(cache.load(&knot(), 3), Some(good.clone()));

    // valid JSON whose stored degree disagrees with its polynomial
    let text = fs::read_to_string(&path).unwrap();
    let tampered = text.replace(&format!("\"max_deg\": {}", good.max_deg), "\"max_deg\": 999");
    assert_ne!(text, tampered);
    fs::write(&path, tampered).unwrap();
    assert!(cache.load(&knot(), 3).is_none());
    assert_eq!(jones_cached(&knot(), 3, Some(&cache)).unwrap(), good);
}

#[test]
fn warm_and_cold_reports_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { cache: Some(Cache::new(dir.path())), ..Default::default() };
    let cold = to_canonical_json(&run_verification(&knot(), 4, &cfg).unwrap()).unwrap();
    let warm = to_canonical_json(&run_verification(&knot(), 4, &cfg).unwrap()).unwrap();
    let none = to_canonical_json(&run_verification(&knot(), 4, &RunConfig::default()).unwrap()).unwrap();
    assert_eq!(cold, warm);
    assert_eq!(cold, none);
}
