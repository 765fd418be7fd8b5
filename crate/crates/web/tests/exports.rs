use mbg_web::{box_curve_json, simulate_json, sweep_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn simulate_returns_a_replayable_trace() {
    let text = simulate_json(20, 1, 2, 1, "min-degree", "min-deg", "random", 7).unwrap();
    let trace = mbg_core::GameTrace::from_json(&text).unwrap();
    trace.replay().unwrap();
    let v = parse(&text);
    assert_eq!(v["outcome"]["winner"], "maker");
    assert_eq!(v["outcome"]["decisiveRound"], 19);
    // same seed, same game
    assert_eq!(text, simulate_json(20, 1, 2, 1, "min-degree", "min-deg", "random", 7).unwrap());
}

#[test]
fn simulate_rejects_bad_input() {
    assert!(simulate_json(200, 1, 2, 1, "min-degree", "min-deg", "random", 0).is_err());
    assert!(simulate_json(20, 1, 2, 1, "planarity", "min-deg", "random", 0).is_err());
    assert!(simulate_json(20, 1, 2, 1, "min-degree", "greedy", "random", 0).is_err());
    assert!(simulate_json(2, 1, 2, 1, "min-degree", "min-deg", "random", 0).is_err());
}

#[test]
fn box_curve_stays_above_bound() {
    let v = parse(&box_curve_json(5, 2, 60).unwrap());
    let f = v["f"].as_array().unwrap();
    let lb = v["lowerBound"].as_array().unwrap();
    assert_eq!(f.len(), 60);
    assert_eq!(f[4], 30);
    let mut compared = 0;
    for (fi, li) in f.iter().zip(lb) {
        if let Some(l) = li.as_f64() {
            assert!(fi.as_f64().unwrap() >= l - 1e-9);
            compared += 1;
        }
    }
    assert!(compared > 0);
    assert!(box_curve_json(5, 2, 0).is_err());
    assert!(box_curve_json(5, 2, 10_000).is_err());
}

#[test]
fn sweep_matches_serial_core_run() {
    let v = parse(&sweep_json(16, 1, 1, 6, 10, "min-deg", "random", 3).unwrap());
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 6);
    assert!(cells.iter().all(|c| c["trials"] == 10));
    assert!(v["reference_curve"].as_f64().unwrap() > 0.0);
    assert!(sweep_json(16, 1, 1, 6, 10_000, "min-deg", "random", 3).is_err());
}
