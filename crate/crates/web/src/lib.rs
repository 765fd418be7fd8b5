//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string. The `*_json` functions hold the logic
//! and are plain Rust so they can be tested off the browser.

use mbg_core::boxgame;
use mbg_core::harness::{self, BreakerName, GameSpec, MakerName, StrategyOptions, SweepSpec};
use mbg_core::{GameParams, Goal};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest board the page will play on; beyond this a sweep stalls the tab.
pub const MAX_N: usize = 80;
pub const MAX_TRIALS: usize = 200;
pub const MAX_BOX_K: usize = 400;

fn parse<T: std::str::FromStr>(what: &str, s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| format!("{what}: {e}"))
}

fn check_n(n: usize) -> Result<(), String> {
    if n > MAX_N {
        return Err(format!("n is capped at {MAX_N} in the browser"));
    }
    Ok(())
}

/// Plays one game and returns its trace, outcome included.
#[allow(clippy::too_many_arguments)]
pub fn simulate_json(
    n: usize,
    a: usize,
    b: usize,
    k: usize,
    goal: &str,
    maker: &str,
    breaker: &str,
    seed: u64,
) -> Result<String, String> {
    check_n(n)?;
    let params = GameParams::new(n, a, b, k, parse::<Goal>("goal", goal)?).map_err(|e| e.to_string())?;
    let spec = GameSpec {
        params,
        maker: parse::<MakerName>("maker", maker)?,
        breaker: parse::<BreakerName>("breaker", breaker)?,
        options: StrategyOptions::default(),
    };
    let run = harness::run_game(&spec, seed).map_err(|e| e.to_string())?;
    Ok(run.trace.to_json())
}

/// `f(k; p, q)` next to its closed-form lower bound for `k = 1..=max_k`.
pub fn box_curve_json(p: usize, q: usize, max_k: usize) -> Result<String, String> {
    if max_k == 0 || max_k > MAX_BOX_K {
        return Err(format!("max_k must be in 1..={MAX_BOX_K}"));
    }
    let f = boxgame::f_table(max_k, p, q).map_err(|e| e.to_string())?;
    let h = mbg_core::numeric::harmonic_prefix(max_k.max(2));
    let lower: Vec<Option<f64>> = (1..=max_k)
        .map(|k| {
            boxgame::lower_bound_with(k, p, q, &h)
                .ok()
                .map(|lb| mbg_core::numeric::to_f64(&lb))
        })
        .collect();
    Ok(json!({
        "p": p,
        "q": q,
        "k": (1..=max_k).collect::<Vec<_>>(),
        "f": &f[1..=max_k],
        "lowerBound": lower,
    })
    .to_string())
}

/// Maker win rate over `b = 1..=b_max`, single-threaded.
#[allow(clippy::too_many_arguments)]
pub fn sweep_json(
    n: usize,
    a: usize,
    k: usize,
    b_max: usize,
    trials: usize,
    maker: &str,
    breaker: &str,
    seed: u64,
) -> Result<String, String> {
    check_n(n)?;
    if trials > MAX_TRIALS {
        return Err(format!("trials is capped at {MAX_TRIALS} in the browser"));
    }
    let spec = SweepSpec {
        n,
        a,
        k,
        goal: Goal::MinDegree,
        b_values: (1..=b_max).collect(),
        trials,
        maker: parse("maker", maker)?,
        breaker: parse("breaker", breaker)?,
        master_seed: seed,
    };
    let result = harness::run_sweep(&spec, Some(1)).map_err(|e| e.to_string())?;
    serde_json::to_string(&result).map_err(|e| e.to_string())
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn simulate(
    n: usize,
    a: usize,
    b: usize,
    k: usize,
    goal: &str,
    maker: &str,
    breaker: &str,
    seed: u64,
) -> Result<String, JsError> {
    simulate_json(n, a, b, k, goal, maker, breaker, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn box_curve(p: usize, q: usize, max_k: usize) -> Result<String, JsError> {
    box_curve_json(p, q, max_k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn sweep(
    n: usize,
    a: usize,
    k: usize,
    b_max: usize,
    trials: usize,
    maker: &str,
    breaker: &str,
    seed: u64,
) -> Result<String, JsError> {
    sweep_json(n, a, k, b_max, trials, maker, breaker, seed).map_err(|e| JsError::new(&e))
}
