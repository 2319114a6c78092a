//! Browser bindings for the demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string.
//! The `*_json` functions hold the logic and are what the native tests call.

use std::sync::Arc;

use twistclass::conjugacy::distinguish;
use twistclass::{compute_remnant, run_density, Alphabet, DensityConfig, Homomorphism, SampleMode, Word};
use wasm_bindgen::prelude::*;

/// Witness search depth used by `check`.
pub const ORACLE_DEPTH: usize = 3;
pub const MAX_LENGTH: usize = 40;
pub const MAX_TRIALS: u64 = 2_000;

fn target(rank_h: usize) -> Result<Arc<Alphabet>, String> {
    Alphabet::standard(rank_h).map(Arc::new).map_err(|e| e.to_string())
}

/// Parses `a=..., b=...` over the standard domain of matching rank.
fn parse_hom(text: &str, codomain: &Arc<Alphabet>) -> Result<Homomorphism, String> {
    let rank = Homomorphism::parse_with_codomain(text, codomain)
        .map_err(|e| e.to_string())?
        .rank();
    let domain = target(rank)?;
    Homomorphism::parse(text, &domain, codomain).map_err(|e| e.to_string())
}

fn to_string<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

pub fn check_json(phi: &str, psi: &str, u: &str, v: &str, rank_h: usize) -> Result<String, String> {
    let h = target(rank_h)?;
    let phi = parse_hom(phi, &h)?;
    let psi = parse_hom(psi, &h)?;
    let u = Word::parse(u, &h).map_err(|e| format!("u: {e}"))?;
    let v = Word::parse(v, &h).map_err(|e| format!("v: {e}"))?;
    let result = distinguish(&phi, &psi, &u, &v, ORACLE_DEPTH).map_err(|e| e.to_string())?;
    Ok(to_string(&result.to_json()))
}

pub fn remnant_json(hom: &str, rank_h: usize) -> Result<String, String> {
    let h = target(rank_h)?;
    Ok(to_string(&compute_remnant(&parse_hom(hom, &h)?).to_json()))
}

/// Density of `remnant`, `eta_distinct` and `quick_distinct` for
/// `F_rank_g → F_rank_h` at every length `1..=max_length`.
pub fn density_json(rank_g: usize, rank_h: usize, max_length: usize, trials: u64, seed: u64) -> Result<String, String> {
    if max_length == 0 || max_length > MAX_LENGTH {
        return Err(format!("max length must be in 1..={MAX_LENGTH}"));
    }
    if trials == 0 || trials > MAX_TRIALS {
        return Err(format!("trials must be in 1..={MAX_TRIALS}"));
    }
    let config = DensityConfig {
        rank_g,
        rank_h,
        lengths: (1..=max_length).collect(),
        trials,
        seed,
        mode: SampleMode::Sphere,
        properties: vec!["remnant".into(), "eta_distinct".into(), "quick_distinct".into()],
        remnant_length_l: None,
        remnant_ratio_r: None,
    };
    let report = run_density(&config, None).map_err(|e| e.to_string())?;
    Ok(to_string(&report))
}

fn js(result: Result<String, String>) -> Result<String, JsError> {
    result.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn check(phi: &str, psi: &str, u: &str, v: &str, rank_h: usize) -> Result<String, JsError> {
    js(check_json(phi, psi, u, v, rank_h))
}

#[wasm_bindgen]
pub fn remnant(hom: &str, rank_h: usize) -> Result<String, JsError> {
    js(remnant_json(hom, rank_h))
}

#[wasm_bindgen(js_name = densityCurve)]
pub fn density_curve(
    rank_g: usize,
    rank_h: usize,
    max_length: usize,
    trials: u32,
    seed: u32,
) -> Result<String, JsError> {
    js(density_json(rank_g, rank_h, max_length, trials.into(), seed.into()))
}
