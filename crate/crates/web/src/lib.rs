//! Browser bindings for the static demo page in `www/`.

pub mod api;

use wasm_bindgen::prelude::*;

/// Pairwise decisions, outcome, windows and witnesses for one assignment.
#[wasm_bindgen]
pub fn decide(system_json: &str, profiles: &[u8]) -> Result<String, JsError> {
    api::decide(system_json, profiles).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = validateWeighted)]
pub fn validate_weighted(weights: &[u32], quota: u32) -> Result<String, JsError> {
    api::validate_weighted(weights, quota).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn census(system_json: &str) -> Result<String, JsError> {
    api::census(system_json).map_err(|e| JsError::new(&e))
}
