//! wasm-bindgen exports for the static page in `www/`.

pub mod demo;

use wasm_bindgen::prelude::*;

/// Li_s(x) at `points` evenly spaced x in [lo, hi].
#[wasm_bindgen(js_name = polylogCurve)]
pub fn polylog_curve(s: i32, lo: f64, hi: f64, points: u32) -> Result<Vec<f64>, JsError> {
    demo::polylog_curve(s as i64, lo, hi, points).map_err(|e| JsError::new(&e))
}

/// JSON object with the series value and every other route for (m, q).
#[wasm_bindgen(js_name = eulerSumRoutes)]
pub fn euler_sum_routes(m: u32, q: u32) -> Result<String, JsError> {
    let routes = demo::euler_sum_routes(m, q).map_err(|e| JsError::new(&e))?;
    serde_json::to_string(&routes).map_err(|e| JsError::new(&e.to_string()))
}

/// The verification report as JSON, same schema as `eulersum verify --output json`.
#[wasm_bindgen]
pub fn verify(filter: &str) -> Result<String, JsError> {
    serde_json::to_string(&demo::verify(filter)).map_err(|e| JsError::new(&e.to_string()))
}
