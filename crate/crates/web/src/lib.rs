//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export returns a JSON string; failures surface as JS exceptions.
//! The plain `*_json` functions hold the logic so they test natively.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use stern_core::families::parse_index;
use stern_core::poly::{count_real_roots, reduce_mod};
use stern_core::search::{
    enumerate_solutions, is_solution, series_curve, CongruenceSpec, CurveSeries, SearchConfig,
};
use stern_core::stern::stern_poly;

/// Largest search bound the page accepts; keeps the tab responsive.
pub const BROWSER_CAP: u64 = 1 << 22;
/// Solutions listed in full; the count always covers all of them.
pub const LISTED: usize = 200;

#[derive(Serialize)]
struct PolyView {
    index: String,
    binary: String,
    degree: Option<usize>,
    coefficients: Vec<String>,
    pretty: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reduced: Option<Vec<String>>,
    real_roots: usize,
}

#[derive(Serialize)]
struct CheckView {
    index: String,
    r: u32,
    m: u32,
    holds: bool,
}

#[derive(Serialize)]
struct SearchView {
    bound: u64,
    count: u64,
    solutions: Vec<u64>,
    truncated: bool,
}

#[derive(Serialize)]
struct Point {
    x: u64,
    y: f64,
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

fn spec(r: u32, m: u32) -> Result<CongruenceSpec, String> {
    CongruenceSpec::new(r, m).map_err(|e| e.to_string())
}

fn bounded(x: u64) -> Result<SearchConfig, String> {
    if x > BROWSER_CAP {
        return Err(format!("bound {x} is above the page limit {BROWSER_CAP}"));
    }
    Ok(SearchConfig { cap: BROWSER_CAP, ..SearchConfig::with_workers(1) })
}

/// `B_n` for an index expression, optionally reduced modulo `m`.
pub fn polynomial_json(expr: &str, modulus: Option<u32>) -> Result<String, String> {
    let idx = parse_index(expr).map_err(|e| e.to_string())?;
    let b = stern_poly(&idx);
    let degree = b.degree();
    let reduced = match modulus {
        Some(m) => Some(
            reduce_mod(&b, m, degree.unwrap_or(0))
                .map_err(|e| e.to_string())?
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect(),
        ),
        None => None,
    };
    let real_roots = if b.is_zero() { 0 } else { count_real_roots(&b).map_err(|e| e.to_string())? };
    json(&PolyView {
        index: idx.to_string(),
        binary: idx.binary(),
        degree,
        coefficients: b.coeffs().iter().map(ToString::to_string).collect(),
        pretty: b.pretty(),
        reduced,
        real_roots,
    })
}

/// Whether `B_n ≡ 1 + r(t + ... + t^e(n)) (mod m)` for one odd index.
pub fn check_json(expr: &str, r: u32, m: u32) -> Result<String, String> {
    let idx = parse_index(expr).map_err(|e| e.to_string())?;
    let holds = is_solution(&idx, &spec(r, m)?).map_err(|e| e.to_string())?;
    json(&CheckView { index: idx.to_string(), r, m, holds })
}

/// Odd solutions up to `x`, listing at most [`LISTED`].
pub fn search_json(r: u32, m: u32, x: u64) -> Result<String, String> {
    let report = enumerate_solutions(x, &spec(r, m)?, &[], &bounded(x)?).map_err(|e| e.to_string())?;
    let truncated = report.solutions.len() > LISTED;
    let mut solutions = report.solutions;
    solutions.truncate(LISTED);
    json(&SearchView { bound: x, count: report.count, solutions, truncated })
}

/// Sampled counting curve: `pi02`, `pi12`, `ratio`, `norm02` or `norm12`.
pub fn curve_json(series: &str, x_max: u64, samples: usize) -> Result<String, String> {
    let series: CurveSeries = series.parse()?;
    let pts = series_curve(series, x_max, samples, &bounded(x_max)?).map_err(|e| e.to_string())?;
    json(&pts.into_iter().map(|p| Point { x: p.x, y: p.value }).collect::<Vec<_>>())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn polynomial(expr: &str, modulus: Option<u32>) -> Result<String, JsError> {
    js(polynomial_json(expr, modulus))
}

#[wasm_bindgen]
pub fn check(expr: &str, r: u32, m: u32) -> Result<String, JsError> {
    js(check_json(expr, r, m))
}

#[wasm_bindgen]
pub fn search(r: u32, m: u32, x: u32) -> Result<String, JsError> {
    js(search_json(r, m, u64::from(x)))
}

#[wasm_bindgen]
pub fn curve(series: &str, x_max: u32, samples: u32) -> Result<String, JsError> {
    js(curve_json(series, u64::from(x_max), samples as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn polynomial_view() {
        let v = parse(polynomial_json("19", Some(2)).unwrap());
        assert_eq!(v["coefficients"], serde_json::json!(["1", "3", "3"]));
        assert_eq!(v["reduced"], serde_json::json!(["1", "1", "1"]));
        assert_eq!(v["binary"], "10011");
        assert_eq!(v["degree"], 2);
        // 3t^2 + 3t + 1 has negative discriminant
        assert_eq!(v["real_roots"], 0);
        let v = parse(polynomial_json("2^100-1", None).unwrap());
        assert_eq!(v["degree"], 99);
        assert!(polynomial_json("q[1]", None).is_err());
    }

    #[test]
    fn check_view() {
        assert_eq!(parse(check_json("19", 0, 3).unwrap())["holds"], true);
        assert_eq!(parse(check_json("21", 0, 3).unwrap())["holds"], false);
        assert!(check_json("20", 0, 3).is_err());
        assert!(check_json("19", 3, 3).is_err());
    }

    #[test]
    fn search_view() {
        let v = parse(search_json(0, 2, 32768).unwrap());
        assert_eq!(v["count"], 97);
        assert_eq!(v["truncated"], false);
        assert_eq!(v["solutions"].as_array().unwrap().len(), 97);
        assert!(search_json(0, 2, BROWSER_CAP + 1).is_err());
    }

    #[test]
    fn curve_view() {
        let v = parse(curve_json("pi02", 32768, 8).unwrap());
        let pts = v.as_array().unwrap();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[7]["x"], 32768);
        assert_eq!(pts[7]["y"], 97.0);
        assert!(curve_json("nope", 100, 8).is_err());
        assert!(curve_json("pi02", 100, 1).is_err());
    }
}
